"""Command-line front end.

Exactly one JSON report object is written to stdout per invocation; all
logging goes to stderr.  Exit codes: 0 success, 1 negative decision
(e.g. no equilibrium, dynamics did not converge), 2 input error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from .cycle import CycleError, canonicalize, cycle_payoffs, lemma2_is_nash
from .dynamics import BudgetExceededError, Policy, run_dynamic
from .engine import (
    GameMode,
    ProfileError,
    best_responses,
    cell_radius,
    cell_support,
    delaunay_graph,
    is_nash,
    payoffs,
    social_cost,
    voronoi_partition,
)
from .equilibria import effective_budget, enumerate_equilibria, nash_exists
from .graph_core import (
    InstanceError,
    GameInstance,
    build_instance,
    export_dot,
    parse_instance,
    serialize_instance,
)
from .reductions import (
    GadgetVerificationError,
    ReductionConstants,
    ReductionError,
    ThreePartitionInstance,
    build_3partition_game,
    discrepancy_family,
    gadget_certificate,
    gadget_search,
    three_partition_oracle,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


# ---------------------------------------------------------------------------
# report plumbing


def jsonable(value: Any) -> Any:
    """Convert report values to deterministic JSON-safe forms.

    Fractions become strings like ``"9/2"`` (or ``"5"`` when integral);
    infinities become ``"inf"``.
    """
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return [jsonable(v) for v in sorted(value)]
    return value


def emit(report: dict, stream=None) -> None:
    stream = stream if stream is not None else sys.stdout
    json.dump(jsonable(report), stream, sort_keys=True, separators=(", ", ": "))
    stream.write("\n")


def log(message: str) -> None:
    print(message, file=sys.stderr)


def _read_instance(path: str) -> GameInstance:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    return parse_instance(text)


def _parse_profile(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InstanceError(f"malformed profile {text!r}") from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(args) -> int:
    instance = _read_instance(args.instance)
    profile = _parse_profile(args.profile)
    mode = GameMode(args.mode)
    part = voronoi_partition(instance, profile, mode)
    shares = [
        {str(v): part.shares[i][v] for v in range(instance.n) if part.shares[i][v]}
        for i in range(len(profile))
    ]
    pays = payoffs(instance, profile, mode)
    brs = [best_responses(instance, profile, i, mode) for i in range(len(profile))]
    dk, dedges = delaunay_graph(instance, profile)
    radii = []
    for i in range(len(profile)):
        support = cell_support(instance, profile, i)
        radii.append(cell_radius(instance, profile, i) if support else None)
    report = {
        "command": "analyze",
        "n": instance.n,
        "k": instance.k,
        "mode": mode.value,
        "profile": list(profile),
        "payoffs": list(pays),
        "shares": shares,
        "social_cost": social_cost(instance, profile),
        "is_nash": is_nash(instance, profile, mode),
        "best_responses": [
            {"player": i, "targets": sorted(targets), "value": value}
            for i, (targets, value) in enumerate(brs)
        ],
        "cell_radii": radii,
        "delaunay_edges": sorted(list(edge) for edge in dedges),
    }
    emit(report)
    return EXIT_OK if report["is_nash"] else EXIT_NEGATIVE


def cmd_equilibria(args) -> int:
    instance = _read_instance(args.instance)
    mode = GameMode(args.mode)
    budget = effective_budget(args.budget)
    report_obj = enumerate_equilibria(
        instance, mode=mode, budget=budget, workers=args.threads
    )
    report = {
        "command": "equilibria",
        "n": instance.n,
        "k": instance.k,
        "mode": mode.value,
        "profiles_checked": report_obj.profiles_checked,
        "equilibria": [
            {"profile": list(eq.profile), "payoffs": list(eq.payoffs), "cost": eq.cost}
            for eq in report_obj.equilibria
        ],
        "count": len(report_obj.equilibria),
        "min_cost": report_obj.min_cost,
        "max_cost": report_obj.max_cost,
        "discrepancy": report_obj.discrepancy,
    }
    emit(report)
    return EXIT_OK if report_obj.equilibria else EXIT_NEGATIVE


def cmd_dynamics(args) -> int:
    instance = _read_instance(args.instance)
    mode = GameMode(args.mode)
    start = _parse_profile(args.start)
    policy = Policy(
        player_rule=args.player_rule,
        tie_break=args.tie_break,
        seed=args.seed,
        max_steps=args.max_steps,
    )
    outcome = run_dynamic(instance, start, policy=policy, mode=mode)
    report = {
        "command": "dynamics",
        "start": list(start),
        "mode": mode.value,
        "policy": {
            "player_rule": policy.player_rule,
            "tie_break": policy.tie_break,
            "seed": policy.seed,
            "max_steps": policy.max_steps,
        },
        "outcome": outcome.kind,
        "steps": outcome.steps,
        "final_profile": list(outcome.profile),
        "trace": [
            {
                "step": move.step,
                "player": move.player,
                "source": move.source,
                "target": move.target,
                "payoff_before": move.payoff_before,
                "payoff_after": move.payoff_after,
            }
            for move in outcome.trace
        ],
        "cycle": [list(p) for p in outcome.cycle] if outcome.cycle else None,
    }
    emit(report)
    return EXIT_OK if outcome.kind == "converged" else EXIT_NEGATIVE


def cmd_cycle_check(args) -> int:
    positions = _parse_profile(args.positions)
    if args.k is not None and args.k != len(positions):
        raise InstanceError(
            f"k={args.k} does not match {len(positions)} positions"
        )
    profile = canonicalize(args.n, positions)
    nash, violated = lemma2_is_nash(profile)
    report = {
        "command": "cycle-check",
        "n": args.n,
        "k": len(positions),
        "positions": sorted(positions),
        "counts": list(profile.counts),
        "gaps": list(profile.gaps),
        "payoffs": list(cycle_payoffs(profile)),
        "gamma": profile.gamma,
        "nash": nash,
        "violated": [f"({cond})@{idx}" for cond, idx in violated],
    }
    emit(report)
    return EXIT_OK if nash else EXIT_NEGATIVE


def cmd_reduce(args) -> int:
    items = tuple(int(part) for part in args.items.split(","))
    tp = ThreePartitionInstance(m=args.m, items=items, target=args.target)
    constants = ReductionConstants.for_instance(tp)
    game = build_3partition_game(tp)
    partition = three_partition_oracle(tp)
    report = {
        "command": "reduce",
        "m": tp.m,
        "target": tp.target,
        "items": list(tp.items),
        "c": constants.c,
        "d": constants.d,
        "ordering_ok": constants.check_ordering(tp),
        "oracle_partition": [list(t) for t in partition] if partition else None,
        "instance": json.loads(serialize_instance(game)),
    }
    negative = partition is None
    if args.check_roundtrip:
        budget = effective_budget(args.budget)
        nash_found = nash_exists(game, GameMode.SHARED, budget)
        report["nash_exists"] = nash_found
        report["roundtrip_agrees"] = nash_found == (partition is not None)
        negative = not nash_found
    emit(report)
    return EXIT_NEGATIVE if negative else EXIT_OK


def cmd_gadget_search(args) -> int:
    edges = gadget_search(seed=args.seed, budget=args.budget)
    certificate = gadget_certificate(edges, seed=args.seed, budget=args.budget)
    gadget = build_instance(n=9, edges=edges, weights=(1,) * 9, k=2)
    report = {
        "command": "gadget-search",
        "instance": json.loads(serialize_instance(gadget)),
        "certificate": certificate,
    }
    emit(report)
    return EXIT_OK


def cmd_family(args) -> int:
    instance, f, f_prime = discrepancy_family(
        args.k, args.a, args.b, verify=not args.no_verify
    )
    cost_f = social_cost(instance, f)
    cost_fp = social_cost(instance, f_prime)
    report = {
        "command": "family",
        "k": args.k,
        "a": args.a,
        "b": args.b,
        "n": instance.n,
        "instance": json.loads(serialize_instance(instance)),
        "profile_low": list(f),
        "profile_high": list(f_prime),
        "cost_low": cost_f,
        "cost_high": cost_fp,
        "ratio": Fraction(cost_fp, cost_f)
        if cost_f not in (0, math.inf) and cost_fp != math.inf
        else "inf",
        "verified": not args.no_verify,
    }
    emit(report)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    instance = _read_instance(args.instance)
    profile = _parse_profile(args.profile) if args.profile else None
    text = export_dot(instance, profile)
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(text)
    report = {
        "command": "export-dot",
        "written": args.output,
        "bytes": len(text.encode("utf-8")),
    }
    emit(report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# experiment suite


@dataclass(frozen=True)
class FamilyRow:
    """One experiment row: the two-equilibria ring family with parameters."""

    k: int
    a: int
    b: int


@dataclass(frozen=True)
class SuiteConfig:
    rows: tuple = ()
    instances: tuple = ()  # (label, GameInstance) pairs
    mode: GameMode = GameMode.SHARED
    budget: Optional[int] = None
    workers: int = 1


def run_experiment_suite(config: SuiteConfig) -> dict:
    """Run the discrepancy experiment table.

    Returns ``{"rows": [...], "table": str}`` where rows carry n, k, the
    number of equilibria, min/max social cost, the discrepancy and the
    ratio discrepancy/sqrt(k*n).  Per-row failures are recorded and the
    suite continues.
    """
    budget = effective_budget(config.budget)
    rows_out = []
    jobs: list[tuple[str, GameInstance]] = []
    for row in config.rows:
        instance, _, _ = discrepancy_family(row.k, row.a, row.b, verify=False)
        jobs.append((f"family(k={row.k},a={row.a},b={row.b})", instance))
    jobs.extend(config.instances)
    for label, instance in jobs:
        entry: dict[str, Any] = {"label": label, "n": instance.n, "k": instance.k}
        try:
            report = enumerate_equilibria(
                instance, mode=config.mode, budget=budget, workers=config.workers
            )
        except BudgetExceededError as exc:
            entry["error"] = f"budget exceeded (needed {exc.needed}, had {exc.budget})"
            rows_out.append(entry)
            continue
        entry["equilibria"] = len(report.equilibria)
        entry["min_cost"] = report.min_cost
        entry["max_cost"] = report.max_cost
        entry["discrepancy"] = report.discrepancy
        if isinstance(report.discrepancy, Fraction):
            entry["ratio_to_sqrt_kn"] = float(report.discrepancy) / math.sqrt(
                instance.k * instance.n
            )
        elif report.discrepancy == math.inf:
            entry["ratio_to_sqrt_kn"] = math.inf
        else:
            entry["ratio_to_sqrt_kn"] = None
        rows_out.append(entry)
    return {"rows": rows_out, "table": _format_table(rows_out)}


_COLUMNS = (
    "label",
    "n",
    "k",
    "equilibria",
    "min_cost",
    "max_cost",
    "discrepancy",
    "ratio_to_sqrt_kn",
)


def _format_table(rows: Sequence[dict]) -> str:
    def cell(row: dict, col: str) -> str:
        if "error" in row and col == "equilibria":
            return row["error"]
        value = row.get(col)
        if value is None:
            return "-"
        if isinstance(value, float):
            return "inf" if math.isinf(value) else f"{value:.4f}"
        return str(value)

    grid = [list(_COLUMNS)] + [[cell(r, c) for c in _COLUMNS] for r in rows]
    widths = [max(len(line[i]) for line in grid) for i in range(len(_COLUMNS))]
    lines = [
        "  ".join(text.ljust(width) for text, width in zip(line, widths)).rstrip()
        for line in grid
    ]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voronoigame",
        description="Discrete Voronoi games on graphs: payoffs, equilibria, "
        "dynamics, hardness reductions, and discrepancy experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, instance=True, threads=True, budget=True, mode=True):
        if instance:
            p.add_argument(
                "--instance",
                required=True,
                help="instance JSON path, or '-' for stdin",
            )
        if mode:
            p.add_argument(
                "--mode",
                choices=[m.value for m in GameMode],
                default=GameMode.SHARED.value,
            )
        if threads:
            p.add_argument(
                "--threads", type=int, default=1, help="worker count (speed only)"
            )
        if budget:
            p.add_argument(
                "--budget",
                type=int,
                default=None,
                help="enumeration budget (overrides VGG_BUDGET)",
            )

    p = sub.add_parser("analyze", help="payoffs, best responses, cost for a profile")
    add_common(p, threads=False, budget=False)
    p.add_argument("--profile", required=True, help="comma-separated vertices")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("equilibria", help="exhaustively enumerate Nash equilibria")
    add_common(p)
    p.set_defaults(func=cmd_equilibria)

    p = sub.add_parser("dynamics", help="run best-response dynamics")
    add_common(p, threads=False, budget=False)
    p.add_argument("--start", required=True, help="starting profile")
    p.add_argument(
        "--player-rule", choices=["lowest-index", "random"], default="lowest-index"
    )
    p.add_argument(
        "--tie-break", choices=["lowest-vertex", "random"], default="lowest-vertex"
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("cycle-check", help="closed-form equilibrium check on a cycle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--positions", required=True, help="comma-separated vertices")
    p.set_defaults(func=cmd_cycle_check)

    p = sub.add_parser("reduce", help="compile a 3-Partition instance to a game")
    add_common(p, instance=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--target", type=int, required=True, help="triple sum B")
    p.add_argument("--items", required=True, help="comma-separated 3m integers")
    p.add_argument("--check-roundtrip", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gadget-search", help="search for a 9-vertex no-NE gadget")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(func=cmd_gadget_search)

    p = sub.add_parser("family", help="build a high-discrepancy ring instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("export-dot", help="write a DOT rendering to a file")
    add_common(p, threads=False, budget=False, mode=False)
    p.add_argument("--profile", default=None, help="optional profile to mark")
    p.add_argument("--output", required=True, help="output file path")
    p.set_defaults(func=cmd_export_dot)

    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = 0 if exc.code in (0, None) else EXIT_INPUT
        return code
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        emit({"error": "budget exceeded", "needed": exc.needed, "budget": exc.budget})
        log(f"budget exceeded: needed {exc.needed}, budget {exc.budget}")
        return EXIT_BUDGET
    except GadgetVerificationError as exc:
        emit({"error": "gadget search exhausted", "detail": str(exc)})
        log(f"gadget search exhausted: {exc}")
        return EXIT_BUDGET
    except (InstanceError, ProfileError, CycleError, ReductionError, ValueError) as exc:
        emit({"error": "input error", "detail": str(exc)})
        log(f"input error: {exc}")
        return EXIT_INPUT
    except OSError as exc:
        emit({"error": "io error", "detail": str(exc)})
        log(f"io error: {exc}")
        return EXIT_INPUT


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
