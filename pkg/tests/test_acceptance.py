"""End-to-end acceptance checks, one test per shipped guarantee.

Each test is self-contained and seeded; together they exercise the cycle
characterization, the payoff bounds, the structural lemmas, the generalized
game expansion, the hardness pipeline, the dynamics, the discrepancy family,
and CLI determinism.
"""
from __future__ import annotations

import itertools
import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from voronoigame import (
    GameMode,
    ThreePartitionInstance,
    build_3partition_game,
    build_instance,
    canonicalize,
    cycle_instance,
    cycle_payoffs,
    discrepancy_family,
    dominance_compare,
    enumerate_equilibria,
    expand_generalized,
    find_br_cycle,
    gadget_certificate,
    gadget_search,
    is_nash,
    lemma2_is_nash,
    payoffs,
    potential,
    reduction_roundtrip,
    run_dynamic,
    social_cost,
    star_partition,
    three_partition_oracle,
    verify_close_lemma,
    verify_gadget,
    verify_payoff_bounds,
)
from voronoigame.engine import delaunay_graph
from voronoigame.reductions import ReductionConstants

from conftest import random_generalized_instance, random_standard_instance


def test_criterion_1_cycle_characterization_matches_engine():
    """lemma2_is_nash and cycle_payoffs agree exactly with the engine on
    every facility multiset of every cycle n in [3,12], k in [2,4]."""
    mismatches = []
    for n in range(3, 13):
        for k in range(2, min(5, n)):
            inst = cycle_instance(n, k)
            for profile in itertools.combinations_with_replacement(range(n), k):
                cp = canonicalize(n, profile)
                lemma_nash, _ = lemma2_is_nash(cp)
                if lemma_nash != is_nash(inst, profile):
                    mismatches.append(("nash", n, k, profile))
                stack_pay = cycle_payoffs(cp)
                expanded = tuple(
                    p for p, c in zip(stack_pay, cp.counts) for _ in range(c)
                )
                if expanded != payoffs(inst, profile):
                    mismatches.append(("payoff", n, k, profile))
    assert mismatches == []


# Shared by criteria 2 and 3: instances with their full equilibrium reports.
_RUNS = []


def _criterion_2_runs():
    if not _RUNS:
        rng = random.Random(2)
        for _ in range(500):
            inst = random_standard_instance(rng)
            _RUNS.append((inst, enumerate_equilibria(inst)))
    return _RUNS


def test_criterion_2_payoff_bounds_on_random_instances():
    """Every equilibrium payoff over 500 random connected standard instances
    (n in [4,8], k in {2,3}) lies strictly inside (n/2k, 2n/k)."""
    violations = []
    for inst, report in _criterion_2_runs():
        ok, bad = verify_payoff_bounds(report, inst)
        if not ok:
            violations.append((inst, bad))
    assert violations == []


def test_criterion_3_star_partition_and_cost_transfer():
    """For every ordered pair of equilibria from criterion 2's instances:
    each star of the Delaunay star partition passes the 6r proximity check
    and the restricted-cost inequality; the partition itself is a disjoint
    cover by genuine stars."""
    failures = []
    for inst, report in _criterion_2_runs():
        profiles = [eq.profile for eq in report.equilibria]
        for f in profiles:
            k, h_edges = delaunay_graph(inst, f)
            stars = star_partition(k, h_edges)
            covered = [v for s in stars for v in s.members]
            if sorted(covered) != list(range(k)) or any(
                len(s.members) < 2 for s in stars
            ):
                failures.append(("partition", inst, f))
        for f, f_prime in itertools.product(profiles, repeat=2):
            for check in verify_close_lemma(inst, f, f_prime):
                if not (check.proximity_ok and check.cost_ok
                        and check.lower_bound_ok):
                    failures.append(("check", inst, f, f_prime, check))
    assert failures == []


def test_criterion_4_expansion_preserves_equilibria():
    """On 50 random generalized instances (n <= 6, weights <= 3, k = 2) the
    equilibrium sets of the game and its standard expansion coincide, and the
    expansion never places an equilibrium outside the facility set."""
    rng = random.Random(0)
    mismatches = []
    for trial in range(50):
        gen = random_generalized_instance(rng)
        exp = expand_generalized(gen)
        ne_gen = {
            p for p in itertools.combinations_with_replacement(gen.facilities, 2)
            if is_nash(gen, p)
        }
        ne_exp = {
            p for p in itertools.combinations_with_replacement(range(exp.n), 2)
            if is_nash(exp, p)
        }
        outside = {p for p in ne_exp if any(v not in gen.facilities for v in p)}
        if ne_gen != ne_exp or outside:
            mismatches.append((trial, gen, sorted(ne_gen), sorted(ne_exp)))
    assert mismatches == []


def test_criterion_5_hardness_pipeline():
    """gadget_search yields a verified 9-vertex gadget with an exhaustive
    45-profile certificate; reduction_roundtrip agrees with the brute-force
    3-Partition oracle on a yes- and a no-instance; the five constant
    ordering inequalities hold exactly for both."""
    edges = gadget_search(seed=0, budget=200_000)
    certificate = gadget_certificate(edges, seed=0, budget=200_000)
    assert verify_gadget(edges)
    assert max(v for e in edges for v in e) <= 8
    assert certificate["verified"] is True
    assert certificate["profiles_checked"] == 45

    yes = ThreePartitionInstance(m=2, items=(3, 3, 3, 3, 3, 3), target=9)
    no = ThreePartitionInstance(m=2, items=(5, 5, 5, 5, 5, 7), target=16)
    for inst in (yes, no):
        # for_instance raises if any of the five ordering inequalities fails
        consts = ReductionConstants.for_instance(inst)
        assert 5 * consts.d > inst.target * consts.c - consts.c + Fraction(
            consts.c, inst.m
        )
    assert three_partition_oracle(yes) is not None
    assert three_partition_oracle(no) is None
    assert reduction_roundtrip(yes, gadget=edges) is True
    assert reduction_roundtrip(no, gadget=edges) is True


def test_criterion_6_dynamics():
    """Shared mode admits a best-response cycle on some small cycle graph;
    disjoint mode on cycles converges from every distinct-facility start with
    the gap-multiset potential strictly decreasing at every step."""
    inst, cycle = find_br_cycle(ns=range(3, 13), ks=(2, 3))
    assert inst is not None and len(cycle) >= 2 and cycle[0] == cycle[-1]

    violations = []
    for n in range(3, 11):
        for k in range(2, 4):
            if k >= n:
                continue
            inst = cycle_instance(n, k)
            for start in itertools.combinations(range(n), k):
                outcome = run_dynamic(inst, start, mode=GameMode.DISJOINT)
                if outcome.kind != "converged":
                    violations.append(("no-convergence", n, k, start))
                    continue
                current = list(start)
                phi = potential(inst, current)
                for move in outcome.trace:
                    current[move.player] = move.target
                    nxt = potential(inst, current)
                    if dominance_compare(nxt, phi) != -1:
                        violations.append(("potential", n, k, start, move))
                    phi = nxt
    assert violations == []


def test_criterion_7_discrepancy_family():
    """discrepancy_family(k=2, a, b=a^2) yields engine-verified Nash pairs
    with strictly increasing cost ratio and n = k(2a+b+2) exactly."""
    ratios = []
    for a in (1, 2, 3):
        b = a * a
        inst, f_lo, f_hi = discrepancy_family(2, a, b)
        assert inst.n == 2 * (2 * a + b + 2)
        assert is_nash(inst, f_lo) and is_nash(inst, f_hi)
        ratios.append(Fraction(social_cost(inst, f_hi), social_cost(inst, f_lo)))
    assert ratios[0] < ratios[1] < ratios[2]


def _run_cli(args, stdin_text=None):
    proc = subprocess.run(
        [sys.executable, "-m", "voronoigame.cli", *args],
        input=stdin_text,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout


def test_criterion_8_cli_determinism(tmp_path):
    """Every CLI command rerun with identical flags and seed emits
    byte-identical stdout, including under varying --threads."""
    inst_path = tmp_path / "inst.json"
    inst_path.write_text(json.dumps(
        {"n": 6, "edges": [[i, (i + 1) % 6] for i in range(6)], "k": 2}
    ))
    dot_path = tmp_path / "out.dot"
    invocations = [
        ["analyze", "--instance", str(inst_path), "--profile", "0,3"],
        ["equilibria", "--instance", str(inst_path), "--threads", "1"],
        ["equilibria", "--instance", str(inst_path), "--threads", "2"],
        ["dynamics", "--instance", str(inst_path), "--start", "0,1",
         "--seed", "7"],
        ["cycle-check", "--n", "6", "--positions", "0,2"],
        ["reduce", "--m", "2", "--target", "9", "--items", "3,3,3,3,3,3"],
        ["gadget-search", "--seed", "0", "--budget", "200000"],
        ["family", "--k", "2", "--a", "1", "--b", "1"],
        ["export-dot", "--instance", str(inst_path), "--profile", "0,3",
         "--output", str(dot_path)],
    ]
    outputs = {}
    for args in invocations:
        code_1, out_1 = _run_cli(args)
        code_2, out_2 = _run_cli(args)
        assert (code_1, out_1) == (code_2, out_2), args
        outputs[tuple(args)] = out_1
    # thread count may change speed, never bytes
    assert outputs[tuple(invocations[1])] == outputs[tuple(invocations[2])]
