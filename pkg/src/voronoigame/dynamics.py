"""Best-response dynamics, non-convergence detection, and the gap-multiset
potential for the disjoint-facility game on cycles.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import engine
from .engine import GameMode
from .graph_core import GameInstance, adjacency


class BudgetExceededError(RuntimeError):
    def __init__(self, needed, budget):
        super().__init__(f"search space of {needed} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


@dataclass(frozen=True)
class Policy:
    """Resolution of the two arbitrary choices in the dynamic.

    player_rule: which unhappy player moves ("lowest-index" | "random").
    tie_break:   which best response is taken ("lowest-vertex" | "random").
    Deterministic given the seed.
    """

    player_rule: str = "lowest-index"
    tie_break: str = "lowest-vertex"
    seed: int = 0
    max_steps: int = 10_000

    @property
    def deterministic(self) -> bool:
        return self.player_rule == "lowest-index" and self.tie_break == "lowest-vertex"


@dataclass(frozen=True)
class MoveRecord:
    step: int
    player: int
    source: int
    target: int
    payoff_before: object
    payoff_after: object


@dataclass(frozen=True)
class Outcome:
    kind: str  # "converged" | "cycled" | "exhausted"
    profile: tuple[int, ...] | None
    steps: int
    trace: tuple[MoveRecord, ...]
    cycle: tuple[tuple[int, ...], ...] = ()  # repeating states, first == last


def _unhappy_players(instance, profile, mode):
    out = []
    for i in range(instance.k):
        if not engine.is_happy(instance, profile, i, mode):
            out.append(i)
    return out


def run_dynamic(instance: GameInstance, start, mode=GameMode.SHARED,
                policy: Policy = Policy()) -> Outcome:
    """Iterate the best-response dynamic from a start profile.

    Under the deterministic policy a repeated state is reported as a cycle;
    under randomized rules the run simply exhausts its step budget.
    """
    profile = engine.check_profile(instance, start)
    rng = random.Random(policy.seed)
    seen = {profile: 0}
    history = [profile]
    trace = []
    for step in range(policy.max_steps):
        unhappy = _unhappy_players(instance, profile, mode)
        if not unhappy:
            return Outcome("converged", profile, step, tuple(trace))
        if policy.player_rule == "lowest-index":
            player = unhappy[0]
        else:
            player = rng.choice(unhappy)
        responses, best = engine.best_responses(instance, profile, player, mode)
        if policy.tie_break == "lowest-vertex":
            target = min(responses)
        else:
            target = rng.choice(sorted(responses))
        before = engine.payoffs(instance, profile, mode)[player]
        new_profile = profile[:player] + (target,) + profile[player + 1:]
        trace.append(MoveRecord(step=step + 1, player=player,
                                source=profile[player], target=target,
                                payoff_before=before, payoff_after=best))
        profile = new_profile
        if policy.deterministic:
            if profile in seen:
                cycle = tuple(history[seen[profile]:]) + (profile,)
                return Outcome("cycled", None, step + 1, tuple(trace), cycle)
            seen[profile] = len(history)
        history.append(profile)
    return Outcome("exhausted", None, policy.max_steps, tuple(trace))


def br_move_graph(instance: GameInstance, mode=GameMode.SHARED,
                  budget: int = 1_000_000):
    """Directed graph on all ordered profiles: one edge per (unhappy player,
    best response) move. Returns {profile: sorted list of (player, target)}.
    """
    size = len(instance.facilities) ** instance.k
    if size > budget:
        raise BudgetExceededError(size, budget)
    moves = {}
    for profile in product(instance.facilities, repeat=instance.k):
        out = []
        for player in range(instance.k):
            if engine.is_happy(instance, profile, player, mode):
                continue
            responses, _ = engine.best_responses(instance, profile, player, mode)
            for target in sorted(responses):
                out.append((player, target))
        moves[profile] = out
    return moves


def _apply(profile, move):
    player, target = move
    return profile[:player] + (target,) + profile[player + 1:]


def find_directed_cycle(moves):
    """A list of profiles forming a directed cycle (first == last), or None."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {p: WHITE for p in moves}
    for root in moves:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(moves[root]))]
        color[root] = GRAY
        path = [root]
        while stack:
            node, it = stack[-1]
            advanced = False
            for move in it:
                succ = _apply(node, move)
                if color[succ] == GRAY:
                    start = path.index(succ)
                    return path[start:] + [succ]
                if color[succ] == WHITE:
                    color[succ] = GRAY
                    stack.append((succ, iter(moves[succ])))
                    path.append(succ)
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
                path.pop()
    return None


def find_br_cycle(ns, ks, mode=GameMode.SHARED, budget: int = 1_000_000):
    """Search cycle games in the given ranges for an instance whose move
    graph contains a directed cycle. Returns (instance, witness) or None.
    """
    from .graph_core import cycle_instance

    for n in ns:
        for k in ks:
            if k >= n or k < 2:
                continue
            instance = cycle_instance(n, k)
            moves = br_move_graph(instance, mode, budget)
            witness = find_directed_cycle(moves)
            if witness is not None:
                return instance, witness
    return None


def dominance_compare(a, b) -> int:
    """Total order on multisets: 1 if a dominates b, -1 if b dominates a,
    0 if equal. Smaller cardinality dominates; ties compare decreasing maxima.
    """
    if len(a) != len(b):
        return 1 if len(a) < len(b) else -1
    for x, y in zip(sorted(a, reverse=True), sorted(b, reverse=True)):
        if x != y:
            return 1 if x > y else -1
    return 0


def is_cycle_graph(instance: GameInstance) -> bool:
    adj = adjacency(instance)
    return (instance.n >= 3 and len(instance.edges) == instance.n
            and all(len(a) == 2 for a in adj)
            and _cycle_connected(adj, instance.n))


def _cycle_connected(adj, n):
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def potential(instance: GameInstance, profile) -> tuple[int, ...]:
    """Gap multiset between consecutive occupied facilities on a cycle.

    Requires pairwise-distinct facilities (the disjoint-game potential is
    undefined on co-located profiles). Returned sorted ascending.
    """
    if not is_cycle_graph(instance):
        raise ValueError("potential is defined on cycle instances only")
    profile = engine.check_profile(instance, profile)
    if len(set(profile)) != len(profile):
        raise ValueError("potential requires pairwise-distinct facilities")
    occupied = sorted(profile)
    n = instance.n
    gaps = [(occupied[(j + 1) % len(occupied)] - occupied[j]) % n
            for j in range(len(occupied))]
    if len(occupied) == 1:
        gaps = [n]
    return tuple(sorted(gaps))
