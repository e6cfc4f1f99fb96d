"""Core game semantics: Voronoi partition, payoffs, best responses, Nash tests.

All payoff arithmetic is exact (``fractions.Fraction``); no floating point is
ever compared. Unreachable customers are assigned to nobody (their partition
column sums to zero) -- the hardness construction relies on this rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .graph_core import INF, GameInstance, adjacency, all_pairs_distances


class ProfileError(ValueError):
    """Raised for strategy profiles that violate the instance contract."""


class GameMode(str, Enum):
    SHARED = "shared"
    DISJOINT = "disjoint"  # co-located players gain zero


@dataclass(frozen=True)
class VoronoiPartition:
    """k x n matrix of exact customer shares, plus per-customer distances."""

    shares: tuple[tuple[Fraction, ...], ...]
    customer_distance: tuple


ZERO = Fraction(0)


def check_profile(instance: GameInstance, profile) -> tuple[int, ...]:
    profile = tuple(profile)
    if len(profile) != instance.k:
        raise ProfileError(f"profile length {len(profile)} != k={instance.k}")
    fac = set(instance.facilities)
    for u in profile:
        if u not in fac:
            raise ProfileError(f"vertex {u} is not an allowed facility")
    return profile


def _colocated(profile):
    seen = {}
    for u in profile:
        seen[u] = seen.get(u, 0) + 1
    return {u for u, c in seen.items() if c > 1}


def voronoi_partition(instance: GameInstance, profile, mode=GameMode.SHARED) -> VoronoiPartition:
    profile = check_profile(instance, profile)
    dist = all_pairs_distances(instance)
    k, n = instance.k, instance.n
    rows = [[ZERO] * n for _ in range(k)]
    cust = [INF] * n
    dead = _colocated(profile) if mode == GameMode.DISJOINT else set()
    for v in range(n):
        dv = dist[v]
        best = min(dv[u] for u in profile)
        cust[v] = best
        if best == INF:
            continue
        winners = [i for i in range(k) if dv[profile[i]] == best]
        share = Fraction(1, len(winners))
        for i in winners:
            if profile[i] not in dead:
                rows[i][v] = share
    return VoronoiPartition(shares=tuple(tuple(r) for r in rows),
                            customer_distance=tuple(cust))


def payoffs(instance: GameInstance, profile, mode=GameMode.SHARED) -> tuple[Fraction, ...]:
    """Weighted customer shares per player, as exact rationals."""
    profile = check_profile(instance, profile)
    dist = all_pairs_distances(instance)
    k = instance.k
    w = instance.weights
    dead = _colocated(profile) if mode == GameMode.DISJOINT else set()
    totals = [ZERO] * k
    for v in range(instance.n):
        dv = dist[v]
        best = min(dv[u] for u in profile)
        if best == INF:
            continue
        winners = [i for i in range(k) if dv[profile[i]] == best]
        share = Fraction(w[v], len(winners))
        for i in winners:
            totals[i] += share
    return tuple(ZERO if profile[i] in dead else totals[i] for i in range(k))


def social_cost(instance: GameInstance, profile):
    """Sum of weighted customer distances; INF if any customer is unreachable."""
    profile = check_profile(instance, profile)
    dist = all_pairs_distances(instance)
    total = 0
    for v in range(instance.n):
        d = min(dist[v][u] for u in profile)
        if d == INF:
            return INF
        total += instance.weights[v] * d
    return total


def _rival_landscape(instance, dist, others):
    """Per vertex: (min distance to any rival, number of rivals attaining it)."""
    n = instance.n
    out = []
    for v in range(n):
        dv = dist[v]
        best = INF
        cnt = 0
        for u in others:
            d = dv[u]
            if d < best:
                best, cnt = d, 1
            elif d == best and d != INF:
                cnt += 1
        out.append((best, cnt))
    return out


def _deviation_value(instance, dist, landscape, others_multiset, u, mode) -> Fraction:
    """Payoff of a single player locating at u against fixed rivals."""
    if mode == GameMode.DISJOINT and u in others_multiset:
        return ZERO
    w = instance.weights
    total = ZERO
    for v in range(instance.n):
        d = dist[v][u]
        if d == INF:
            continue
        rmin, rcnt = landscape[v]
        if d < rmin:
            total += w[v]
        elif d == rmin:
            total += Fraction(w[v], rcnt + 1)
    return total


def best_responses(instance: GameInstance, profile, player, mode=GameMode.SHARED):
    """All facility vertices maximizing the player's deviation payoff.

    Returns (set of vertices, best value). The player's current vertex is a
    candidate like any other.
    """
    profile = check_profile(instance, profile)
    dist = all_pairs_distances(instance)
    others = [profile[j] for j in range(instance.k) if j != player]
    landscape = _rival_landscape(instance, dist, others)
    others_set = set(others)
    best_val = None
    best_set = set()
    for u in instance.facilities:
        val = _deviation_value(instance, dist, landscape, others_set, u, mode)
        if best_val is None or val > best_val:
            best_val, best_set = val, {u}
        elif val == best_val:
            best_set.add(u)
    return best_set, best_val


def is_happy(instance: GameInstance, profile, player, mode=GameMode.SHARED) -> bool:
    profile = check_profile(instance, profile)
    dist = all_pairs_distances(instance)
    others = [profile[j] for j in range(instance.k) if j != player]
    landscape = _rival_landscape(instance, dist, others)
    others_set = set(others)
    current = _deviation_value(instance, dist, landscape, others_set,
                               profile[player], mode)
    for u in instance.facilities:
        if _deviation_value(instance, dist, landscape, others_set, u, mode) > current:
            return False
    return True


def is_nash(instance: GameInstance, profile, mode=GameMode.SHARED) -> bool:
    profile = check_profile(instance, profile)
    # co-located players see identical deviation sets: one check per vertex
    seen = set()
    for i, u in enumerate(profile):
        if u in seen:
            continue
        seen.add(u)
        if not is_happy(instance, profile, i, mode):
            return False
    return True


def cell_support(instance: GameInstance, profile, player) -> frozenset:
    """Vertices with a positive share in the player's cell (shared mode)."""
    profile = check_profile(instance, profile)
    dist = all_pairs_distances(instance)
    fi = profile[player]
    support = set()
    for v in range(instance.n):
        dv = dist[v]
        if dv[fi] != INF and dv[fi] == min(dv[u] for u in profile):
            support.add(v)
    return frozenset(support)


def delaunay_graph(instance: GameInstance, profile):
    """Graph on the k players: edges between touching or adjacent cells.

    Returns (k, edge set) with player indices 0..k-1.
    """
    profile = check_profile(instance, profile)
    k = instance.k
    supports = [cell_support(instance, profile, i) for i in range(k)]
    edges = set()
    for i in range(k):
        for j in range(i + 1, k):
            if supports[i] & supports[j]:
                edges.add((i, j))
    for u, v in instance.edges:
        for i in range(k):
            for j in range(i + 1, k):
                if (i, j) in edges:
                    continue
                si, sj = supports[i], supports[j]
                if (u in si and v in sj) or (v in si and u in sj):
                    edges.add((i, j))
    return k, frozenset(edges)


def cell_radius(instance: GameInstance, profile, player) -> int:
    """Max distance from the player's facility to a vertex in its cell."""
    profile = check_profile(instance, profile)
    support = cell_support(instance, profile, player)
    if not support:
        raise ProfileError(f"player {player} has an empty cell")
    dist = all_pairs_distances(instance)
    fi = profile[player]
    return max(dist[fi][v] for v in support)
