"""Star partitions and the structural checks behind the discrepancy bound.

A star is a vertex set of size >= 2 with a center adjacent to every other
member. The partition algorithm peels off one star at a time: prefer an edge
(u, v) where u is a pendant vertex, otherwise take the lexicographically
smallest edge; the star is u, v plus every vertex whose remaining neighbors
all lie in {u, v}. The residual graph never contains an isolated vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import engine
from .graph_core import INF, GameInstance, all_pairs_distances


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class Star:
    members: frozenset
    center: int


def is_star(edges, members) -> bool:
    """True iff some member is adjacent to all other members and |A| >= 2."""
    members = set(members)
    if len(members) < 2:
        return False
    edge_set = {frozenset(e) for e in edges}
    for center in sorted(members):
        if all(frozenset((center, v)) in edge_set
               for v in members if v != center):
            return True
    return False


def star_partition(n: int, edges) -> list[Star]:
    """Partition the vertices 0..n-1 of a connected graph into stars."""
    if n < 2:
        raise StructureError("single-vertex graph admits no star")
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    if any(not _reachable(adj, 0, v) for v in range(n)):
        raise StructureError("graph is not connected")

    stars = []
    while adj:
        pendant = sorted((v, next(iter(nb))) for v, nb in adj.items()
                         if len(nb) == 1)
        if pendant:
            u, v = pendant[0]
        else:
            u, v = min(tuple(sorted((a, b))) for a, nb in adj.items() for b in nb)
        members = {u, v} | {w for w, nb in adj.items()
                            if w not in (u, v) and nb <= {u, v}}
        # the pendant rule guarantees a center exists; with no pendant every
        # extra member saw both u and v, so either endpoint centers the star
        center = v if pendant else u
        assert all(m == center or m in adj[center] for m in members)
        stars.append(Star(members=frozenset(members), center=center))
        for m in members:
            for nb in adj[m]:
                adj[nb].discard(m)
            del adj[m]
        assert all(nb for nb in adj.values()), "residual isolated vertex"
    return stars


def _reachable(adj, s, t):
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        if u == t:
            return True
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def restricted_cost(instance: GameInstance, weights_vector, profile):
    """Sum over vertices of W_v * d(v, f); INF if W_v > 0 is unreachable.

    ``weights_vector`` holds non-negative rationals <= 1, one per vertex.
    """
    profile = engine.check_profile(instance, profile)
    dist = all_pairs_distances(instance)
    total = Fraction(0)
    for v, wv in enumerate(weights_vector):
        if wv < 0 or wv > 1:
            raise StructureError(f"restriction weight {wv} out of [0, 1]")
        if wv == 0:
            continue
        d = min(dist[v][u] for u in profile)
        if d == INF:
            return INF
        total += wv * d
    return total


@dataclass(frozen=True)
class StarCheck:
    players: tuple[int, ...]
    center: int
    radius: int
    nearest_rival_spread: int  # min over f' players of max distance to the star
    proximity_ok: bool         # spread <= 6 * radius
    cost_here: Fraction        # cost restricted to the star's cells, under f
    cost_other: Fraction       # same restriction, under f'
    cost_ok: bool              # cost_other <= cost_here + 6r|W|
    lower_bound_ok: bool       # cost_here >= r(r-1)/(2k)


def verify_close_lemma(instance: GameInstance, f, f_prime) -> list[StarCheck]:
    """Per-star proximity and restricted-cost checks for two equilibria.

    The caller is responsible for f and f' both being Nash; this is validated
    here because every reported guarantee assumes it.
    """
    if not engine.is_nash(instance, f):
        raise StructureError("f is not a Nash equilibrium")
    if not engine.is_nash(instance, f_prime):
        raise StructureError("f' is not a Nash equilibrium")
    f = engine.check_profile(instance, f)
    f_prime = engine.check_profile(instance, f_prime)
    dist = all_pairs_distances(instance)
    k, h_edges = engine.delaunay_graph(instance, f)
    partition = engine.voronoi_partition(instance, f)
    checks = []
    for star in star_partition(k, h_edges):
        players = tuple(sorted(star.members))
        radius = max(engine.cell_radius(instance, f, i) for i in players)
        spread = min(max(dist[f[i]][fj] for i in players) for fj in f_prime)
        w_vec = [sum(partition.shares[i][v] for i in players)
                 for v in range(instance.n)]
        cost_here = restricted_cost(instance, w_vec, f)
        cost_other = restricted_cost(instance, w_vec, f_prime)
        w_total = sum(w_vec)
        checks.append(StarCheck(
            players=players,
            center=star.center,
            radius=radius,
            nearest_rival_spread=spread,
            proximity_ok=spread <= 6 * radius,
            cost_here=cost_here,
            cost_other=cost_other,
            cost_ok=cost_other <= cost_here + 6 * radius * w_total,
            lower_bound_ok=cost_here >= Fraction(radius * (radius - 1), 2 * instance.k),
        ))
    return checks
