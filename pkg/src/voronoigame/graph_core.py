"""Graph instances, BFS distances, validation, and instance I/O.

Vertices are dense integer ids 0..n-1. Distances are hop counts; unreachable
pairs are ``math.inf`` (the one non-integer value a distance can take).
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

INF = math.inf


class InstanceError(ValueError):
    """Raised when an instance (or instance file) violates an invariant."""


@dataclass(frozen=True)
class GameInstance:
    """A (generalized) Voronoi game: graph, vertex weights, facility set, k.

    The instance is "standard" when all weights are 1 and every vertex is an
    allowed facility. Immutable; safe to share between threads/processes.
    """

    n: int
    edges: tuple[tuple[int, int], ...]  # normalized (u < v), sorted
    weights: tuple[int, ...]
    facilities: tuple[int, ...]  # sorted, unique
    k: int

    @property
    def is_standard(self) -> bool:
        return all(w == 1 for w in self.weights) and len(self.facilities) == self.n

    @property
    def total_weight(self) -> int:
        return sum(self.weights)


def build_instance(n, edges, weights=None, facilities=None, k=1) -> GameInstance:
    """Validate and normalize raw inputs into a GameInstance.

    Rejects k >= n, non-positive weights, out-of-range ids, self-loops,
    duplicate edges, and empty facility sets.
    """
    if not isinstance(n, int) or n < 1:
        raise InstanceError(f"n must be a positive integer, got {n!r}")
    if not isinstance(k, int) or not 1 <= k < n:
        raise InstanceError(f"k must satisfy 1 <= k < n, got k={k!r}, n={n}")

    norm = []
    for e in edges:
        u, v = e
        if not (isinstance(u, int) and isinstance(v, int)):
            raise InstanceError(f"edge {e!r} has non-integer endpoint")
        if not (0 <= u < n and 0 <= v < n):
            raise InstanceError(f"edge {e!r} out of range for n={n}")
        if u == v:
            raise InstanceError(f"self-loop at vertex {u}")
        norm.append((u, v) if u < v else (v, u))
    if len(set(norm)) != len(norm):
        raise InstanceError("duplicate edges")
    norm.sort()

    if weights is None:
        weights = (1,) * n
    else:
        weights = tuple(weights)
        if len(weights) != n:
            raise InstanceError(f"weights array length {len(weights)} != n={n}")
        for i, w in enumerate(weights):
            if not isinstance(w, int) or w < 1:
                raise InstanceError(f"weight of vertex {i} must be an integer >= 1, got {w!r}")

    if facilities is None:
        facilities = tuple(range(n))
    else:
        facilities = tuple(sorted(set(facilities)))
        if not facilities:
            raise InstanceError("facility set is empty")
        for u in facilities:
            if not isinstance(u, int) or not 0 <= u < n:
                raise InstanceError(f"facility {u!r} out of range for n={n}")

    return GameInstance(n=n, edges=tuple(norm), weights=weights,
                        facilities=facilities, k=k)


@lru_cache(maxsize=1024)
def adjacency(instance: GameInstance) -> tuple[tuple[int, ...], ...]:
    adj = [[] for _ in range(instance.n)]
    for u, v in instance.edges:
        adj[u].append(v)
        adj[v].append(u)
    return tuple(tuple(sorted(a)) for a in adj)


def _bfs(adj, source, n):
    dist = [INF] * n
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        du = dist[u]
        for v in adj[u]:
            if dist[v] == INF:
                dist[v] = du + 1
                q.append(v)
    return tuple(d if d == INF else int(d) for d in dist)


@lru_cache(maxsize=1024)
def all_pairs_distances(instance: GameInstance) -> tuple[tuple, ...]:
    """BFS hop distances between all vertex pairs; INF when disconnected."""
    adj = adjacency(instance)
    return tuple(_bfs(adj, s, instance.n) for s in range(instance.n))


def is_connected(instance: GameInstance) -> bool:
    if instance.n == 1:
        return True
    row = all_pairs_distances(instance)[0]
    return all(d != INF for d in row)


def cycle_instance(n: int, k: int) -> GameInstance:
    """The standard game on the n-cycle (n >= 3)."""
    if n < 3:
        raise InstanceError(f"cycle needs n >= 3, got {n}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return build_instance(n, edges, k=k)


def serialize_instance(instance: GameInstance) -> str:
    """Deterministic JSON: edges sorted lexicographically, arrays in id order."""
    obj = {
        "n": instance.n,
        "edges": [list(e) for e in instance.edges],
        "weights": list(instance.weights),
        "facilities": list(instance.facilities),
        "k": instance.k,
    }
    return json.dumps(obj)


def parse_instance(text: str) -> GameInstance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InstanceError("instance file must be a JSON object")
    for field in ("n", "edges", "k"):
        if field not in obj:
            raise InstanceError(f"missing required field {field!r}")
    edges = obj["edges"]
    if not isinstance(edges, list) or any(not isinstance(e, list) or len(e) != 2 for e in edges):
        raise InstanceError('field "edges" must be a list of [u, v] pairs')
    return build_instance(obj["n"], [tuple(e) for e in edges],
                          weights=obj.get("weights"),
                          facilities=obj.get("facilities"),
                          k=obj["k"])


def export_dot(instance: GameInstance, profile=None) -> str:
    """Render the instance as Graphviz DOT text.

    Facility vertices are boxes; a profile marks occupied vertices with the
    occupant count; weights > 1 are labeled.
    """
    occupancy = {}
    if profile is not None:
        fac = set(instance.facilities)
        for u in profile:
            if u not in fac:
                raise InstanceError(f"profile vertex {u} is not an allowed facility")
            occupancy[u] = occupancy.get(u, 0) + 1
    lines = ["graph G {"]
    for v in range(instance.n):
        label = f"v{v}"
        if instance.weights[v] != 1:
            label += f" w={instance.weights[v]}"
        if v in occupancy:
            label += f" x{occupancy[v]}"
        attrs = [f'label="{label}"']
        if v in instance.facilities:
            attrs.append("shape=box")
        if v in occupancy:
            attrs.append("style=filled")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in instance.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
