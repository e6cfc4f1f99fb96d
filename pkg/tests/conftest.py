"""Shared generators for randomized tests.

Everything is seeded explicitly so every run of the suite sees the same
instances; nothing here depends on global random state.
"""
from __future__ import annotations

import itertools
import random

from voronoigame import build_instance


def random_connected_graph(rng: random.Random, n: int, p: float = 0.5):
    """Edge list of a connected Erdos-Renyi draw (resampled until connected)."""
    pairs = list(itertools.combinations(range(n), 2))
    while True:
        edges = [e for e in pairs if rng.random() < p]
        adj = {v: set() for v in range(n)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) == n:
            return edges


def random_standard_instance(rng: random.Random, n_lo=4, n_hi=8, ks=(2, 3)):
    """Connected unit-weight instance with unrestricted facilities."""
    n = rng.randint(n_lo, n_hi)
    edges = random_connected_graph(rng, n)
    return build_instance(n, edges, k=rng.choice(ks))


def random_generalized_instance(rng: random.Random, n_hi=6, w_hi=3, k=2):
    """Connected weighted instance with a restricted facility set."""
    n = rng.randint(3, n_hi)
    edges = random_connected_graph(rng, n)
    weights = tuple(rng.randint(1, w_hi) for _ in range(n))
    facilities = tuple(sorted(rng.sample(range(n), rng.randint(2, n))))
    return build_instance(n, edges, weights=weights, facilities=facilities, k=k)
