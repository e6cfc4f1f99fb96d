"""Exhaustive Nash enumeration, existence decision, and social cost
discrepancy measurement.

Payoffs are invariant under player permutation, so profiles are enumerated
as facility multisets (combinations with replacement) and each multiset is
checked once per distinct occupied facility.
"""
from __future__ import annotations

import math
import multiprocessing
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from . import engine
from .dynamics import BudgetExceededError
from .engine import GameMode
from .graph_core import INF, GameInstance

DEFAULT_BUDGET = 10_000_000


def effective_budget(budget=None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("VGG_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Equilibrium:
    profile: tuple[int, ...]  # sorted facility multiset
    payoffs: tuple[Fraction, ...]
    cost: object  # int or INF


@dataclass(frozen=True)
class EquilibriumReport:
    equilibria: tuple[Equilibrium, ...]
    profiles_checked: int
    min_cost: object = None
    max_cost: object = None
    discrepancy: object = None  # Fraction, INF, or None when no equilibria


def _check_budget(instance: GameInstance, budget) -> int:
    budget = effective_budget(budget)
    multisets = math.comb(len(instance.facilities) + instance.k - 1, instance.k)
    checks = multisets * len(instance.facilities) * instance.k
    if checks > budget:
        raise BudgetExceededError(checks, budget)
    return multisets


def enumerate_profiles(instance: GameInstance, budget=None):
    """All facility multisets of size k, in deterministic sorted order."""
    _check_budget(instance, budget)
    yield from combinations_with_replacement(instance.facilities, instance.k)


def _scan_chunk(args):
    instance, mode, chunk = args
    found = []
    for profile in chunk:
        if engine.is_nash(instance, profile, mode):
            found.append(Equilibrium(
                profile=profile,
                payoffs=engine.payoffs(instance, profile, mode),
                cost=engine.social_cost(instance, profile)))
    return found


def enumerate_equilibria(instance: GameInstance, mode=GameMode.SHARED,
                         budget=None, workers: int = 1) -> EquilibriumReport:
    """Check every facility multiset; report equilibria, costs, discrepancy.

    The worker count only affects speed: the multiset stream is split into
    contiguous chunks and results are concatenated in chunk order.
    """
    _check_budget(instance, budget)
    profiles = list(combinations_with_replacement(instance.facilities, instance.k))
    if workers > 1 and len(profiles) > 1:
        chunk_size = max(1, math.ceil(len(profiles) / (workers * 4)))
        chunks = [(instance, mode, profiles[i:i + chunk_size])
                  for i in range(0, len(profiles), chunk_size)]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers) as pool:
            parts = pool.map(_scan_chunk, chunks)
        found = [eq for part in parts for eq in part]
    else:
        found = _scan_chunk((instance, mode, profiles))

    if not found:
        return EquilibriumReport(equilibria=(), profiles_checked=len(profiles))
    costs = [eq.cost for eq in found]
    min_cost, max_cost = min(costs), max(costs)
    if max_cost == INF:
        discrepancy = INF
    else:
        discrepancy = Fraction(max_cost, min_cost)
    return EquilibriumReport(equilibria=tuple(found),
                             profiles_checked=len(profiles),
                             min_cost=min_cost, max_cost=max_cost,
                             discrepancy=discrepancy)


def nash_exists(instance: GameInstance, mode=GameMode.SHARED, budget=None) -> bool:
    """Early-exit existence decision."""
    for profile in enumerate_profiles(instance, budget):
        if engine.is_nash(instance, profile, mode):
            return True
    return False


def verify_payoff_bounds(report: EquilibriumReport, instance: GameInstance):
    """Check n/2k < p_i < 2n/k strictly at every reported equilibrium.

    Returns (ok, violations) with violations as (profile, player, payoff).
    Meaningful on connected standard instances, where total payoff is n.
    """
    lo = Fraction(instance.n, 2 * instance.k)
    hi = Fraction(2 * instance.n, instance.k)
    violations = []
    for eq in report.equilibria:
        for i, p in enumerate(eq.payoffs):
            if not lo < p < hi:
                violations.append((eq.profile, i, p))
    return not violations, violations
