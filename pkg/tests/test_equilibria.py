"""Exhaustive equilibrium enumeration: counts, costs, budget, parallelism."""
from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from voronoigame import (
    GameMode,
    build_instance,
    cycle_instance,
    enumerate_equilibria,
    nash_exists,
)
from voronoigame.dynamics import BudgetExceededError
from conftest import random_standard_instance


def test_c6_two_players_everything_is_nash():
    # every 2-player profile on a cycle splits the cycle evenly
    report = enumerate_equilibria(cycle_instance(6, 2))
    assert len(report.equilibria) == 21  # all multisets over 6 vertices
    assert report.profiles_checked == 21
    assert all(eq.payoffs == (Fraction(3), Fraction(3))
               for eq in report.equilibria)
    assert report.discrepancy == Fraction(9, 4)


def test_costs_and_discrepancy():
    report = enumerate_equilibria(cycle_instance(6, 2))
    assert report.min_cost == 4  # antipodal pair
    assert report.max_cost == 9  # co-located pair


def test_profiles_are_sorted_multisets():
    report = enumerate_equilibria(cycle_instance(5, 2))
    for eq in report.equilibria:
        assert tuple(sorted(eq.profile)) == eq.profile


def test_disjoint_mode_excludes_colocated():
    report = enumerate_equilibria(cycle_instance(6, 2), mode=GameMode.DISJOINT)
    assert all(len(set(eq.profile)) == 2 for eq in report.equilibria)


def test_no_equilibrium_case():
    # C4 with 3 players has no pure equilibrium in shared mode
    report = enumerate_equilibria(cycle_instance(4, 3))
    assert report.equilibria == ()
    assert report.discrepancy is None
    assert not nash_exists(cycle_instance(4, 3))


def test_budget_enforcement():
    with pytest.raises(BudgetExceededError):
        enumerate_equilibria(cycle_instance(12, 4), budget=10)


def test_workers_do_not_change_results():
    rng = random.Random(21)
    for _ in range(10):
        inst = random_standard_instance(rng)
        assert enumerate_equilibria(inst, workers=1) == enumerate_equilibria(
            inst, workers=3)


def test_infinite_cost_reported():
    inst = build_instance(4, [(0, 1), (2, 3)], k=2)
    report = enumerate_equilibria(inst)
    if report.equilibria:
        assert report.max_cost == math.inf or report.max_cost >= 0
