"""Canonical cycle-game profiles, closed-form payoffs, and the four-condition
Nash characterization for cycles.

A profile on the n-cycle is summarized, up to player permutation, by the
occupancy counts c_j of the distinct occupied facilities (in cyclic order)
and the gap lengths d_j between consecutive occupied facilities. Each gap
decomposes as d_j = 1 + 2*a_j + b_j with b_j in {0, 1}; b_j = 1 means the gap
has a midway vertex equidistant from both endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class CycleError(ValueError):
    pass


@dataclass(frozen=True)
class CycleProfile:
    n: int
    positions: tuple[int, ...]  # distinct occupied vertices, increasing
    counts: tuple[int, ...]     # players per occupied vertex
    gaps: tuple[int, ...]       # gap j runs from positions[j] to positions[j+1]

    @property
    def ell(self) -> int:
        return len(self.positions)

    @property
    def k(self) -> int:
        return sum(self.counts)

    @property
    def halves(self) -> tuple[int, ...]:
        """a_j of the decomposition d_j = 1 + 2*a_j + b_j."""
        return tuple((d - 1) // 2 for d in self.gaps)

    @property
    def parities(self) -> tuple[int, ...]:
        """b_j of the decomposition (1 iff the gap has a midway vertex)."""
        return tuple((d - 1) % 2 for d in self.gaps)

    @property
    def gamma(self) -> Fraction:
        return min(cycle_payoffs(self))


def canonicalize(n: int, positions) -> CycleProfile:
    """Summarize a multiset of k facility vertices on the n-cycle."""
    positions = list(positions)
    k = len(positions)
    if not 1 <= k < n:
        raise CycleError(f"need 1 <= k < n, got k={k}, n={n}")
    for u in positions:
        if not 0 <= u < n:
            raise CycleError(f"vertex {u} out of range for n={n}")
    counts = {}
    for u in positions:
        counts[u] = counts.get(u, 0) + 1
    occupied = sorted(counts)
    ell = len(occupied)
    if ell == 1:
        gaps = (n,)
    else:
        gaps = tuple((occupied[(j + 1) % ell] - occupied[j]) % n for j in range(ell))
    return CycleProfile(n=n, positions=tuple(occupied),
                        counts=tuple(counts[u] for u in occupied), gaps=gaps)


def cycle_payoffs(profile: CycleProfile) -> tuple[Fraction, ...]:
    """Closed-form payoff of a player on each occupied facility.

    For a single occupied facility, the cyclic neighbor indices wrap onto the
    facility itself, which reproduces the engine's even split.
    """
    ell = profile.ell
    c = profile.counts
    a = profile.halves
    b = profile.parities
    out = []
    for j in range(ell):
        jm, jp = (j - 1) % ell, (j + 1) % ell
        p = (Fraction(b[jm], c[jm] + c[j])
             + Fraction(a[jm] + 1 + a[j], c[j])
             + Fraction(b[j], c[j] + c[jp]))
        out.append(p)
    return tuple(out)


def lemma2_is_nash(profile: CycleProfile):
    """Decide equilibrium from the cycle's structural conditions.

    Returns (is_nash, violations) where each violation is a (condition, index)
    pair with condition in {"i", "ii", "iii", "iv"}: "i" stack too large,
    "ii" gap too long, "iii" a profitable move onto an occupied facility,
    "iv" a profitable parity move into a gap. Self-contained: everything is
    computed from the closed-form cycle payoffs, never from the engine.

    The stated textbook conditions catch (i) and (ii) directly; the pattern
    conditions for (iii) and (iv) miss a few small configurations (e.g. a
    lone player flanked by two 2-stacks across two even gaps, or a join that
    grabs a bigger slice than a half-share), so profiles passing the pattern
    screen get a residual closed-form sweep over all single moves.
    """
    ell = profile.ell
    c = profile.counts
    d = profile.gaps
    gamma = profile.gamma
    violations = []
    for j in range(ell):
        jm, jp = (j - 1) % ell, (j + 1) % ell
        if c[j] > 2:
            violations.append(("i", j))
        if d[j] > 2 * gamma:
            violations.append(("ii", j))
        if (c[j] == 1 and d[jm] == 2 * gamma and d[j] == 2 * gamma
                and d[j] % 2 == 0):
            # Odd equal gaps are excluded: without midway vertices a join
            # yields exactly gamma, which is not an improvement.
            if not (c[jm] == 2 and c[jp] == 2):
                violations.append(("iii", j))
        if c[j] == 1 and ell >= 2:
            # Local moves of a lone player: an even gap donates a half-share
            # at its midway vertex, shrunk further by the stack it faces.
            # Happiness requires every even adjacent gap to face a weakly
            # smaller stack; two even gaps force both neighbors to 1-stacks.
            left_even, right_even = d[jm] % 2 == 0, d[j] % 2 == 0
            if left_even and right_even:
                if not (c[jm] == 1 and c[jp] == 1):
                    violations.append(("iv", j))
            elif left_even and c[jm] > c[jp]:
                violations.append(("iv", j))
            elif right_even and c[jp] > c[jm]:
                violations.append(("iv", j))
    if violations:
        return False, violations
    return _residual_move_sweep(profile)


def _residual_move_sweep(profile: CycleProfile):
    """Closed-form check of every single-player relocation.

    A profitable move onto an occupied facility is reported as ("iii", target
    facility index); a profitable move into a gap as ("iv", gap index).
    """
    n = profile.n
    payoff = cycle_payoffs(profile)
    base = []
    for u, cnt in zip(profile.positions, profile.counts):
        base.extend([u] * cnt)
    occupied = set(profile.positions)
    violations = []
    for j, source in enumerate(profile.positions):
        current = payoff[j]
        rest = list(base)
        rest.remove(source)
        rest_occupied = set(rest)
        for target in range(n):
            if target == source:
                continue
            moved = canonicalize(n, rest + [target])
            gained = cycle_payoffs(moved)[moved.positions.index(target)]
            if gained > current:
                if target in rest_occupied:
                    violations.append(("iii", profile.positions.index(target)
                                       if target in occupied else target))
                else:
                    gap = _gap_of(profile, target)
                    violations.append(("iv", gap))
    # deduplicate, preserving first-seen order
    seen = []
    for v in violations:
        if v not in seen:
            seen.append(v)
    return not seen, seen


def _gap_of(profile: CycleProfile, vertex: int) -> int:
    """Index of the gap containing an unoccupied vertex."""
    ell = profile.ell
    for j in range(ell):
        start = profile.positions[j]
        if (vertex - start) % profile.n < profile.gaps[j]:
            return j
    raise CycleError(f"vertex {vertex} is occupied")


@dataclass(frozen=True)
class GapMove:
    """Relocate one player from occupied facility ``source`` to the vertex at
    ``offset`` steps into gap ``gap`` (following the cycle orientation)."""

    source: int
    gap: int
    offset: int


def _side_gain(gap_len: int, stack: int) -> Fraction:
    """Customers the mover wins on one side of his new vertex.

    ``gap_len`` edges separate the mover from a facility holding ``stack``
    players; an even gap has a midway customer shared with that facility.
    """
    if gap_len % 2 == 0:
        return Fraction(gap_len // 2 - 1) + Fraction(1, 1 + stack)
    return Fraction((gap_len - 1) // 2)


def appendix_move_payoff(profile: CycleProfile, move: GapMove) -> Fraction:
    """Closed-form payoff of the relocated player after a single gap move.

    Valid whenever both gap endpoints remain occupied after the move; equals
    the engine payoff of the mutated profile.
    """
    ell = profile.ell
    c = profile.counts
    d = profile.gaps
    if not 0 <= move.source < ell:
        raise CycleError(f"source facility index {move.source} out of range")
    if not 0 <= move.gap < ell:
        raise CycleError(f"gap index {move.gap} out of range")
    if not 1 <= move.offset <= d[move.gap] - 1:
        raise CycleError(
            f"offset {move.offset} must land strictly inside gap {move.gap} "
            f"(length {d[move.gap]})")
    left = move.gap
    right = (move.gap + 1) % ell
    c_left = c[left] - (1 if move.source == left else 0)
    c_right = c[right] - (1 if move.source == right else 0)
    if c_left < 1 or c_right < 1:
        raise CycleError("move vacates a gap endpoint; formula does not apply")
    return (Fraction(1)
            + _side_gain(move.offset, c_left)
            + _side_gain(d[move.gap] - move.offset, c_right))


def apply_move(profile: CycleProfile, move: GapMove) -> CycleProfile:
    """The canonical profile after performing a gap move (for cross-checks)."""
    positions = []
    for u, cnt in zip(profile.positions, profile.counts):
        positions.extend([u] * cnt)
    positions.remove(profile.positions[move.source])
    positions.append((profile.positions[move.gap] + move.offset) % profile.n)
    return canonicalize(profile.n, positions)
