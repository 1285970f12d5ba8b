"""Optimal seat totals, the weights that support them, and the cutoff rule.

Given the top-S reduction, total misrepresentation is a function of the seat
total alone, and its forward difference

    delta(S; w) = (1 - 2 p_(S+1)) + w * (|a - (S+1)| - |a - S|)

is nondecreasing in ``S``. Everything here follows from that single-crossing
structure: the optimal seat totals at a weight, the closed interval of
weights at which a seat total is optimal, the switching weights between
first-past-the-post (FPTP, ``S_F`` seats) and proportional representation
(PR, ``S_PR`` seats), and a vote-share cutoff implementing the optimum.

Formulas are written for the party that FPTP underrepresents. When Party A is
overrepresented (``S_F > S_PR``) the mirrored formulas are applied in Party A's
coordinates so that the tie-at-threshold convention (ties go to A) is kept.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from misrep.core import (
    HALF,
    INFINITY,
    Allocation,
    Profile,
    Weight,
    as_weight,
    fptp_seats,
    pr_seats,
)
from misrep.errors import DomainError


def statewide_increment(a: Fraction, seat_total: int) -> Fraction:
    """Change in ``|a - S|`` when one seat is added at ``S``."""
    if seat_total + 1 <= a:
        return Fraction(-1)
    if seat_total >= a:
        return Fraction(1)
    # seat_total == floor(a) and a is not an integer
    return 2 * seat_total + 1 - 2 * a


@dataclass(frozen=True)
class ForwardDifference:
    """``delta(S; w) = intercept + slope * w`` for one seat total ``S``.

    ``intercept`` is the district term ``1 - 2 p_(S+1)`` and ``slope`` the
    statewide increment. The sentinels ``S = -1`` and ``S = N`` evaluate to
    ``-inf`` and ``+inf`` at every weight.
    """

    at_s: int
    intercept: Optional[Fraction]
    slope: Optional[Fraction]
    sentinel: float = 0.0

    def __call__(self, w: Weight):
        if self.sentinel:
            return self.sentinel
        if w == INFINITY:
            if self.slope == 0:
                return self.intercept
            return math.copysign(INFINITY, self.slope)
        return self.intercept + self.slope * w


def forward_difference_terms(profile: Profile, seat_total: int) -> ForwardDifference:
    if seat_total < -1 or seat_total > profile.n:
        raise DomainError(f'seat total {seat_total} outside -1..{profile.n}')
    if seat_total == -1:
        return ForwardDifference(seat_total, None, None, -INFINITY)
    if seat_total == profile.n:
        return ForwardDifference(seat_total, None, None, INFINITY)
    return ForwardDifference(
        seat_total,
        1 - 2 * profile.order_stat(seat_total + 1),
        statewide_increment(profile.aggregate, seat_total),
    )


def forward_difference(profile: Profile, seat_total: int, w: Weight):
    """``phi(S + 1; w) - phi(S; w)`` under top-S allocations."""
    return forward_difference_terms(profile, seat_total)(w)


def optimal_seats(profile: Profile, w: Weight) -> frozenset:
    """All seat totals minimizing total misrepresentation at weight ``w``.

    At ``w = INFINITY`` the answer is ``{S_PR}``: the largest seat total
    nearest the aggregate vote.
    """
    w = as_weight(w)
    if w == INFINITY:
        return frozenset([pr_seats(profile)])
    diffs = [forward_difference(profile, s, w) for s in range(-1, profile.n + 1)]
    # diffs[s + 1] is delta(s); S optimal iff delta(S-1) <= 0 <= delta(S)
    return frozenset(
        s for s in range(profile.n + 1) if diffs[s] <= 0 <= diffs[s + 1]
    )


def select_seats(profile: Profile, w: Weight) -> int:
    """Deterministic choice among optimal seat totals: the largest."""
    return max(optimal_seats(profile, w))


@dataclass(frozen=True)
class WeightInterval:
    """Weights ``w >= 0`` at which ``seat_total`` is optimal.

    The set is always a closed interval ``[lo, hi]`` (``hi`` may be
    infinite and is then open) or empty, in which case ``lo`` and ``hi`` are
    ``None``.
    """

    seat_total: int
    lo: Optional[Weight]
    hi: Optional[Weight]

    @property
    def empty(self) -> bool:
        return self.lo is None

    @property
    def lo_closed(self) -> bool:
        return not self.empty

    @property
    def hi_closed(self) -> bool:
        return not self.empty and self.hi != INFINITY

    def __contains__(self, w) -> bool:
        if self.empty:
            return False
        if w == INFINITY:
            return self.hi == INFINITY
        return self.lo <= w <= self.hi

    def has_positive(self) -> bool:
        """Whether the interval contains some ``w > 0``."""
        return not self.empty and self.hi > 0

    def __str__(self) -> str:
        if self.empty:
            return 'empty'
        right = ')' if self.hi == INFINITY else ']'
        return f'[{self.lo}, {self.hi}{right}'


def _solve_nonpositive(intercept, slope, lo, hi):
    """Intersect ``[lo, hi]`` with ``{w : intercept + slope * w <= 0}``."""
    if slope > 0:
        hi = min(hi, -intercept / slope)
    elif slope < 0:
        lo = max(lo, -intercept / slope)
    elif intercept > 0:
        return None
    return (lo, hi) if lo <= hi else None


def weight_interval(profile: Profile, seat_total: int) -> WeightInterval:
    """The closed set of weights at which ``seat_total`` is optimal.

    Away from proportionality this is ``[1 - 2p_(S), 1 - 2p_(S+1)]`` (Party A
    short by at least one seat) or ``[2p_(S+1) - 1, 2p_(S) - 1]`` (ahead by at
    least one); within one seat of ``a`` the two optimality inequalities have
    fractional slopes. Both are solved the same way here, then clipped to
    ``[0, inf)``.
    """
    if not 0 <= seat_total <= profile.n:
        raise DomainError(f'seat total {seat_total} outside 0..{profile.n}')
    bounds = (Fraction(0), INFINITY)
    below = forward_difference_terms(profile, seat_total - 1)
    if not below.sentinel:
        bounds = _solve_nonpositive(below.intercept, below.slope, *bounds)
    above = forward_difference_terms(profile, seat_total)
    if bounds is not None and not above.sentinel:
        # delta(S) >= 0  <=>  -delta(S) <= 0
        bounds = _solve_nonpositive(-above.intercept, -above.slope, *bounds)
    if bounds is None:
        return WeightInterval(seat_total, None, None)
    return WeightInterval(seat_total, *bounds)


def rationalizing_weights(profile: Profile, observed_seats: int) -> WeightInterval:
    """Weights under which an observed seat total minimizes misrepresentation."""
    return weight_interval(profile, observed_seats)


def underrepresented(profile: Profile) -> bool:
    """True when FPTP gives Party A no more seats than PR does."""
    return fptp_seats(profile) <= pr_seats(profile)


@dataclass(frozen=True)
class TransitionWeights:
    """Switching weights near proportionality.

    ``w_floor`` is where the underrepresented party reaches the rounded-down
    proportional seat total, ``w_ceil`` where it reaches the rounded-up one
    (``None`` unless that is the final step), and ``w_pr`` the smallest weight
    at which PR's seat total is optimal. ``relabeled`` records that Party B
    was the underrepresented party.
    """

    w_floor: Weight
    w_ceil: Optional[Weight]
    w_pr: Weight
    relabeled: bool


def transition_weights(profile: Profile) -> TransitionWeights:
    a = profile.aggregate
    fl = math.floor(a)
    frac = a - fl
    p = profile.order_stat
    if underrepresented(profile):
        w_floor = max(Fraction(0), 1 - 2 * p(fl))
        w_ceil = None
        if frac > HALF:
            w_ceil = max(Fraction(0), (1 - 2 * p(fl + 1)) / (2 * frac - 1))
        if frac < HALF:
            w_pr = w_floor
        elif frac > HALF:
            w_pr = w_ceil
        elif p(fl + 1) >= HALF:
            w_pr = Fraction(0)
        else:
            # half-integer a: S_PR rounds up, and the rounded-up total never
            # beats the rounded-down one at a finite weight
            w_pr = INFINITY
        return TransitionWeights(w_floor, w_ceil, w_pr, relabeled=False)

    # Party B is underrepresented; same formulas in A's coordinates.
    cl = math.ceil(a)
    w_floor = max(Fraction(0), 2 * p(cl + 1) - 1)
    w_ceil = None
    if 0 < frac < HALF:
        w_ceil = max(Fraction(0), (2 * p(cl) - 1) / (1 - 2 * frac))
    w_pr = w_ceil if w_ceil is not None else w_floor
    return TransitionWeights(w_floor, w_ceil, w_pr, relabeled=True)


def pr_cutoff(profile: Profile) -> Fraction:
    """Cutoff implementing the PR seat total: ``p_(S_PR)``, or 1 if zero seats."""
    return profile.order_stat(pr_seats(profile))


@dataclass(frozen=True)
class CutoffPiece:
    """``t(w) = intercept + slope * w`` for ``lo <= w < hi``."""

    lo: Weight
    hi: Weight
    intercept: Fraction
    slope: Fraction

    def __call__(self, w: Weight) -> Fraction:
        return self.intercept + self.slope * w


@dataclass(frozen=True)
class CutoffCurve:
    """The optimal cutoff as a piecewise-linear function of the weight."""

    pieces: Tuple[CutoffPiece, ...]
    transitions: TransitionWeights

    def __call__(self, w: Weight) -> Fraction:
        if w == 0:
            return HALF
        for piece in self.pieces:
            if piece.lo <= w < piece.hi:
                return piece(w)
        return self.pieces[-1](0) if w == INFINITY else self.pieces[-1](w)


def cutoff_curve(profile: Profile) -> CutoffCurve:
    tw = transition_weights(profile)
    t_pr = pr_cutoff(profile)
    pieces: List[CutoffPiece] = []
    if not tw.relabeled:
        pinned = (1 - tw.w_floor) / 2
        sign = Fraction(-1, 2)
        # when FPTP is already proportional p_(S_PR) can sit above 1/2 (or
        # be the sentinel 1); 1/2 awards the same districts and keeps the
        # curve falling
        t_pr = min(t_pr, HALF)
    else:
        pinned = profile.order_stat(math.ceil(profile.aggregate))
        sign = HALF
    stops = [Fraction(0), min(tw.w_floor, tw.w_pr), tw.w_pr]
    if stops[1] > 0:
        pieces.append(CutoffPiece(stops[0], stops[1], HALF, sign))
    if stops[2] > stops[1]:
        pieces.append(CutoffPiece(stops[1], stops[2], pinned, Fraction(0)))
    pieces.append(CutoffPiece(tw.w_pr, INFINITY, t_pr, Fraction(0)))
    return CutoffCurve(tuple(pieces), tw)


def optimal_cutoff(profile: Profile, w: Weight) -> Fraction:
    """A vote-share cutoff whose cutoff allocation is optimal at ``w``.

    For the underrepresented party the cutoff falls from 1/2 along
    ``(1 - w) / 2`` until it reaches the share of the district that brings
    the party to its rounded-down proportional total, stays there, and
    finally drops to the PR cutoff at ``w_pr``. The overrepresented case is
    the mirror image. The guarantee assumes the shares at the threshold are
    distinct; with tied shares a top-S allocation may not be a cutoff
    allocation at all.
    """
    return cutoff_curve(profile)(w)


def cutoff_allocation(profile: Profile, t: Fraction) -> Allocation:
    """Award Party A every district with share at least ``t``."""
    return Allocation(1 if p >= t else 0 for p in profile.shares)


@dataclass(frozen=True)
class SeatSchedule:
    """Optimal seat total as a step function of the weight.

    ``breakpoints[i]`` is the weight at which the seat total moves from
    ``start_seats + i * direction`` to the next value; at a breakpoint both
    totals are optimal. A breakpoint of ``INFINITY`` means the last step is
    only reached in the limit.
    """

    start_seats: int
    end_seats: int
    direction: int
    breakpoints: Tuple[Weight, ...] = field(default=())

    def seats_at(self, w: Weight) -> int:
        """The seat total chosen at ``w`` when ties favour Party A."""
        if self.direction >= 0:
            steps = bisect.bisect_right(self.breakpoints, w)
        else:
            steps = bisect.bisect_left(self.breakpoints, w)
        return self.start_seats + self.direction * steps

    def rows(self):
        """``(w_lo, w_hi, seats)`` for each flat stretch of the schedule."""
        stops = (Fraction(0),) + self.breakpoints + (INFINITY,)
        for i in range(len(stops) - 1):
            yield stops[i], stops[i + 1], self.start_seats + self.direction * i


def seat_schedule(profile: Profile) -> SeatSchedule:
    start, end = fptp_seats(profile), pr_seats(profile)
    direction = (end > start) - (end < start)
    breakpoints = []
    for s in range(start + direction, end + direction, direction or 1):
        if direction == 0:
            break
        interval = weight_interval(profile, s)
        breakpoints.append(INFINITY if interval.empty else interval.lo)
    return SeatSchedule(start, end, direction, tuple(breakpoints))
