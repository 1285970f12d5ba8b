"""Rule objects and the two axioms that single out FPTP and PR.

A rule maps a profile to an allocation. Three kinds are provided: FPTP
(award every district where Party A has at least half the vote), PR (award
the top ``S_PR`` districts) and the misrepresentation-minimizing family
``R_lam`` (award the top ``S`` districts for the largest optimal ``S`` at
weight ``lam``).

FPTP is the only member of the family that is *strongly monotone* (raising
A's shares never costs A a district it held) and PR the only one that is
*gerrymandering-proof* (the seat total depends on the mean share alone). The
constructors below build explicit witnesses that every other member fails,
and they certify each witness by exhaustive minimization before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from misrep.core import (
    HALF,
    INFINITY,
    Allocation,
    Profile,
    Weight,
    as_fraction,
    as_weight,
    exhaustive_minimizers,
    pr_seats,
    top_s_allocation,
)
from misrep.errors import DomainError, PreconditionError
from misrep.optimizer import cutoff_allocation, optimal_seats, select_seats

#: Largest district count certified by full enumeration of allocations.
EXHAUSTIVE_LIMIT = 12


class Rule:
    """A deterministic allocation rule.

    :param kind: ``'FPTP'``, ``'PR'`` or ``'family'``.
    :param weight: the design weight ``lam`` for the family, else ``None``.
    """

    def __init__(self, kind: str, weight: Optional[Weight] = None):
        if kind not in ('FPTP', 'PR', 'family'):
            raise DomainError(f'unknown rule kind {kind!r}')
        if kind == 'family':
            weight = as_weight(weight)
        self.kind = kind
        self.weight = weight

    def seats(self, profile: Profile) -> int:
        return self(profile).seat_total

    def __call__(self, profile: Profile) -> Allocation:
        if self.kind == 'FPTP':
            return cutoff_allocation(profile, HALF)
        if self.kind == 'PR':
            return top_s_allocation(profile, pr_seats(profile))
        return top_s_allocation(profile, select_seats(profile, self.weight))

    def __eq__(self, other):
        if not isinstance(other, Rule):
            return NotImplemented
        return (self.kind, self.weight) == (other.kind, other.weight)

    def __hash__(self):
        return hash((self.kind, self.weight))

    def __repr__(self):
        if self.kind == 'family':
            return f'Rule(family, weight={self.weight})'
        return f'Rule({self.kind})'


FPTP = Rule('FPTP')
PR = Rule('PR')


def fptp(profile: Profile) -> Allocation:
    """Majority winners, ties at exactly 1/2 going to Party A."""
    return FPTP(profile)


def proportional(profile: Profile) -> Allocation:
    return PR(profile)


def family_rule(weight: Union[Weight, str, int]) -> Rule:
    """The misrepresentation-minimizing rule at design weight ``weight``."""
    return Rule('family', weight)


@dataclass(frozen=True)
class AxiomHolds:
    """Returned instead of a counterexample when the rule satisfies the axiom."""

    axiom: str
    weight: Weight
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class MonotonicityViolation:
    """``after`` dominates ``before`` componentwise, yet A loses a district."""

    weight: Weight
    before: Profile
    after: Profile
    lost_district: int

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class GerrymanderingViolation:
    """Two profiles with equal mean shares that get different seat totals."""

    weight: Weight
    first: Profile
    second: Profile
    first_seats: int
    second_seats: int

    def __bool__(self) -> bool:
        return True


def minimizing_winner_sets(profile: Profile, w: Weight) -> list:
    """Winner sets of every allocation minimizing total misrepresentation.

    Small profiles are enumerated outright. Larger ones use the top-S
    reduction, which agrees with enumeration whenever shares are distinct.
    """
    if profile.n <= EXHAUSTIVE_LIMIT:
        return [a.winners for a in exhaustive_minimizers(profile, w)]
    return [top_s_allocation(profile, s).winners for s in optimal_seats(profile, w)]


def minimizing_seat_totals(profile: Profile, w: Weight) -> frozenset:
    return frozenset(len(s) for s in minimizing_winner_sets(profile, w))


def _check_district_count(n: int, least: int) -> None:
    if n < least:
        raise DomainError(f'need at least {least} districts, got {n}')


def strong_monotonicity_counterexample(
    w, n: int, epsilon=None
) -> Union[MonotonicityViolation, AxiomHolds]:
    """Profiles ``p <= q`` such that ``R_w`` awards A a district under ``p``
    but not under ``q``.

    With three or more districts ``p = (1/2 + e, 1/2 - e, 0, ...)`` and
    ``q = (1/2 + e, 1/2 + 2e, 0, ...)``: raising the second district past
    1/2 makes it the stronger one, and since the aggregate stays close to 1
    the rule still awards a single seat, now in the second district. The
    default ``e`` is half of ``min(w / 8, 1 / 12)``.

    With two districts ``p = (0, 1/2 + d)`` and ``q = (1/2 + 2d, 1/2 + d)``
    with default ``d`` half of ``min(1/8, w / (2 + 6w))``; the second district
    is lost. ``epsilon`` overrides ``e`` or ``d``.

    District indices are zero-based. At ``w = 0`` the rule is FPTP, which is
    strongly monotone, and :class:`AxiomHolds` is returned.
    """
    w = as_weight(w)
    _check_district_count(n, 2)
    if w == 0:
        return AxiomHolds(
            'strong monotonicity', w,
            'at zero weight each district is decided by its own majority',
        )
    if n == 2:
        bound = Fraction(1, 8) if w == INFINITY else min(
            Fraction(1, 8), w / (2 + 6 * w))
        d = bound / 2 if epsilon is None else as_fraction(epsilon)
        before = Profile([0, HALF + d])
        after = Profile([HALF + 2 * d, HALF + d])
        lost = 1
    else:
        bound = Fraction(1, 12) if w == INFINITY else min(w / 8, Fraction(1, 12))
        e = bound / 2 if epsilon is None else as_fraction(epsilon)
        zeros = [0] * (n - 2)
        before = Profile([HALF + e, HALF - e] + zeros)
        after = Profile([HALF + e, HALF + 2 * e] + zeros)
        lost = 0

    held = minimizing_winner_sets(before, w)
    dropped = minimizing_winner_sets(after, w)
    if not (all(lost in s for s in held) and all(lost not in s for s in dropped)):
        raise PreconditionError(
            f'construction not certified at w={w}, parameter outside its range'
        )
    return MonotonicityViolation(w, before, after, lost)


def gerrymandering_proofness_counterexample(
    w, n: int, delta=None, epsilon=None
) -> Union[GerrymanderingViolation, AxiomHolds]:
    """Two equal-mean profiles on which ``R_w`` awards different seat totals.

    ``p`` puts ``N - 2`` districts just below 1, one at ``1/2 + delta`` and
    one at 0; ``q`` moves the shortfall into a last district at
    ``epsilon + delta`` and drops the second-last to ``1/2 - delta``. Both
    have aggregate ``N - 3/2 + epsilon``. ``p`` gets ``N - 1`` seats and
    ``q`` gets ``N - 2``. Defaults are ``delta = 1/8`` and ``epsilon`` half
    of ``min(delta / (1 + w), 1/2 - 2 delta)``.

    At ``w = INFINITY`` the rule is PR, whose seat total depends only on the
    mean, and :class:`AxiomHolds` is returned.
    """
    w = as_weight(w)
    _check_district_count(n, 3)
    if w == INFINITY:
        return AxiomHolds(
            'gerrymandering-proofness', w,
            'the proportional seat total depends only on the mean share',
        )
    d = Fraction(1, 8) if delta is None else as_fraction(delta)
    if epsilon is None:
        e = min(d / (1 + w), HALF - 2 * d) / 2
    else:
        e = as_fraction(epsilon)
    top = 1 - (d - e) / (n - 2)
    first = Profile([top] * (n - 2) + [HALF + d, 0])
    second = Profile([1] * (n - 2) + [HALF - d, e + d])

    seats_first = minimizing_seat_totals(first, w)
    seats_second = minimizing_seat_totals(second, w)
    if seats_first != {n - 1} or seats_second != {n - 2}:
        raise PreconditionError(
            f'construction not certified at w={w}: seat totals '
            f'{sorted(seats_first)} vs {sorted(seats_second)}'
        )
    return GerrymanderingViolation(w, first, second, n - 1, n - 2)
