"""Profiles, allocations and the two misrepresentation measures.

A *profile* is the vector of Party A's two-party vote shares, one entry per
equal-population district. An *allocation* says which districts Party A wins.
Every quantity is an exact :class:`fractions.Fraction`; decimal input such as
``"0.485"`` is parsed as the exact decimal fraction, never as a float.

District misrepresentation (``dist``) is the mass of voters whose district is
held by the party they voted against; statewide misrepresentation (``agg``) is
the seat-count gap ``|a - S|`` where ``a`` is Party A's aggregate vote. They are
combined as ``dist + w * agg``. The weight ``w`` may be :data:`INFINITY`, in
which case the objective is compared lexicographically on ``(agg, dist)``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Iterator, Sequence, Tuple, Union

from misrep.errors import DimensionError, DomainError, ResourceError

#: Symbolic infinite weight; compares correctly against ``Fraction``.
INFINITY = math.inf

Number = Union[int, Fraction, str]
Weight = Union[Fraction, float]

HALF = Fraction(1, 2)


def as_fraction(value: Number) -> Fraction:
    """Convert ``value`` to an exact fraction.

    Strings are read as exact decimals (``"0.485"``) or ``"num/den"``.
    Floats are refused because their binary expansion is rarely what the
    caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError('booleans are not shares')
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f'cannot parse {value!r} as a rational') from exc
    if isinstance(value, float):
        raise TypeError(
            f'float {value!r} given; pass a string or Fraction for exactness'
        )
    raise TypeError(f'cannot convert {type(value).__name__} to a fraction')


def as_weight(value: Union[Number, float]) -> Weight:
    """Convert to a nonnegative exact weight, or :data:`INFINITY`."""
    if isinstance(value, float) and math.isinf(value) and value > 0:
        return INFINITY
    if isinstance(value, str) and value.strip().lower() in ('inf', 'infinity'):
        return INFINITY
    w = as_fraction(value)
    if w < 0:
        raise DomainError(f'weight must be nonnegative, got {w}')
    return w


def share(value: Number) -> Fraction:
    """Validate a single vote share in ``[0, 1]``."""
    p = as_fraction(value)
    if not 0 <= p <= 1:
        raise DomainError(f'share {p} is outside [0, 1]')
    return p


def share_from_counts(a_votes: int, two_party_total: int) -> Fraction:
    """Exact share from Party A's votes and the two-party total."""
    if two_party_total <= 0:
        raise DomainError('two-party total must be positive')
    if not 0 <= a_votes <= two_party_total:
        raise DomainError(
            f'A votes {a_votes} outside [0, {two_party_total}]'
        )
    return Fraction(a_votes, two_party_total)


class Profile:
    """Immutable vector of district vote shares for Party A.

    Order statistics are one-based, matching the usual notation
    ``p_(1) >= ... >= p_(N)``; equal shares are ordered by district index.
    :meth:`order_stat` also accepts the sentinels ``0`` (value 1) and
    ``N + 1`` (value 0) so boundary formulas need no special cases.
    """

    __slots__ = ('shares', '__dict__')

    def __init__(self, shares: Iterable[Number]):
        values = tuple(share(s) for s in shares)
        if not values:
            raise DomainError('a profile needs at least one district')
        self.shares: Tuple[Fraction, ...] = values

    @classmethod
    def from_counts(cls, rows: Iterable[Tuple[int, int]]) -> 'Profile':
        """Build from ``(a_votes, two_party_total)`` pairs."""
        return cls(share_from_counts(a, t) for a, t in rows)

    @classmethod
    def constant(cls, value: Number, n: int) -> 'Profile':
        return cls([value] * n)

    def __len__(self) -> int:
        return len(self.shares)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.shares)

    def __getitem__(self, d: int) -> Fraction:
        return self.shares[d]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Profile):
            return NotImplemented
        return self.shares == other.shares

    def __hash__(self) -> int:
        return hash(self.shares)

    def __repr__(self) -> str:
        return 'Profile([{}])'.format(', '.join(str(s) for s in self.shares))

    @property
    def n(self) -> int:
        return len(self.shares)

    @cached_property
    def aggregate(self) -> Fraction:
        """Party A's aggregate vote ``a = sum of shares``."""
        return sum(self.shares, Fraction(0))

    @cached_property
    def mean(self) -> Fraction:
        return self.aggregate / self.n

    @cached_property
    def order(self) -> Tuple[int, ...]:
        """District indices from strongest to weakest for Party A."""
        return tuple(sorted(range(self.n), key=lambda d: (-self.shares[d], d)))

    @cached_property
    def sorted_desc(self) -> Tuple[Fraction, ...]:
        return tuple(self.shares[d] for d in self.order)

    @cached_property
    def prefix_sums(self) -> Tuple[Fraction, ...]:
        """``prefix_sums[k]`` is the total share of the ``k`` strongest districts."""
        return tuple(itertools.accumulate(self.sorted_desc, initial=Fraction(0)))

    def order_stat(self, i: int) -> Fraction:
        """The ``i``-th largest share, one-based, with sentinels at 0 and N+1."""
        if i <= 0:
            return Fraction(1)
        if i > self.n:
            return Fraction(0)
        return self.sorted_desc[i - 1]

    def relabeled(self) -> 'Profile':
        """The same election seen from Party B (``p -> 1 - p``)."""
        return Profile(1 - s for s in self.shares)


class Allocation:
    """Indicator vector of the districts awarded to Party A."""

    __slots__ = ('bits',)

    def __init__(self, bits: Iterable[int]):
        values = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in values):
            raise DomainError('allocation bits must be 0 or 1')
        self.bits: Tuple[int, ...] = values

    @classmethod
    def from_winners(cls, winners: Iterable[int], n: int) -> 'Allocation':
        won = set(winners)
        if any(not 0 <= d < n for d in won):
            raise DomainError(f'district index outside 0..{n - 1}')
        return cls(1 if d in won else 0 for d in range(n))

    def __len__(self) -> int:
        return len(self.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Allocation):
            return NotImplemented
        return self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return 'Allocation({})'.format(''.join(map(str, self.bits)))

    @property
    def seat_total(self) -> int:
        return sum(self.bits)

    @property
    def winners(self) -> frozenset:
        """Zero-based indices of the districts won by Party A."""
        return frozenset(d for d, b in enumerate(self.bits) if b)


def _check_length(profile: Profile, alloc: Allocation) -> None:
    if len(alloc) != profile.n:
        raise DimensionError(
            f'allocation has {len(alloc)} districts, profile has {profile.n}'
        )


def _check_seats(profile: Profile, seat_total: int) -> None:
    if not 0 <= seat_total <= profile.n:
        raise DomainError(f'seat total {seat_total} outside 0..{profile.n}')


def dist_misrep(profile: Profile, alloc: Allocation) -> Fraction:
    """District misrepresentation of ``alloc``, by direct summation."""
    _check_length(profile, alloc)
    return sum(
        ((1 - p) if x else p for p, x in zip(profile.shares, alloc.bits)),
        Fraction(0),
    )


def agg_misrep(profile: Profile, seat_total: int) -> Fraction:
    """Statewide misrepresentation ``|a - S|``."""
    _check_seats(profile, seat_total)
    return abs(profile.aggregate - seat_total)


def combine(dist: Fraction, agg: Fraction, w: Weight):
    """Weighted objective; a ``(agg, dist)`` tuple when ``w`` is infinite."""
    if w == INFINITY:
        return (agg, dist)
    return dist + w * agg


def phi(profile: Profile, alloc: Allocation, w: Weight):
    """Total misrepresentation ``dist + w * agg`` of an allocation.

    For ``w = INFINITY`` the result is the tuple ``(agg, dist)``; tuples order
    lexicographically, which is the limiting objective.
    """
    return combine(
        dist_misrep(profile, alloc), agg_misrep(profile, alloc.seat_total), w
    )


def top_s_allocation(profile: Profile, seat_total: int) -> Allocation:
    """Award Party A its ``seat_total`` strongest districts.

    Equal shares are taken in district-index order.
    """
    _check_seats(profile, seat_total)
    return Allocation.from_winners(profile.order[:seat_total], profile.n)


def dist_at(profile: Profile, seat_total: int) -> Fraction:
    """District misrepresentation of the top-S allocation, closed form."""
    _check_seats(profile, seat_total)
    return seat_total + profile.aggregate - 2 * profile.prefix_sums[seat_total]


def phi_at(profile: Profile, seat_total: int, w: Weight):
    """Objective value of the top-S allocation at weight ``w``."""
    return combine(
        dist_at(profile, seat_total), agg_misrep(profile, seat_total), w
    )


def fptp_seats(profile: Profile) -> int:
    """Seats won under a 50% threshold, ties going to Party A."""
    return sum(1 for p in profile.shares if p >= HALF)


def pr_seats(profile: Profile) -> int:
    """Largest seat total nearest to the aggregate vote (half rounds up)."""
    a = profile.aggregate
    return min(math.floor(a + HALF), profile.n)


def iter_allocations(n: int) -> Iterator[Allocation]:
    """All ``2**n`` allocations of ``n`` districts."""
    for bits in itertools.product((0, 1), repeat=n):
        yield Allocation(bits)


def exhaustive_minimizers(
    profile: Profile, w: Weight, max_districts: int = 20
) -> list:
    """Every allocation minimizing :func:`phi`, found by enumeration.

    This is deliberately naive and is used to certify results that the
    closed forms produce.
    """
    if profile.n > max_districts:
        raise ResourceError(
            f'{profile.n} districts means 2**{profile.n} allocations; '
            f'limit is {max_districts}'
        )
    best = None
    found = []
    for alloc in iter_allocations(profile.n):
        value = phi(profile, alloc, w)
        if best is None or value < best:
            best, found = value, [alloc]
        elif value == best:
            found.append(alloc)
    return found


def seat_totals(allocs: Sequence[Allocation]) -> frozenset:
    return frozenset(a.seat_total for a in allocs)
