"""Majorization and how misrepresentation responds to concentrated support.

``p`` majorizes ``q`` when both have the same mean and every descending
partial sum of ``p`` is at least that of ``q``: ``p`` is the more
concentrated profile. At a fixed seat total, concentration can only lower
misrepresentation, and so can the optimal rule at any weight. The rule
``R_lam`` evaluated at weight ``w`` keeps this monotonicity exactly when
``lam == w``; :func:`mm_violation_search` builds explicit violations
otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from misrep.core import (
    INFINITY,
    Profile,
    Weight,
    as_fraction,
    as_weight,
    phi_at,
)
from misrep.errors import DimensionError, DomainError, PreconditionError
from misrep.optimizer import select_seats

#: Distance of the probes from a seat switch on the unit segment.
PROBE_STEP = Fraction(1, 2 ** 40)


@dataclass(frozen=True)
class MajorizationCertificate:
    """Evidence that ``dominant`` majorizes ``dominated``.

    ``partial_sum_gaps[k-1]`` is the gap between the two sums of the ``k``
    largest shares; all are nonnegative and the last is zero.
    """

    dominant: Profile
    dominated: Profile
    partial_sum_gaps: Tuple[Fraction, ...]
    mean_gap: Fraction = Fraction(0)

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Refusal:
    """Majorization fails; ``index`` is the first violated partial sum (1-based)."""

    index: int
    reason: str

    def __bool__(self) -> bool:
        return False


def majorizes(p: Profile, q: Profile) -> Union[MajorizationCertificate, Refusal]:
    if p.n != q.n:
        raise DimensionError(f'profiles have {p.n} and {q.n} districts')
    gaps = tuple(a - b for a, b in zip(p.prefix_sums[1:], q.prefix_sums[1:]))
    for k, gap in enumerate(gaps, start=1):
        if gap < 0:
            return Refusal(k, f'sum of the {k} largest shares is smaller by {-gap}')
    if gaps[-1] != 0:
        return Refusal(p.n, f'aggregates differ by {gaps[-1]}')
    return MajorizationCertificate(p, q, gaps)


def t_transform(profile: Profile, src: int, dst: int, amount) -> Profile:
    """Move ``amount`` of vote share from district ``src`` to ``dst``.

    The amount is capped so both shares stay in ``[0, 1]``. When ``src``
    is the weaker district the result majorizes the input.
    """
    amount = as_fraction(amount)
    if amount < 0:
        raise DomainError('transfer amount must be nonnegative')
    shares = list(profile.shares)
    amount = min(amount, shares[src], 1 - shares[dst])
    shares[src] -= amount
    shares[dst] += amount
    return Profile(shares)


def t_transform_chain(q: Profile, steps: int, rng_seed=0) -> Profile:
    """Apply ``steps`` random transfers from poorer to richer districts.

    Each transfer moves a random fraction (in hundredths) of the largest
    feasible amount. The output is checked to majorize ``q``.
    """
    if steps < 0:
        raise DomainError('steps must be nonnegative')
    rng = random.Random(rng_seed)
    current = q
    for _ in range(steps):
        if q.n < 2:
            break
        i, j = rng.sample(range(q.n), 2)
        src, dst = (i, j) if current[i] <= current[j] else (j, i)
        room = min(current[src], 1 - current[dst])
        amount = room * Fraction(rng.randint(0, 100), 100)
        if amount:
            current = t_transform(current, src, dst, amount)
    if not majorizes(current, q):
        raise AssertionError('transfer chain lost majorization')
    return current


@dataclass(frozen=True)
class MonotonicityCheck:
    """``slack = value(dominated) - value(dominant)``; holds when nonnegative."""

    slack: Fraction

    @property
    def holds(self) -> bool:
        return self.slack >= 0

    def __bool__(self) -> bool:
        return self.holds


def _difference(later, earlier) -> Fraction:
    if isinstance(later, tuple):
        # equal-mean profiles share agg; the dist components carry the gap
        return later[1] - earlier[1] if later[0] == earlier[0] else (
            later[0] - earlier[0])
    return later - earlier


def _require_certificate(p: Profile, q: Profile) -> None:
    verdict = majorizes(p, q)
    if not verdict:
        raise PreconditionError(f'first profile does not majorize the second: {verdict.reason}')


def mm_holds_fixed_s(p: Profile, q: Profile, seat_total: int, w) -> MonotonicityCheck:
    """Compare misrepresentation at a common seat total when ``p`` majorizes ``q``."""
    _require_certificate(p, q)
    w = as_weight(w)
    return MonotonicityCheck(
        _difference(phi_at(q, seat_total, w), phi_at(p, seat_total, w)))


def optimal_value(profile: Profile, w) -> Fraction:
    w = as_weight(w)
    return min(phi_at(profile, s, w) for s in range(profile.n + 1))


def mm_holds_optimal(p: Profile, q: Profile, w) -> MonotonicityCheck:
    """Compare minimized misrepresentation when ``p`` majorizes ``q``."""
    _require_certificate(p, q)
    return MonotonicityCheck(_difference(optimal_value(q, w), optimal_value(p, w)))


def rule_value(profile: Profile, lam: Weight, w: Weight):
    """Misrepresentation at weight ``w`` of the allocation ``R_lam`` picks."""
    return phi_at(profile, select_seats(profile, lam), as_weight(w))


@dataclass(frozen=True)
class MMViolation:
    """``dominant`` majorizes ``dominated`` yet ``R_lam`` does worse on it at ``w_eval``."""

    lam: Weight
    w_eval: Weight
    dominant: Profile
    dominated: Profile
    certificate: MajorizationCertificate
    dominant_value: object
    dominated_value: object
    switch_point: Fraction
    attempts_used: int


class _Segment:
    """Profiles ``r(u) = (1 - u) m + u top`` with ``m`` the constant-mean profile.

    Ordering the districts by ``top`` orders every ``r(u)`` with ``u > 0``,
    so ``phi(S; lam)`` along the segment is affine in ``u``.
    """

    def __init__(self, top: Profile, lam: Weight):
        self.top = top
        self.lam = lam
        self.mean = top.mean
        a = top.aggregate
        self.lines = []
        for s in range(top.n + 1):
            base = s * self.mean
            slope_prefix = top.prefix_sums[s] - base
            intercept = s + a - 2 * base + lam * abs(a - s)
            self.lines.append((intercept, -2 * slope_prefix))

    def profile(self, u: Fraction) -> Profile:
        return Profile((1 - u) * self.mean + u * x for x in self.top.shares)

    def seats(self, u: Fraction) -> int:
        values = [c + m * u for c, m in self.lines]
        best = min(values)
        return max(s for s, v in enumerate(values) if v == best)

    def switches(self) -> List[Tuple[Fraction, int, int]]:
        """Points ``u`` in ``(0, 1)`` where the selected seat total changes."""
        crossings = set()
        for s, (c1, m1) in enumerate(self.lines):
            for c2, m2 in self.lines[s + 1:]:
                if m1 != m2:
                    u = (c2 - c1) / (m1 - m2)
                    if 0 < u < 1:
                        crossings.add(u)
        out = []
        for u in sorted(crossings):
            lo = max(Fraction(0), u - PROBE_STEP)
            hi = min(Fraction(1), u + PROBE_STEP)
            before, after = self.seats(lo), self.seats(hi)
            if before != after:
                out.append((u, before, after))
        return out


def _probe(segment: _Segment, lam, w_eval, attempt) -> Optional[MMViolation]:
    a = segment.top.aggregate
    for u, before, after in segment.switches():
        # first-order sign of the value gap at the switch; the exact check
        # below is what certifies
        gain = abs(a - after) - abs(a - before)
        if w_eval == INFINITY:
            promising = gain > 0
        else:
            promising = (w_eval - lam) * gain > 0
        if not promising:
            continue
        dominant = segment.profile(min(Fraction(1), u + PROBE_STEP))
        dominated = segment.profile(max(Fraction(0), u - PROBE_STEP))
        cert = majorizes(dominant, dominated)
        if not cert:
            continue
        hi_val = rule_value(dominant, lam, w_eval)
        lo_val = rule_value(dominated, lam, w_eval)
        if hi_val > lo_val:
            return MMViolation(lam, w_eval, dominant, dominated, cert,
                               hi_val, lo_val, u, attempt)
    return None


def _constructive_top(lam: Weight, w_eval: Weight) -> Profile:
    """Segment endpoint whose seat switch moves the wrong way at ``w_eval``.

    For ``lam < w_eval`` the switch from one to two seats moves away from
    PR (aggregate ``1 + f`` with ``f < 1/2``); for ``lam > w_eval`` it moves
    toward PR (aggregate ``3/2 + eta``).
    """
    half = Fraction(1, 2)
    if lam < w_eval:
        f = (lam / (1 + 2 * lam) + half) / 2
        a = 1 + f
        threshold = (1 + lam * (1 - 2 * f)) / 2
        h2 = (threshold + a / 2) / 2
        h1 = a - h2
    else:
        eta = min(Fraction(1, 4), Fraction(1, 10) / (lam + 1))
        a = Fraction(3, 2) + eta
        h1 = min(Fraction(1), a / 2 + Fraction(1, 8))
        h2 = a - h1
    return Profile([h1, h2, 0, 0, 0])


def _random_top(rng: random.Random) -> Optional[Profile]:
    n = rng.randint(3, 7)
    top = Profile(Fraction(rng.randint(0, 100), 100) for _ in range(n))
    a2 = 2 * top.aggregate
    if a2.denominator == 1 and a2.numerator % 2 == 1:
        return None
    return top


def mm_violation_search(
    lam, w_eval, attempts: int = 10_000, rng_seed=0
) -> Optional[MMViolation]:
    """Find ``p`` majorizing ``q`` with ``R_lam`` worse on ``p`` at ``w_eval``.

    The search walks segments from a constant-mean profile toward a more
    concentrated one. Along such a segment later profiles majorize earlier
    ones, and each seat total's misrepresentation is affine, so the points
    where ``R_lam`` switches seat totals are computed exactly. Profiles a
    distance ``2**-40`` on either side of a switch form the candidate pair,
    which is certified by :func:`majorizes` and exact evaluation.

    A purpose-built segment is tried first; random segments follow, each
    drawn from a generator seeded by ``(rng_seed, attempt)``. Returns
    ``None`` when nothing certifies, which is guaranteed when
    ``lam == w_eval`` and when ``lam`` is infinite.
    """
    lam, w_eval = as_weight(lam), as_weight(w_eval)
    if lam == INFINITY:
        # PR's seat total depends on the mean alone, so the fixed-seat
        # comparison already settles every pair
        return None
    if lam != w_eval:
        found = _probe(_Segment(_constructive_top(lam, w_eval), lam), lam, w_eval, 0)
        if found:
            return found
    for attempt in range(1, attempts + 1):
        rng = random.Random(f'{rng_seed}:{attempt}')
        top = _random_top(rng)
        if top is None:
            continue
        found = _probe(_Segment(top, lam), lam, w_eval, attempt)
        if found:
            return found
    return None
