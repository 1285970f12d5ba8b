"""The cost of gerrymandering a rule into extra seats.

A gerrymanderer redraws districts, which reshuffles vote shares while
keeping the statewide mean fixed. With the half-L1 cost
``c(p, r) = 1/2 * sum |p_d - r_d|`` (the vote mass moved between
districts), the cheapest way to make ``R_w`` award at least ``k`` seats is
to lift the ``k`` strongest districts to ``T = (1 + w) / 2`` and pay for
it by draining the weakest ones:

    C(w; p, k) = sum over the k largest shares of max(0, T - p_(i)).

This is strictly increasing in ``w``, so extra seats cost more when the
rule puts more weight on statewide proportionality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from misrep.core import INFINITY, Profile, Weight, as_weight
from misrep.errors import DomainError, PropertyViolation, ResourceError
from misrep.optimizer import select_seats


class _Infeasible:
    """Marker for seat targets no mean-preserving profile reaches."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'INFEASIBLE'

    __str__ = __repr__


INFEASIBLE = _Infeasible()


def half_l1(p: Profile, r: Profile) -> Fraction:
    """Vote mass moved between two profiles of the same state."""
    if p.n != r.n:
        raise DomainError('profiles differ in district count')
    return sum((abs(x - y) for x, y in zip(p.shares, r.shares)), Fraction(0)) / 2


@dataclass(frozen=True)
class GerryTarget:
    """Reach at least ``k`` seats under ``R_weight`` starting from ``baseline``.

    ``base_weight`` is the weight used to check that Party A is already
    overrepresented at the baseline; it defaults to ``weight``.
    """

    baseline: Profile
    weight: Weight
    k: int
    base_weight: Optional[Weight] = None

    def __post_init__(self):
        object.__setattr__(self, 'weight', as_weight(self.weight))
        if self.base_weight is not None:
            object.__setattr__(self, 'base_weight', as_weight(self.base_weight))

    @property
    def threshold(self) -> Fraction:
        return (1 + self.weight) / 2

    def validate(self) -> None:
        if self.weight == INFINITY:
            raise DomainError('weight must be finite: PR cannot be gerrymandered')
        w0 = self.weight if self.base_weight is None else self.base_weight
        current = select_seats(self.baseline, w0)
        a = self.baseline.aggregate
        if not self.k > current:
            raise DomainError(
                f'k > |R(p)| fails: target {self.k}, baseline seats {current}')
        if not current > a:
            raise DomainError(
                f'|R(p)| > a fails: baseline seats {current}, aggregate {a}')
        if self.k > self.baseline.n:
            raise DomainError(f'k <= N fails: {self.k} > {self.baseline.n}')


@dataclass(frozen=True)
class GerryResult:
    cost: Fraction
    witness: Profile
    threshold: Fraction


def gerry_cost(target: GerryTarget):
    """Minimal half-L1 cost to reach the target, with a witness profile.

    Returns :data:`INFEASIBLE` when ``T > 1`` or ``k * T`` exceeds the
    aggregate vote. The witness is re-checked against the rule before it is
    returned.
    """
    target.validate()
    p, k, t = target.baseline, target.k, target.threshold
    if t > 1 or k * t > p.aggregate:
        return INFEASIBLE

    order = p.order
    shares = list(p.shares)
    cost = Fraction(0)
    for d in order[:k]:
        if shares[d] < t:
            cost += t - shares[d]
            shares[d] = t
    owed = cost
    # weakest districts first, then any surplus above T among the boosted
    for d in list(reversed(order[k:])) + list(reversed(order[:k])):
        if not owed:
            break
        floor = 0 if d in order[k:] else t
        take = min(owed, shares[d] - floor)
        if take > 0:
            shares[d] -= take
            owed -= take
    witness = Profile(shares)

    if (witness.aggregate != p.aggregate
            or select_seats(witness, target.weight) < k
            or half_l1(p, witness) != cost):
        raise PropertyViolation(f'witness for {target} failed verification')
    return GerryResult(cost, witness, t)


def cost_monotonicity_check(
    baseline: Profile, k: int, weights, base_weight=None
) -> List[Tuple[Weight, Fraction]]:
    """Cost curve over increasing weights, truncated at the first infeasible one.

    Raises :class:`PropertyViolation` if the curve fails to increase strictly.
    """
    ws = [as_weight(w) for w in weights]
    if any(b <= a for a, b in zip(ws, ws[1:])):
        raise DomainError('weights must be strictly increasing')
    curve = []
    for w in ws:
        result = gerry_cost(GerryTarget(baseline, w, k, base_weight))
        if result is INFEASIBLE:
            break
        if curve and result.cost <= curve[-1][1]:
            raise PropertyViolation(
                f'cost {result.cost} at w={w} does not exceed '
                f'{curve[-1][1]} at w={curve[-1][0]}')
        curve.append((w, result.cost))
    return curve


#: Largest district count the grid oracle accepts.
ORACLE_MAX_DISTRICTS = 6
ORACLE_MAX_RESOLUTION = 1000


def gerry_cost_oracle(target: GerryTarget, grid_resolution: int = 100):
    """Least cost over mean-preserving grid profiles that reach the target.

    Candidate profiles have coordinates on the grid ``j / grid_resolution``
    except the smallest, which absorbs whatever keeps the aggregate fixed.
    Each is matched to the baseline in sorted order (the cheapest matching
    for an L1 cost), its seat total is found by minimizing over every seat
    total, and a depth-first branch and bound keeps the search small. The
    answer bounds the true minimum from above, within ``N /
    grid_resolution``. Returns :data:`INFEASIBLE` if no grid profile reaches
    the target.
    """
    target.validate()
    p = target.baseline
    n, res = p.n, grid_resolution
    if n > ORACLE_MAX_DISTRICTS or not 1 <= res <= ORACLE_MAX_RESOLUTION:
        raise ResourceError(
            f'oracle limited to N <= {ORACLE_MAX_DISTRICTS} and resolution '
            f'1..{ORACLE_MAX_RESOLUTION}')

    # integer scaling: one unit is 1 / (res * lcm) of a share
    lcm = math.lcm(*(s.denominator for s in p.shares))
    unit = res * lcm
    P = [int(s * unit) for s in p.sorted_desc]
    total = sum(P)
    top = unit
    w = target.weight
    wn, wd = w.numerator, w.denominator
    k = target.k

    def seats(r):
        prefix, best, best_s = 0, None, 0
        for s in range(n + 1):
            if s:
                prefix += r[s - 1]
            value = wd * (s * unit + total - 2 * prefix) + wn * abs(total - s * unit)
            if best is None or value <= best:
                best, best_s = value, s
        return best_s

    # Phi is convex in S (sorted district differences increase and |a - S|
    # is convex), so reaching k seats needs phi(k) <= phi(k - 1); that pins
    # a floor under the k largest coordinates
    inc = abs(total - k * unit) - abs(total - (k - 1) * unit)

    def reaches_floor(v):
        return wd * (unit - 2 * v) + wn * inc <= 0

    best = [None]
    chosen = []

    def dfs(j, upper, spent, drift):
        # spent = sum |r_i - P_i| so far, drift = sum (r_i - P_i)
        remaining = total - sum(chosen)
        if j == n - 1:
            last = remaining
            if not 0 <= last <= upper or (j < k and not reaches_floor(last)):
                return
            cost2 = spent + abs(last - P[j])
            if best[0] is not None and cost2 >= best[0]:
                return
            if seats(chosen + [last]) >= k:
                best[0] = cost2
            return
        slots = n - j
        lo_g = -(-max(0, remaining - (slots - 1) * upper) // lcm)
        hi_g = min(upper, remaining) // lcm
        cands = sorted(range(lo_g, hi_g + 1), key=lambda g: abs(g * lcm - P[j]))
        for g in cands:
            v = g * lcm
            step = abs(v - P[j])
            bound = spent + step + abs(drift + v - P[j])
            if best[0] is not None and spent + step >= best[0]:
                break
            if best[0] is not None and bound >= best[0]:
                continue
            if remaining - v > (slots - 1) * v:
                continue
            if j < k and not reaches_floor(v):
                continue
            chosen.append(v)
            dfs(j + 1, v, spent + step, drift + v - P[j])
            chosen.pop()

    dfs(0, top, 0, 0)
    if best[0] is None:
        return INFEASIBLE
    return Fraction(best[0], 2 * unit)
