"""Slow, obviously-correct reference computations used to check the library.

Nothing here uses the closed forms under test. Exhaustive searches scale
every share to a common integer denominator so that 2**14 allocations stay
fast.
"""

import math
from fractions import Fraction
from itertools import combinations

from misrep.core import INFINITY, Allocation, Profile


def summed_dist(profile, winners):
    """District misrepresentation by direct summation over districts."""
    return sum(
        ((1 - p) if d in winners else p for d, p in enumerate(profile.shares)),
        Fraction(0),
    )


def summed_phi(profile, winners, w):
    dist = summed_dist(profile, winners)
    agg = abs(profile.aggregate - len(winners))
    return (agg, dist) if w == INFINITY else dist + w * agg


def best_subset_dist(profile, seat_total):
    """Least district misrepresentation over all subsets of one size."""
    return min(
        summed_dist(profile, set(c)) for c in combinations(range(profile.n), seat_total)
    )


def _scaled(profile):
    lcm = math.lcm(*(s.denominator for s in profile.shares))
    return lcm, [int(s * lcm) for s in profile.shares]


def brute_force_minimizers(profile, w):
    """Winner sets of all allocations minimizing total misrepresentation.

    Values are scaled by ``lcm * w.denominator`` and accumulated over
    bitmasks, so each of the ``2**N`` allocations costs one addition.
    """
    n = profile.n
    lcm, P = _scaled(profile)
    A = sum(P)
    # choosing district d changes the dist sum by lcm - 2 P_d
    step = [lcm - 2 * x for x in P]
    size = 1 << n
    dist = [0] * size
    seats = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        d = low.bit_length() - 1
        prev = mask ^ low
        dist[mask] = dist[prev] + step[d]
        seats[mask] = seats[prev] + 1
    if w == INFINITY:
        values = [(abs(A - seats[m] * lcm), A + dist[m]) for m in range(size)]
    else:
        wn, wd = Fraction(w).numerator, Fraction(w).denominator
        values = [wd * (A + dist[m]) + wn * abs(A - seats[m] * lcm) for m in range(size)]
    best = min(values)
    return {
        frozenset(d for d in range(n) if m >> d & 1)
        for m in range(size) if values[m] == best
    }


def sweep_optimal_seats(profile, w):
    """Optimal seat totals by evaluating every top-S allocation by summation."""
    order = sorted(range(profile.n), key=lambda d: (-profile.shares[d], d))
    values = [summed_phi(profile, set(order[:s]), w) for s in range(profile.n + 1)]
    best = min(values)
    return {s for s, v in enumerate(values) if v == best}


def dominance_pareto(pairs):
    """Pareto-minimal elements of a set of (dist, agg) pairs."""
    pairs = set(pairs)
    return {
        p for p in pairs
        if not any(q[0] <= p[0] and q[1] <= p[1] and q != p for q in pairs)
    }


def all_pairs(profile):
    out = set()
    for mask in range(1 << profile.n):
        winners = {d for d in range(profile.n) if mask >> d & 1}
        out.add((summed_dist(profile, winners), abs(profile.aggregate - len(winners))))
    return out


def weight_grid_switches(profile, hi=Fraction(2), steps=2000):
    """Weights on a fine grid where the swept optimum changes, as brackets."""
    out = []
    prev = max(sweep_optimal_seats(profile, Fraction(0)))
    for i in range(1, steps + 1):
        w = hi * i / steps
        cur = max(sweep_optimal_seats(profile, w))
        if cur != prev:
            out.append((hi * (i - 1) / steps, w, prev, cur))
            prev = cur
    return out
