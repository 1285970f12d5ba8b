"""Feasible (dist, agg) pairs and their Pareto frontier.

Every allocation yields a pair of misrepresentation values. Only top-S
allocations can be Pareto-efficient, and a top-S point is efficient exactly
when some positive weight makes its seat total optimal. Consecutive frontier
points are joined by segments whose slope in the (dist, agg) plane is
``-1 / w`` at the weight where the optimum switches between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from misrep.core import (
    Profile,
    agg_misrep,
    dist_at,
    dist_misrep,
    iter_allocations,
)
from misrep.errors import ResourceError
from misrep.optimizer import WeightInterval, weight_interval

#: Largest district count accepted by full enumeration.
FULL_ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class FrontierPoint:
    dist: Fraction
    agg: Fraction
    seat_total: int
    is_top_s: bool
    is_pareto: bool = False
    supporting_weights: Optional[WeightInterval] = None


def _mark_pareto(points: List[FrontierPoint]) -> List[FrontierPoint]:
    """Flag points no other point weakly beats on both measures (strictly on one)."""
    marked = []
    for pt in points:
        dominated = any(
            o.dist <= pt.dist and o.agg <= pt.agg
            and (o.dist < pt.dist or o.agg < pt.agg)
            for o in points
        )
        marked.append(FrontierPoint(
            pt.dist, pt.agg, pt.seat_total, pt.is_top_s,
            not dominated, pt.supporting_weights,
        ))
    return marked


def enumerate_points(profile: Profile, full: bool = False) -> List[FrontierPoint]:
    """Misrepresentation pairs, sorted by ``(agg, dist, seat_total)``.

    Compact mode returns the ``N + 1`` top-S points. Full mode evaluates all
    ``2**N`` allocations and merges identical pairs, keeping the smallest
    seat total as the representative.
    """
    if not full:
        points = [
            FrontierPoint(
                dist_at(profile, s), agg_misrep(profile, s), s, True,
                supporting_weights=weight_interval(profile, s),
            )
            for s in range(profile.n + 1)
        ]
    else:
        if profile.n > FULL_ENUMERATION_LIMIT:
            raise ResourceError(
                f'full enumeration of {profile.n} districts needs '
                f'2**{profile.n} allocations (limit {FULL_ENUMERATION_LIMIT}); '
                'use compact mode, which is exact for the frontier'
            )
        seen = {}
        for alloc in iter_allocations(profile.n):
            s = alloc.seat_total
            key = (dist_misrep(profile, alloc), agg_misrep(profile, s))
            if key not in seen or s < seen[key]:
                seen[key] = s
        points = []
        for (dist, agg), s in seen.items():
            top = dist == dist_at(profile, s)
            points.append(FrontierPoint(
                dist, agg, s, top,
                supporting_weights=weight_interval(profile, s) if top else None,
            ))
    points.sort(key=lambda pt: (pt.agg, pt.dist, pt.seat_total))
    return _mark_pareto(points)


def pareto_points(profile: Profile, full: bool = False) -> List[FrontierPoint]:
    return [pt for pt in enumerate_points(profile, full) if pt.is_pareto]


def frontier_slopes(profile: Profile) -> List[Tuple[Fraction, Fraction]]:
    """``(w_switch, slope)`` for each segment joining adjacent frontier points.

    The slope is the change in agg per unit change in dist, which equals
    ``-1 / w_switch``; this is checked exactly and a mismatch raises
    :class:`AssertionError`.
    """
    frontier = sorted(pareto_points(profile), key=lambda pt: pt.dist)
    out = []
    for left, right in zip(frontier, frontier[1:]):
        slope = (right.agg - left.agg) / (right.dist - left.dist)
        # the lower-dist point is optimal at low weights, so its interval
        # ends where the next one begins
        w_switch = left.supporting_weights.hi
        if w_switch != right.supporting_weights.lo or slope != -1 / w_switch:
            raise AssertionError(
                f'segment slope {slope} differs from -1/{w_switch}'
            )
        out.append((w_switch, slope))
    return out
