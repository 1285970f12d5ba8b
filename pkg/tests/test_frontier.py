from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import THREE_STEP, TWO_STEP, profiles
from misrep.core import INFINITY, Profile
from misrep.errors import ResourceError
from misrep.frontier import enumerate_points, frontier_slopes, pareto_points
from oracles import all_pairs, dominance_pareto

F = Fraction


def test_two_district_split():
    pts = enumerate_points(Profile([1, 0]), full=True)
    # four allocations, two of which share (dist, agg) = (1, 1)
    assert {(p.dist, p.agg) for p in pts} == {(0, 0), (1, 1), (2, 0)}
    pareto = [p for p in pts if p.is_pareto]
    assert [(p.dist, p.agg, p.seat_total, p.is_top_s) for p in pareto] == [(0, 0, 1, True)]


def test_duplicates_keep_the_smallest_seat_total():
    pts = enumerate_points(Profile([1, 0]), full=True)
    merged = [p for p in pts if (p.dist, p.agg) == (1, 1)]
    assert [p.seat_total for p in merged] == [0]


def test_right_profile_compact():
    pts = enumerate_points(TWO_STEP)
    assert len(pts) == 13
    assert sorted(p.seat_total for p in pts if p.is_pareto) == [4, 5, 6]
    full = {(p.dist, p.agg) for p in pareto_points(TWO_STEP, full=True)}
    assert full == {(p.dist, p.agg) for p in pts if p.is_pareto}


def test_full_enumeration_guard():
    with pytest.raises(ResourceError, match='compact'):
        enumerate_points(Profile([0] * 21), full=True)


def test_slopes_left_profile():
    slopes = dict(frontier_slopes(THREE_STEP))
    assert slopes[F('0.02')] == -50
    assert slopes[F('0.04')] == -25
    assert slopes[F('0.03')] == F(-100, 3)


def test_slopes_empty_when_fptp_is_proportional():
    assert frontier_slopes(Profile(['0.62', '0.55', '0.53', '0.51', '0.48', '0.47', '0.45', '0.39'])) == []


@settings(max_examples=40)
@given(profiles(max_size=9))
def test_pareto_points_are_top_s_with_positive_support(p):
    pts = enumerate_points(p, full=True)
    oracle = dominance_pareto(all_pairs(p))
    assert {(x.dist, x.agg) for x in pts if x.is_pareto} == oracle
    for x in pts:
        if x.is_pareto:
            assert x.is_top_s
        if x.is_top_s:
            assert x.is_pareto == x.supporting_weights.has_positive()


@given(profiles(max_size=12))
def test_frontier_is_convex(p):
    # walking from the FPTP end toward PR, each unit of agg removed costs at
    # least as much dist as the one before; the ratio is the switching weight
    frontier = sorted(pareto_points(p), key=lambda x: -x.agg)
    ratios = [
        (b.dist - a.dist) / (a.agg - b.agg)
        for a, b in zip(frontier, frontier[1:])
    ]
    assert ratios == sorted(ratios)
    assert ratios == [w for w, _ in frontier_slopes(p)]
    for w, slope in frontier_slopes(p):
        assert slope == -1 / w
