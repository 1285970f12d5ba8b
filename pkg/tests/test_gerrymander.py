from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import GERRY6
from misrep.core import Profile
from misrep.errors import DomainError, ResourceError
from misrep.gerrymander import (
    INFEASIBLE,
    GerryTarget,
    cost_monotonicity_check,
    gerry_cost,
    gerry_cost_oracle,
    half_l1,
)
from misrep.optimizer import select_seats

F = Fraction


def test_half_l1_segment_property():
    p, q = GERRY6, Profile(['0.5'] * 6)
    assert half_l1(p, p) == 0
    for theta in (F(1, 4), F(1, 2), F(1)):
        mid = Profile((1 - theta) * x + theta * y for x, y in zip(p, q))
        assert half_l1(p, mid) == theta * half_l1(p, q)


@pytest.mark.parametrize('w,cost', [('0', '0.4'), ('0.1', '0.45'), ('0.2', '0.5'), ('0.3', '0.6')])
def test_fixture_costs(w, cost):
    res = gerry_cost(GerryTarget(GERRY6, w, 4))
    assert res.cost == F(cost)


def test_cost_at_0_3_needs_two_lifts():
    # T = 0.65 lifts both p_(3) = 0.6 and p_(4) = 0.1, and k T = a leaves
    # exactly one feasible profile
    res = gerry_cost(GerryTarget(GERRY6, '0.3', 4))
    assert res.witness == Profile(['0.65'] * 4 + [0, 0])


def test_witness_is_valid():
    for w in ('0', '0.1', '0.2', '0.3'):
        res = gerry_cost(GerryTarget(GERRY6, w, 4))
        r = res.witness
        assert r.aggregate == GERRY6.aggregate
        assert all(0 <= x <= 1 for x in r)
        assert select_seats(r, F(w)) >= 4
        assert half_l1(GERRY6, r) == res.cost


def test_infeasible_targets():
    assert gerry_cost(GerryTarget(GERRY6, '1.5', 4)) is INFEASIBLE
    assert gerry_cost(GerryTarget(GERRY6, '0.4', 4)) is INFEASIBLE
    assert gerry_cost_oracle(GerryTarget(GERRY6, '0.4', 4), 50) is INFEASIBLE


def test_preconditions_name_the_inequality():
    with pytest.raises(DomainError, match=r'k > \|R\(p\)\|'):
        gerry_cost(GerryTarget(GERRY6, '0', 3))
    with pytest.raises(DomainError, match=r'\|R\(p\)\| > a'):
        gerry_cost(GerryTarget(Profile(['0.9', '0.2', '0.2']), '0', 2))
    with pytest.raises(DomainError, match='finite'):
        gerry_cost(GerryTarget(GERRY6, 'inf', 4))


def test_base_weight_decouples_the_precondition():
    # FPTP gives this profile 3 seats for 2.1 votes, but PR gives only 2
    p = Profile(['0.6', '0.6', '0.6', '0.1', '0.1', '0.1'])
    assert gerry_cost(GerryTarget(p, '0', 4)) is not None
    with pytest.raises(DomainError, match=r'\|R\(p\)\| > a'):
        gerry_cost(GerryTarget(p, '0', 4, base_weight='inf'))


def test_curve():
    curve = cost_monotonicity_check(GERRY6, 4, ['0', '0.1', '0.2', '0.3'])
    assert [c for _, c in curve] == [F('0.4'), F('0.45'), F('0.5'), F('0.6')]
    assert cost_monotonicity_check(GERRY6, 4, ['0.1']) == [(F('0.1'), F('0.45'))]


def test_curve_truncates_at_infeasibility():
    curve = cost_monotonicity_check(GERRY6, 4, ['0', '0.3', '0.35', '0.5'])
    assert [w for w, _ in curve] == [0, F('0.3')]


def test_curve_rejects_unordered_weights():
    with pytest.raises(DomainError):
        cost_monotonicity_check(GERRY6, 4, ['0.2', '0.1'])


@pytest.mark.parametrize('w', ['0', '0.1', '0.2', '0.3'])
def test_oracle_agrees(w):
    target = GerryTarget(GERRY6, w, 4)
    closed = gerry_cost(target).cost
    oracle = gerry_cost_oracle(target, 100)
    assert closed <= oracle <= closed + F(6, 100)


def test_oracle_guard():
    with pytest.raises(ResourceError):
        gerry_cost_oracle(GerryTarget(Profile(['0.9'] * 6 + ['0.1']), '0', 7), 10)


@settings(max_examples=25)
@given(st.lists(st.integers(0, 20), min_size=3, max_size=5), st.integers(0, 5), st.data())
def test_oracle_bounds_closed_form(ks, wk, data):
    p = Profile(F(k, 20) for k in ks)
    w = F(wk, 10)
    seats = select_seats(p, w)
    assume(seats > p.aggregate and seats < p.n)
    k = data.draw(st.integers(seats + 1, p.n))
    target = GerryTarget(p, w, k)
    closed, oracle = gerry_cost(target), gerry_cost_oracle(target, 20)
    if closed is INFEASIBLE:
        assert oracle is INFEASIBLE
    elif oracle is not INFEASIBLE:
        assert closed.cost <= oracle <= closed.cost + F(p.n, 20)


@settings(max_examples=40)
@given(st.lists(st.integers(0, 100), min_size=3, max_size=8), st.data())
def test_costs_strictly_increase(ks, data):
    p = Profile(F(k, 100) for k in ks)
    seats = select_seats(p, 0)
    assume(p.aggregate < seats < p.n)
    k = data.draw(st.integers(seats + 1, p.n))
    ws = [F(i, 20) for i in range(8)]
    curve = cost_monotonicity_check(p, k, ws, base_weight=0)
    assert all(b[1] > a[1] for a, b in zip(curve, curve[1:]))
