import json

import pytest
from hypothesis import given, settings, strategies as st

from wittweyl.balgebra import BAlgebraCtx
from wittweyl.exactnum import QQ, ZZ, ContextMismatch, make_prime_field
from wittweyl.polyring import (IndexSet, MissingVariable, MultiPoly, deg_x, deg_y, ev,
                               eval_ordered, lex_compare, lex_key, poly_add, poly_mul,
                               poly_neg)

S12 = IndexSet.upto(2)


def X(i, e=1, ring=ZZ, xset=S12, yset=S12):
    return MultiPoly.xvar(ring, xset, yset, i, e)


def Y(j, e=1, ring=ZZ, xset=S12, yset=S12):
    return MultiPoly.yvar(ring, xset, yset, j, e)


def _reference_compare(i: dict, j: dict) -> int:
    # scan from the largest position downwards
    for n in sorted(set(i) | set(j), reverse=True):
        a, b = i.get(n, 0), j.get(n, 0)
        if a != b:
            return -1 if a < b else 1
    return 0


def test_lex_compare_examples():
    assert lex_compare(ev({}), ev({})) == 0
    assert lex_compare(ev({1: 2, 2: 1}), ev({1: 2, 2: 3})) == -1
    # the largest differing position decides: X_2 outranks any power of X_1
    assert lex_compare(ev({1: 1}), ev({2: 5})) == -1
    assert lex_compare(ev({1: 50}), ev({2: 1})) == -1


def test_deg_examples():
    zero = MultiPoly(ZZ, S12, S12)
    assert deg_x(zero) is None and deg_y(zero) is None
    assert deg_x(X(1, 2) * Y(1) + X(2)) == ev({2: 1})
    assert deg_y(X(1, 3)) == ()


exps = st.dictionaries(st.integers(1, 5), st.integers(1, 4), max_size=4)


@settings(max_examples=200, deadline=None)
@given(i=exps, j=exps, k=exps)
def test_lex_is_total_order(i, j, k):
    a, b, c = ev(i), ev(j), ev(k)
    assert lex_compare(a, b) == _reference_compare(i, j)
    assert lex_compare(a, b) == -lex_compare(b, a)
    assert (lex_compare(a, b) == 0) == (a == b)
    if lex_compare(a, b) <= 0 and lex_compare(b, c) <= 0:
        assert lex_compare(a, c) <= 0


@given(st.lists(exps, min_size=1, max_size=8))
def test_unique_maximum(vectors):
    evs = [ev(v) for v in vectors]
    top = max(evs, key=lex_key)
    assert all(lex_compare(v, top) <= 0 for v in evs)
    assert sum(1 for v in evs if lex_compare(v, top) == 0) == evs.count(top)


def test_arithmetic_examples():
    assert ((X(1) + 1) + (-1)).terms == X(1).terms
    assert (X(1) * Y(1)).terms == {(ev({1: 1}), ev({1: 1})): 1}
    F2 = make_prime_field(2)
    sq = poly_mul(X(1, ring=F2) + Y(1, ring=F2), X(1, ring=F2) + Y(1, ring=F2))
    assert sq.terms == (X(1, 2, ring=F2) + Y(1, 2, ring=F2)).terms
    assert poly_add(X(1), poly_neg(X(1))).is_zero()
    with pytest.raises(ContextMismatch):
        X(1) + X(1, ring=QQ)


polys = st.dictionaries(
    st.tuples(exps.map(ev), exps.map(ev)), st.integers(-5, 5).filter(bool), max_size=4
).map(lambda t: MultiPoly(ZZ, IndexSet.upto(5), IndexSet.upto(5), t))


@settings(max_examples=100, deadline=None)
@given(p=polys, q=polys)
def test_degree_is_additive_over_domain(p, q):
    if p.is_zero() or q.is_zero():
        assert deg_x(p * q) is None
        return
    expected = dict(deg_x(p))
    for i, e in deg_x(q):
        expected[i] = expected.get(i, 0) + e
    assert deg_x(p * q) == ev(expected)


def test_eval_ordered_examples():
    B = BAlgebraCtx.universal(ZZ, IndexSet.upto(1))
    one = MultiPoly.const(ZZ, IndexSet.upto(1), IndexSet.upto(1), 1)
    assert eval_ordered(one, {}, {}, B.scalar) == B.one
    xy = MultiPoly.xvar(ZZ, B.P, B.Q, 1) * MultiPoly.yvar(ZZ, B.P, B.Q, 1)
    assert eval_ordered(xy, B.xs(), B.ys(), B.scalar) == B.x(1) * B.y(1)
    assert eval_ordered(MultiPoly.xvar(ZZ, B.P, B.Q, 1) + 1, {1: B.zero}, {}, B.scalar) == B.one
    with pytest.raises(MissingVariable):
        eval_ordered(xy, B.xs(), {}, B.scalar)


@settings(max_examples=40, deadline=None)
@given(p=polys, q=polys)
def test_eval_ordered_linear_and_multiplicative(p, q):
    B = BAlgebraCtx.universal(ZZ, IndexSet.upto(5))
    xonly = MultiPoly(ZZ, p.xset, p.yset, {(xe, ()): c for (xe, _), c in p.terms.items()})
    yonly = MultiPoly(ZZ, q.xset, q.yset, {((), ye): c for (_, ye), c in q.terms.items()})
    ev_ = lambda f: eval_ordered(f, B.xs(), B.ys(), B.scalar)  # noqa: E731
    assert ev_(p + q) == ev_(p) + ev_(q)
    assert ev_(xonly * yonly) == ev_(xonly) * ev_(yonly)


@settings(max_examples=60, deadline=None)
@given(p=polys)
def test_json_round_trip(p):
    text = json.dumps(p.to_json())
    back = MultiPoly.from_json(json.loads(text))
    assert back.terms == p.terms
    assert json.dumps(back.to_json()) == text


def test_json_typical_labels():
    s = IndexSet.typical(2, 2)
    poly = MultiPoly.xvar(ZZ, s, s, 2) * MultiPoly.yvar(ZZ, s, s, 1) + 1
    data = poly.to_json()
    assert data["ptypical"] == 2 and data["xvars"] == [0, 1]
    assert data["terms"][0] == {"xexp": {"1": 1}, "yexp": {"0": 1}, "coef": "1"}
    assert MultiPoly.from_json(data).terms == poly.terms


def test_index_sets():
    with pytest.raises(ValueError):
        IndexSet.universal([1, 4])
    assert IndexSet.universal([1, 2, 4]).positions == (1, 2, 4)
    T = IndexSet.typical(3, 3)
    assert T.positions == (1, 3, 9) and T.labels() == [0, 1, 2] and T.position(2) == 9
    assert IndexSet.upto(6).divided_by(2).positions == (1, 2, 3)
