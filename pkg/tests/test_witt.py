from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from wittweyl.exactnum import QQ, ZZ, ContextMismatch, make_fraction_field, make_prime_field
from wittweyl.polyring import IndexSet, NotASubset, divisors, ev
from wittweyl.witt import (WittVector, frobenius, frobenius_poly, ghost, ghost_v_inverse_check,
                           truncate, v_inverse, verschiebung, witt_add, witt_int, witt_mul,
                           witt_neg, witt_prod_poly, witt_sum_poly)

# independent oracle: ghost equations solved with sympy ----------------------------

XS = sp.symbols("X1:13")
YS = sp.symbols("Y1:13")


def _ghost(vals, n):
    return sum(d * vals[d] ** (n // d) for d in divisors(n))


def _solve(n, combine):
    """Universal Witt polynomial at n.

    Solved from ghost_n(out) = combine(ghost_n(X), ghost_n(Y)).
    """
    xs = {d: XS[d - 1] for d in range(1, n + 1)}
    ys = {d: YS[d - 1] for d in range(1, n + 1)}
    out = {}
    for m in divisors(n):
        lower = sum(d * out[d] ** (m // d) for d in divisors(m) if d < m)
        out[m] = sp.expand((combine(_ghost(xs, m), _ghost(ys, m)) - lower) / m)
    return out[n]


def _as_sympy(poly):
    expr = 0
    for (xe, ye), c in poly.terms.items():
        term = sp.Integer(int(c))
        for i, e in xe:
            term *= XS[i - 1] ** e
        for j, e in ye:
            term *= YS[j - 1] ** e
        expr += term
    return sp.expand(expr)


@pytest.mark.parametrize("n", range(1, 7))
def test_sum_and_product_polynomials_match_ghost_solve(n):
    assert _as_sympy(witt_sum_poly(n)) == _solve(n, lambda a, b: a + b)
    assert _as_sympy(witt_prod_poly(n)) == _solve(n, lambda a, b: a * b)


def test_small_witt_polynomials():
    assert witt_sum_poly(1).terms == {(ev({1: 1}), ()): 1, ((), ev({1: 1})): 1}
    assert witt_prod_poly(1).terms == {(ev({1: 1}), ev({1: 1})): 1}
    # 2-typical position 1: over Z the cross term carries a minus sign
    s1 = witt_sum_poly(1, p=2)
    assert s1.to_str() == "X1 - X0*Y0 + Y1"
    assert _as_sympy(witt_sum_poly(2)) == XS[1] + YS[1] - XS[0] * YS[0]


def test_typical_sum_mod_two():
    F2 = make_prime_field(2)
    T = IndexSet.typical(2, 2)
    x = WittVector.from_list(T, F2, [1, 1])
    y = WittVector.from_list(T, F2, [1, 0])
    # (x0 + y0, x1 + y1 + x0*y0) over F_2
    assert witt_add(x, y).as_list() == [0, 0]


def test_ghost_examples():
    x = WittVector.from_list(IndexSet.upto(2), ZZ, [3, 5])
    assert ghost(x, 1) == 3
    assert ghost(x, 2) == 3 ** 2 + 2 * 5
    t = WittVector.from_list(IndexSet.typical(2, 2), ZZ, [3, 5])
    assert ghost(t, 2) == 3 ** 2 + 2 * 5


# randomized ring axioms ----------------------------------------------------------


def _vectors(iset, ring, lo, hi):
    return st.lists(st.integers(lo, hi), min_size=len(iset), max_size=len(iset)).map(
        lambda v: WittVector.from_list(iset, ring, [ring.from_int(c) for c in v]))


D6 = IndexSet.upto(6)
CASES = [
    ("universal D(6) over Z", D6, ZZ, -3, 3),
    ("2-typical length 3 over F_2", IndexSet.typical(2, 3), make_prime_field(2), 0, 1),
    ("3-typical length 3 over F_3", IndexSet.typical(3, 3), make_prime_field(3), 0, 2),
]


@pytest.mark.parametrize("name,iset,ring,lo,hi", CASES, ids=[c[0] for c in CASES])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_witt_ring_axioms(name, iset, ring, lo, hi, data):
    gen = _vectors(iset, ring, lo, hi)
    x, y, z = data.draw(gen), data.draw(gen), data.draw(gen)
    zero, one = WittVector.zero(iset, ring), WittVector.one(iset, ring)
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + zero == x and x * one == x
    assert x + witt_neg(x) == zero


@settings(max_examples=30, deadline=None)
@given(x=_vectors(D6, QQ, -4, 4), y=_vectors(D6, QQ, -4, 4))
def test_ghost_is_a_ring_homomorphism(x, y):
    for n in D6:
        assert ghost(x + y, n) == ghost(x, n) + ghost(y, n)
        assert ghost(x * y, n) == ghost(x, n) * ghost(y, n)


@settings(max_examples=20, deadline=None)
@given(x=_vectors(D6, ZZ, -3, 3), y=_vectors(D6, ZZ, -3, 3))
def test_truncation_commutes_with_addition(x, y):
    q = IndexSet.universal([1, 2, 4])
    assert truncate(x + y, q) == truncate(x, q) + truncate(y, q)
    assert truncate(x * y, q) == truncate(x, q) * truncate(y, q)


def test_truncation_errors_and_identity():
    x = WittVector.from_list(D6, ZZ, range(1, 7))
    assert truncate(x, D6) == x
    with pytest.raises(NotASubset):
        truncate(x, IndexSet.upto(8))
    with pytest.raises(ContextMismatch):
        witt_add(x, WittVector.from_list(IndexSet.upto(2), ZZ, [1, 2]))


# Frobenius and Verschiebung -------------------------------------------------------


def test_frobenius_char_p_is_entrywise_power():
    F3 = make_prime_field(3)
    x = WittVector.from_list(IndexSet.typical(3, 3), F3, [2, 1, 2])
    assert frobenius(x, 3).as_list() == [2, 1, 2]  # Fermat: c^3 = c in F_3
    K = make_fraction_field(F3, ["t"])
    t = K.gen("t")
    v = WittVector.from_list(IndexSet.typical(3, 2), K, [t, K.one])
    assert frobenius(v, 3).as_list() == [K.pow(t, 3), K.one]


@settings(max_examples=20, deadline=None)
@given(x=_vectors(D6, QQ, -3, 3), y=_vectors(D6, QQ, -3, 3))
def test_frobenius_ghost_identities(x, y):
    for k in (2, 3):
        fx = frobenius(x, k)
        for n in fx.iset:
            assert ghost(fx, n) == ghost(x, k * n)
        assert frobenius(x + y, k) == fx + frobenius(y, k)
        assert frobenius(x * y, k) == fx * frobenius(y, k)
    assert frobenius(frobenius(x, 2), 3) == frobenius(x, 6)


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("n", range(1, 5))
def test_frobenius_leading_term(k, n):
    poly = frobenius_poly(k, n)
    kn = k * n
    with_top = {key: c for key, c in poly.terms.items() if any(i == kn for i, _ in key[0])}
    assert with_top == {(ev({kn: 1}), ()): k}
    assert all(kn % i == 0 for i in poly.x_support())


def test_verschiebung_examples():
    T2 = IndexSet.typical(2, 2)
    x = WittVector.from_list(T2, ZZ, [5, 7])
    v = verschiebung(x, 2)
    assert v.iset.positions == (1, 2, 4) and v.as_list() == [0, 5, 7]
    assert v_inverse(v, 2) == x
    y = WittVector.from_list(IndexSet.typical(2, 3), ZZ, [4, 5, 6])
    assert v_inverse(y, 2).as_list() == [5, 6]
    u = WittVector.from_list(D6, QQ, [Fraction(c) for c in (1, -2, 3, 0, 5, 1)])
    vu = verschiebung(u, 2, target=D6)
    for n in D6:
        expected = 2 * ghost(u, n // 2) if n % 2 == 0 else 0
        assert ghost(vu, n) == expected


def test_v_inverse_splitting_reassembles():
    x = WittVector.from_list(D6, ZZ, range(10, 16))
    inv = v_inverse(x, 2)
    rest = {n: x.comps[n] for n in D6 if n % 2}
    rebuilt = dict(rest)
    rebuilt.update({2 * n: c for n, c in inv.comps.items()})
    assert WittVector(D6, ZZ, rebuilt) == x


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_frobenius_after_verschiebung_is_multiplication_by_p(p, data):
    F = make_prime_field(p)
    T = IndexSet.typical(p, 3)
    x = data.draw(_vectors(T, F, 0, p - 1))
    fv = truncate(frobenius(verschiebung(x, p), p), T)
    assert fv == witt_mul(witt_int(p, T, F), x)


def test_ghost_v_inverse_examples():
    assert ghost_v_inverse_check(2, 1)
    assert ghost_v_inverse_check(1, 3)
    assert ghost_v_inverse_check(3, 2)
    assert all(ghost_v_inverse_check(k, n) for k in range(1, 5) for n in range(1, 5))
