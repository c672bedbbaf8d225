from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from wittweyl.exactnum import (QQ, ZZ, DuplicateVariable, NotPrime, PrimeField, is_prime,
                               make_fraction_field, make_prime_field)


def test_prime_fields():
    F2 = make_prime_field(2)
    assert F2.characteristic == 2 and F2.is_field
    F7 = make_prime_field(7)
    assert F7.mul(F7.from_int(3), F7.inv(F7.from_int(3))) == F7.one
    assert F7.from_int(-1) == 6
    for bad in (6, 1, 0, 9):
        with pytest.raises(NotPrime):
            make_prime_field(bad)


def test_is_prime_against_sympy():
    assert [n for n in range(200) if is_prime(n)] == list(sp.primerange(0, 200))


def test_fraction_field_construction():
    K = make_fraction_field(make_prime_field(2), ["a0", "b0"])
    assert K.characteristic == 2
    a0 = K.gen("a0")
    assert K.mul(a0, K.inv(a0)) == K.one
    assert K.to_str(K.inv(a0)) == "(1)/(a0)"
    assert make_fraction_field(make_prime_field(3), []) == PrimeField(3)
    with pytest.raises(DuplicateVariable):
        make_fraction_field(make_prime_field(2), ["a", "a"])


def test_division_by_zero():
    K = make_fraction_field(make_prime_field(3), ["t"])
    with pytest.raises(ZeroDivisionError):
        K.inv(K.zero)
    with pytest.raises(ZeroDivisionError):
        make_prime_field(5).inv(0)


def test_parse_and_print():
    K = make_fraction_field(make_prime_field(5), ["a", "b"])
    v = K.parse("(a + 2*b)^2 / (a - b) - 3")
    assert K.parse(K.to_str(v)) == v
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert ZZ.to_str(ZZ.from_int(-12)) == "-12"


# randomized ring axioms --------------------------------------------------------

F5 = make_prime_field(5)
K3 = make_fraction_field(make_prime_field(3), ["a", "b"])


def _ratfunc(K):
    gens = list(K.gens().values())
    atom = st.one_of(st.integers(-3, 3).map(K.from_int), st.sampled_from(gens))

    def combine(children):
        return st.tuples(children, children, st.sampled_from("+*-")).map(
            lambda t: {"+": K.add, "*": K.mul, "-": K.sub}[t[2]](t[0], t[1]))

    return st.recursive(atom, combine, max_leaves=6)


CONTEXTS = [
    (ZZ, st.integers(-10**6, 10**6)),
    (QQ, st.fractions(max_denominator=50)),
    (F5, st.integers(0, 4)),
    (K3, _ratfunc(K3)),
]


@pytest.mark.parametrize("ctx,elems", CONTEXTS, ids=["ZZ", "QQ", "F5", "F3(a,b)"])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_ring_axioms(ctx, elems, data):
    u, v, w = (data.draw(elems) for _ in range(3))
    add, mul = ctx.add, ctx.mul
    assert add(u, v) == add(v, u)
    assert mul(u, v) == mul(v, u)
    assert add(add(u, v), w) == add(u, add(v, w))
    assert mul(mul(u, v), w) == mul(u, mul(v, w))
    assert mul(u, add(v, w)) == add(mul(u, v), mul(u, w))
    assert add(u, ctx.zero) == u and mul(u, ctx.one) == u
    assert ctx.is_zero(add(u, ctx.neg(u)))
    if ctx.is_field and not ctx.is_zero(u):
        assert mul(u, ctx.inv(u)) == ctx.one


@settings(max_examples=60, deadline=None)
@given(u=_ratfunc(K3), v=_ratfunc(K3))
def test_frobenius_is_additive(u, v):
    assert K3.pow(K3.add(u, v), 3) == K3.add(K3.pow(u, 3), K3.pow(v, 3))


# normalization against sympy's modular gcd -------------------------------------------


def _to_sympy(poly: dict, syms):
    return sum(c * sp.Mul(*(s ** e for s, e in zip(syms, exps))) for exps, c in poly.items())


@settings(max_examples=40, deadline=None)
@given(u=_ratfunc(K3), v=_ratfunc(K3))
def test_quotients_are_reduced_against_sympy(u, v):
    if K3.is_zero(v):
        return
    q = K3.div(u, v)
    syms = sp.symbols("a b")
    num = sp.Poly(_to_sympy(q.num, syms), *syms, modulus=3)
    den = sp.Poly(_to_sympy(q.den, syms), *syms, modulus=3)
    assert sp.gcd(num, den).total_degree() == 0
    # cross-multiplication: q * v == u
    assert K3.mul(q, v) == u
