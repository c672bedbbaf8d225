import random
from dataclasses import replace

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from wittweyl.exactnum import QQ, make_prime_field
from wittweyl.polyring import IndexSet, ev
from wittweyl.symbolalg import (AlgebraMismatch, CharMismatch, IndexOutOfRange, LengthMismatch,
                                Matrix, MatrixRep, SplitFailure, SymbolAlgebra, ZeroInput,
                                center, centralizer, centralizer_formula_check, generic_field,
                                generic_symbol_algebra, kernel, monotone_profiles,
                                power_generators, predicted_exponents, random_element, rank,
                                regular_representation, replay, simplicity_reduce,
                                split_zero_symbol, triples_decrease)
from wittweyl.witt import WittVector

F2 = make_prime_field(2)
F3 = make_prime_field(3)


@pytest.mark.parametrize("p,m,n,size", [(2, 1, 1, 4), (2, 2, 1, 16), (2, 1, 2, 16),
                                        (2, 2, 2, 256), (3, 1, 1, 9)])
def test_basis_sizes(p, m, n, size):
    A = SymbolAlgebra(make_prime_field(p), m, n, [1] * m, [1] * n)
    basis = A.basis()
    assert len(basis) == len(set(basis)) == A.dimension == size
    assert all(A.is_reduced(mono) for mono in basis)


def test_exponent_reduction():
    A = generic_symbol_algebra(2, 1, 1)
    a0, b0 = A.a[0], A.b[0]
    assert A.x(0) ** 2 == A.scalar(a0)
    assert A.y(0) ** 2 == A.scalar(b0)
    assert (A.y(0) * A.x(0)).to_str() == "x0*y0 + 1"
    B = generic_symbol_algebra(2, 2, 1)
    # x_i^{p^n} = a_i with n = 1
    assert B.x(1) ** 2 == B.scalar(B.a[1])
    assert B.y(0) ** 4 == B.scalar(B.b[0])
    assert (B.y(0) ** 3).terms == {((), ev({1: 3})): B.ring.one}


def test_construction_errors():
    with pytest.raises(CharMismatch):
        SymbolAlgebra(QQ, 1, 1, [1], [1])
    with pytest.raises(LengthMismatch):
        SymbolAlgebra(F2, 2, 1, [1], [1])
    with pytest.raises(CharMismatch):
        SymbolAlgebra(F2, 1, 1, WittVector.from_list(IndexSet.typical(3, 1), F3, [1]), [1])
    A = SymbolAlgebra(F2, 1, 1, [1], [1])
    with pytest.raises(IndexOutOfRange):
        A.x(1)
    with pytest.raises(IndexOutOfRange):
        A.y(-1)
    other = SymbolAlgebra(F2, 1, 1, [0], [1])
    with pytest.raises(AlgebraMismatch):
        A.x(0) * other.y(0)


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 1)])
def test_center_is_scalars_over_generic_fields(p, m, n):
    A = generic_symbol_algebra(p, m, n)
    assert [z.terms for z in center(A)] == [A.one.terms]


def test_center_is_scalars_for_concrete_two_by_two():
    A = SymbolAlgebra(F2, 2, 2, [1, 0], [0, 1])
    assert [z.terms for z in center(A)] == [A.one.terms]


def test_central_powers():
    A = generic_symbol_algebra(2, 2, 1)
    # x_i^{p^n} and y_j^{p^m} are central even before reduction by the parameters
    B = SymbolAlgebra(A.ring, 2, 1, [A.ring.zero] * 2, A.b)
    for g in B.generators():
        assert (g * B.y(0) ** 4 - B.y(0) ** 4 * g).is_zero()


# linear algebra against sympy --------------------------------------------------------


matrices = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


@settings(max_examples=60, deadline=None)
@given(rows=matrices)
def test_rank_and_kernel_match_sympy(rows):
    vecs = [{j: QQ.from_int(v) for j, v in enumerate(r) if v} for r in rows]
    assert rank(QQ, vecs, range(4)) == sp.Matrix(rows).rank()
    columns = {j: {i: QQ.from_int(r[j]) for i, r in enumerate(rows) if r[j]} for j in range(4)}
    ker = kernel(QQ, columns, list(range(4)))
    assert len(ker) == len(sp.Matrix(rows).nullspace())
    for v in ker:
        for r in rows:
            assert sum(r[j] * c for j, c in v.items()) == 0


# centralizers --------------------------------------------------------------------------


def test_predicted_exponents_examples():
    # no generators: everything centralizes
    assert predicted_exponents(1, 1, 0, 0, (), ()) == ([0], [0])
    # y_0 alone kills x_0 unless its exponent is divisible by p^1
    assert predicted_exponents(1, 1, 0, 1, (), (0,)) == ([1], [0])
    assert predicted_exponents(1, 1, 1, 1, (0,), (0,)) == ([1], [1])
    assert list(monotone_profiles(2, 1)) == [(0, 0), (0, 1), (1, 1)]


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 2, 1), (2, 1, 2)])
def test_centralizer_formula_small_profiles(p, m, n):
    A = generic_symbol_algebra(p, m, n)
    for mp in range(m + 1):
        for np_ in range(n + 1):
            for ls in monotone_profiles(mp, n):
                for ks in monotone_profiles(np_, m):
                    assert centralizer_formula_check(A, mp, np_, ls, ks)


def test_centralizer_formula_rejects_bad_input():
    A = generic_symbol_algebra(2, 1, 1)
    with pytest.raises(ValueError):
        centralizer_formula_check(A, 2, 0, (0, 0), ())
    with pytest.raises(ValueError):
        centralizer_formula_check(A, 1, 0, (), ())
    B = generic_symbol_algebra(2, 2, 1)
    with pytest.raises(ValueError):
        centralizer_formula_check(B, 2, 0, (1, 0), ())


def test_centralizer_of_single_generator():
    A = generic_symbol_algebra(2, 1, 1)
    found = centralizer(A, power_generators(A, 1, 0, (0,), ()))
    assert sorted(f.to_str() for f in found) == ["1", "x0"]


# simplicity ---------------------------------------------------------------------------


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_simplicity_reduction_random(m, n):
    A = generic_symbol_algebra(2, m, n)
    rng = random.Random(5)
    for k in range(15):
        alpha = random_element(A, rng)
        trace = simplicity_reduce(A, alpha, seed=k)
        assert not A.ring.is_zero(trace.scalar)
        assert triples_decrease(trace)
        assert replay(A, alpha, trace)


def test_simplicity_zero_input_and_tampered_trace():
    A = generic_symbol_algebra(2, 1, 1)
    with pytest.raises(ZeroInput):
        simplicity_reduce(A, A.zero)
    alpha = A.x(0) * A.y(0) + A.x(0)
    trace = simplicity_reduce(A, alpha, seed=1)
    assert [s.phase for s in trace.steps] == [1, 2]
    assert trace.to_json(A.ring)["scalar"] == "1"
    bad = replace(trace, scalar=A.ring.from_int(0))
    assert not replay(A, alpha, bad)
    doubled = replace(trace, steps=trace.steps + trace.steps[-1:])
    assert not triples_decrease(doubled)


def test_scalar_input_needs_no_steps():
    A = generic_symbol_algebra(3, 1, 1)
    trace = simplicity_reduce(A, A.scalar(A.a[0]))
    assert trace.steps == [] and trace.scalar == A.a[0]


# matrix representations ---------------------------------------------------------------


def test_hand_verified_two_by_two_split():
    rep = split_zero_symbol(2, 1, 1)
    X, Y = rep.xs[1], rep.ys[1]
    assert X == Matrix(F2, [[0, 0], [1, 0]])
    assert Y == Matrix(F2, [[0, 1], [0, 0]])
    assert Y * X - X * Y == Matrix.scalar(F2, 1, 2)
    assert rep.span_dimension() == 4


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 1)])
def test_split_zero_symbol_spans_full_matrix_algebra(p, m, n):
    rep = split_zero_symbol(p, m, n)
    assert rep.dim == p ** (m * n)
    assert rep.failed_relations() == []
    assert rep.span_dimension() == p ** (2 * m * n)


def test_bad_images_are_rejected():
    A = SymbolAlgebra(F2, 1, 1, [0], [0])
    Z = Matrix(F2, [[0, 0], [1, 0]])
    with pytest.raises(SplitFailure):
        MatrixRep(A, {1: Z}, {1: Z})


def test_regular_representation_is_faithful():
    K, a, b = generic_field(2, 1, 1)
    A = SymbolAlgebra(K, 1, 1, a, b)
    rep = regular_representation(A)
    assert rep.dim == 4 and rep.span_dimension() == 4
    u = A.x(0) * A.y(0) + A.y(0)
    assert rep.image(u * u) == rep.image(u) * rep.image(u)
