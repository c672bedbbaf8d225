import itertools

import pytest

from wittweyl.balgebra import commutator
from wittweyl.exactnum import make_fraction_field, make_prime_field
from wittweyl.symbolalg import (IndexOutOfRange, SymbolAlgebra, ZeroB, ad_power_identity_check,
                                azumaya_desk_check, classical_symbol_iso_check,
                                commutator_power_direct, commutator_power_formula,
                                falling_factorial_check, fv_adjoint_structure_check,
                                fv_symbol_reduction, generic_field, generic_symbol_algebra,
                                monotone_profiles, power_commutator_check,
                                power_commutator_vanishing_check, power_subalgebra_span_check,
                                symbol_opposite_check, symbol_shift_check, symbol_triple_check)

SIZES = [(2, 1, 1), (2, 2, 1), (2, 1, 2), (2, 2, 2), (3, 1, 1), (3, 2, 1), (3, 1, 2), (3, 2, 2)]


# commutators of powers ------------------------------------------------------------------


@pytest.mark.parametrize("p,m,n", SIZES)
def test_power_commutators_exhaustive(p, m, n):
    A = generic_symbol_algebra(p, m, n)
    for i, j, k, l in itertools.product(range(m), range(n), range(3), range(3)):
        assert power_commutator_check(A, i, j, k, l)
        assert power_commutator_vanishing_check(A, i, j, k, l)


def test_power_commutator_examples():
    A = generic_symbol_algebra(2, 2, 2)
    # [y_1, x_1] = c_{2,2}(x_0, y_0) = x_0 y_0 + 1
    assert commutator_power_formula(A, 1, 1, 0, 0).to_str() == "x0*y0 + 1"
    # [y_0^2, x_1] = c_{2,1} evaluated at x_1 -> 1
    assert commutator_power_formula(A, 1, 0, 1, 0) == A.one
    assert commutator_power_direct(A, 0, 1, 1, 0).is_zero()
    with pytest.raises(IndexOutOfRange):
        commutator_power_formula(A, 2, 0, 0, 0)


def test_ad_power_identity():
    K, a, b = generic_field(5, 1, 1)
    A = SymbolAlgebra(K, 1, 1, a, b)
    y, x = A.y(0), A.x(0)
    for n in range(1, 5):
        assert ad_power_identity_check(y, x, n)
    with pytest.raises(ValueError):
        ad_power_identity_check(x, y, 2)


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 2, 1), (2, 1, 2)])
def test_power_subalgebra_spans(p, m, n):
    A = generic_symbol_algebra(p, m, n)
    for mp in range(m + 1):
        for np_ in range(n + 1):
            for ls in monotone_profiles(mp, n):
                for ks in monotone_profiles(np_, m):
                    assert power_subalgebra_span_check(A, mp, np_, ls, ks)


@pytest.mark.parametrize("mp,np_,ls,ks", [(0, 0, (), ()), (1, 1, (1,), (0,)),
                                           (2, 0, (0, 2), ()), (2, 2, (1, 2), (0, 1))])
def test_power_subalgebra_spans_two_by_two(mp, np_, ls, ks):
    assert power_subalgebra_span_check(generic_symbol_algebra(2, 2, 2), mp, np_, ls, ks)


# symbol laws -----------------------------------------------------------------------------


def _shift_field(p, m, n):
    names = ([f"a{i}" for i in range(m)] + [f"b{j}" for j in range(n)]
             + [f"c{i}" for i in range(m)] + [f"d{j}" for j in range(n)])
    K = make_fraction_field(make_prime_field(p), names)
    g = K.gens()
    return K, *[[g[f"{s}{i}"] for i in range(k)] for s, k in zip("abcd", (m, n, m, n))]


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 1), (2, 2, 2)])
def test_symbol_shift(p, m, n):
    K, a, b, c, d = _shift_field(p, m, n)
    assert symbol_shift_check(K, m, n, a, b, c, d)


def test_symbol_shift_wrong_twist_fails():
    K, a, b, c, d = _shift_field(2, 1, 1)
    # shifting x by c moves a by c^{p^n}; claiming the untwisted value must fail
    A = SymbolAlgebra(K, 1, 1, a, b)
    shifted_x = A.x(0) + A.scalar(c[0])
    assert shifted_x ** 2 == A.scalar(K.add(a[0], K.pow(c[0], 2)))
    assert shifted_x ** 2 != A.scalar(K.add(a[0], c[0]))


def test_symbol_shift_want_zero():
    K, a, b, c, d = _shift_field(2, 1, 1)
    assert not symbol_shift_check(K, 1, 1, a, b, c, d, want_zero=True)


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 1), (2, 2, 2)])
def test_symbol_opposite(p, m, n):
    K, a, b = generic_field(p, m, n)
    assert symbol_opposite_check(K, m, n, a, b)


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2)])
def test_symbol_triple(p, n):
    names = [f"{s}{i}" for s in "abc" for i in range(n)]
    K = make_fraction_field(make_prime_field(p), names)
    g = K.gens()
    a, b, c = ([g[f"{s}{i}"] for i in range(n)] for s in "abc")
    assert symbol_triple_check(K, n, a, b, c)
    assert symbol_triple_check(K, n, a, b, [K.zero] * n)


# F and V ---------------------------------------------------------------------------------


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 2)])
def test_fv_structure_both_directions(p, m, n):
    K, a, b = generic_field(p, m, n)
    fa = fv_adjoint_structure_check(K, m, n, a, b, "Fa")
    vb = fv_adjoint_structure_check(K, m, n, a, b[:n - 1], "Vb")
    for report in (fa, vb):
        assert report["passed"], report
        assert report["dim_A"] * report["dim_B"] == p ** (2 * m * n)
    assert fa["A_maps_onto_smaller_symbol"] and vb["y0_nilpotency"] and vb["y0_in_B"]


def test_fv_structure_rejects_bad_arguments():
    K, a, b = generic_field(2, 1, 2)
    with pytest.raises(ValueError):
        fv_adjoint_structure_check(K, 1, 2, a, b, "sideways")
    with pytest.raises(ValueError):
        fv_adjoint_structure_check(K, 1, 2, a, b, "Vb")
    with pytest.raises(ValueError):
        fv_adjoint_structure_check(K, 1, 0, a, [], "Fa")


def test_fv_symbol_reduction_cases():
    assert fv_symbol_reduction(0, 0, 0, 0, 2, 2) == ("symbol", 2, 2)
    assert fv_symbol_reduction(1, 0, 0, 0, 2, 2) == ("symbol", 2, 1)
    assert fv_symbol_reduction(0, 1, 1, 0, 3, 1) == ("symbol", 1, 1)
    assert fv_symbol_reduction(0, 1, 1, 0, 2, 1) == ("zero",)
    assert fv_symbol_reduction(0, 0, 0, 2, 1, 2) == ("zero",)
    with pytest.raises(ValueError):
        fv_symbol_reduction(-1, 0, 0, 0, 1, 1)


# Azumaya and classical --------------------------------------------------------------------


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2)])
def test_azumaya_desk_check(p, m, n):
    assert azumaya_desk_check(p, m, n)


@pytest.mark.parametrize("p", [2, 3])
def test_classical_identities(p):
    K, a, b = generic_field(p, 1, 1)
    A = SymbolAlgebra(K, 1, 1, a, b)
    x, y = A.x(0), A.y(0)
    xy = x * y
    assert xy ** p - xy == A.scalar(K.mul(a[0], b[0]))
    assert classical_symbol_iso_check(K, a[0], b[0])
    if p > 2:
        assert x ** 2 * y ** 2 == xy * (xy - 1)
    for k in range(p + 1):
        assert falling_factorial_check(A, k)
    # the relation triple of A_[ab, b): z^p - z = ab, u^p = b, [u, z] = u
    z, u = xy, y
    assert commutator(u, z) == u


def test_classical_needs_nonzero_b():
    K, a, b = generic_field(3, 1, 1)
    with pytest.raises(ZeroB):
        classical_symbol_iso_check(K, a[0], K.zero)
