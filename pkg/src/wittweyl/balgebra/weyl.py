"""Second route to c_{m,n}, through the rational Weyl algebra.

Over Q the ghost coordinates z_m = w_m(x) and t_n = w_n(y)/n satisfy
[t_n, z_m] = delta_{m,n}.  Write x_m and y_n as polynomials in the z's and
t's, normal-order [y_n, x_m] in that Weyl algebra, then substitute back.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import comb, factorial

from ..exactnum import QQ
from ..polyring import IndexSet, MultiPoly, divisors, ev_add


def _add(out: dict, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            _add(out, ev_add(ka, kb), ca * cb)
    return out


def _ppow(a: dict, e: int) -> dict:
    out = {(): Fraction(1)}
    for _ in range(e):
        out = _pmul(out, a)
    return out


@lru_cache(maxsize=None)
def x_in_z(d: int) -> tuple:
    """x_d as a polynomial in z_1, ..., z_d; returned as sorted items."""
    poly: dict = {((d, 1),): Fraction(1)}
    for e in divisors(d):
        if e < d:
            for k, c in _ppow(dict(x_in_z(e)), d // e).items():
                _add(poly, k, -e * c)
    return tuple(sorted((k, c / d) for k, c in poly.items()))


@lru_cache(maxsize=None)
def y_in_t(e: int) -> tuple:
    """y_e as a polynomial in t_1, ..., t_e, from t_e = sum_{f|e} (f/e) y_f^{e/f}."""
    poly: dict = {((e, 1),): Fraction(1)}
    for f in divisors(e):
        if f < e:
            for k, c in _ppow(dict(y_in_t(f)), e // f).items():
                _add(poly, k, -Fraction(f, e) * c)
    return tuple(sorted(poly.items()))


def _weyl_swap(tj: tuple, zk: tuple) -> dict:
    """Normal order t^j z^k = sum_r prod_n C(j_n,r_n) C(k_n,r_n) r_n! z^{k-r} t^{j-r}."""
    jd, kd = dict(tj), dict(zk)
    common = sorted(set(jd) & set(kd))
    out: dict = {}
    ranges = [range(min(jd[n], kd[n]) + 1) for n in common]
    for rs in cartesian(*ranges):
        c = 1
        z = dict(kd)
        t = dict(jd)
        for n, r in zip(common, rs):
            c *= comb(jd[n], r) * comb(kd[n], r) * factorial(r)
            z[n] -= r
            t[n] -= r
        key = (tuple(sorted((i, e) for i, e in z.items() if e)),
               tuple(sorted((i, e) for i, e in t.items() if e)))
        _add(out, key, Fraction(c))
    return out


def _weyl_mul(u: dict, v: dict) -> dict:
    out: dict = {}
    for (za, ta), ca in u.items():
        for (zb, tb), cb in v.items():
            for (zc, tc), cc in _weyl_swap(ta, zb).items():
                _add(out, (ev_add(za, zc), ev_add(tc, tb)), ca * cb * cc)
    return out


def _ghost_x(d: int) -> dict:
    return {((e, d // e),): Fraction(e) for e in divisors(d)}


def _ghost_y_scaled(d: int) -> dict:
    return {((e, d // e),): Fraction(e, d) for e in divisors(d)}


def compute_c_weyl_oracle(m: int, n: int) -> MultiPoly:
    """c_{m,n} over Q computed inside the Weyl algebra of ghost coordinates."""
    X = {(k, ()): c for k, c in x_in_z(m)}
    Y = {((), k): c for k, c in y_in_t(n)}
    comm = _weyl_mul(Y, X)
    for k, c in _weyl_mul(X, Y).items():
        _add(comm, k, -c)
    terms: dict = {}
    for (za, tb), c in comm.items():
        xpart = {(): Fraction(1)}
        for i, e in za:
            xpart = _pmul(xpart, _ppow(_ghost_x(i), e))
        ypart = {(): Fraction(1)}
        for j, e in tb:
            ypart = _pmul(ypart, _ppow(_ghost_y_scaled(j), e))
        for kx, cx in xpart.items():
            for ky, cy in ypart.items():
                _add(terms, (kx, ky), c * cx * cy)
    return MultiPoly(QQ, IndexSet.divisor_set(m), IndexSet.divisor_set(n), terms)


def has_integer_coefficients(poly: MultiPoly) -> bool:
    return all(Fraction(c).denominator == 1 for c in poly.terms.values())


def routes_agree(m: int, n: int) -> bool:
    from .core import compute_c
    lam = compute_c(m, n)
    oracle = compute_c_weyl_oracle(m, n)
    return oracle.terms == {k: Fraction(c) for k, c in lam.terms.items()}
