"""Relation-level checks of the structural isomorphisms of B_{P,Q}(R).

Each check builds substituted generator families inside a concrete algebra
and tests the defining relations of the target algebra as normal-form
identities.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from ..polyring import IndexSet, eval_ordered
from ..witt import (_is_power_of, elem_neg, elem_prod, elem_sub, elem_sum,
                    frobenius_poly, ordered_evaluator)
from .core import CTABLE, BAlgebraCtx, TensorAlgebra, commutator


def family_commutes(a: Mapping, b: Mapping) -> bool:
    return all(commutator(u, v).is_zero() for u in a.values() for v in b.values())


def self_commutes(fam: Mapping) -> bool:
    items = list(fam.values())
    return all(commutator(items[i], items[j]).is_zero()
               for i in range(len(items)) for j in range(i + 1, len(items)))


def c_relations_hold(xs: Mapping, ys: Mapping, scalar, opposite: bool = False) -> bool:
    """[ys_n, xs_m] = c_{m,n}(xs, ys) for all positions m, n of the families.

    With ``opposite`` the relation is read in the opposite algebra: the
    bracket changes sign and every monomial is multiplied in reverse.
    """
    for m in xs:
        for n in ys:
            c = CTABLE.get(m, n)
            lhs = commutator(ys[n], xs[m])
            if opposite:
                rhs = -eval_ordered(c.swap_blocks(), ys, xs, scalar)
            else:
                rhs = eval_ordered(c, xs, ys, scalar)
            if lhs != rhs:
                return False
    return True


def relations_hold(xs: Mapping, ys: Mapping, scalar, opposite: bool = False) -> bool:
    return (self_commutes(xs) and self_commutes(ys)
            and c_relations_hold(xs, ys, scalar, opposite))


def _scalar_of(alg):
    return lambda c: alg.scalar(c if not isinstance(c, int) else alg.ring.from_int(c))


def opposite_check(ctx: BAlgebraCtx) -> bool:
    """B(x,y)^op = B(x,-y) = B(-x,y), tested on generators."""
    sc = _scalar_of(ctx)
    xs, ys = ctx.xs(), ctx.ys()
    neg_y = elem_neg(ys, ctx.Q, sc)
    neg_x = elem_neg(xs, ctx.P, sc)
    return (relations_hold(xs, neg_y, sc, opposite=True)
            and relations_hold(neg_x, ys, sc, opposite=True))


def shift_check(ctx: BAlgebraCtx, a, b) -> bool:
    """x + a and y + b (Witt sums with scalar vectors) satisfy the relations of B."""
    sc = _scalar_of(ctx)
    a_el = {n: sc(a.comps[n]) for n in ctx.P}
    b_el = {n: sc(b.comps[n]) for n in ctx.Q}
    xs = elem_sum(ctx.xs(), a_el, ctx.P, sc)
    ys = elem_sum(ctx.ys(), b_el, ctx.Q, sc)
    return relations_hold(xs, ys, sc)


def tensor_shift_check(ctx: BAlgebraCtx) -> bool:
    """B(x,y) (x) B(z,t) is generated by (x+z, y) and (z, t-y) with the same relations."""
    if not len(ctx.P) or not len(ctx.Q):
        return True
    T = TensorAlgebra([ctx, ctx])
    sc = _scalar_of(T)
    x = {n: T.embed(0, e) for n, e in ctx.xs().items()}
    y = {n: T.embed(0, e) for n, e in ctx.ys().items()}
    z = {n: T.embed(1, e) for n, e in ctx.xs().items()}
    t = {n: T.embed(1, e) for n, e in ctx.ys().items()}
    x2 = elem_sum(x, z, ctx.P, sc)
    t2 = elem_sub(t, y, ctx.Q, sc)
    return (relations_hold(x2, y, sc) and relations_hold(z, t2, sc)
            and family_commutes(x2, z) and family_commutes(x2, t2)
            and family_commutes(y, z) and family_commutes(y, t2))


def triple_tensor_check(ctx: BAlgebraCtx) -> bool:
    """Families (x_a, y_a - x_b x_c) in a triple tensor product satisfy B's relations."""
    if not len(ctx.P):
        return True
    T = TensorAlgebra([ctx, ctx, ctx])
    sc = _scalar_of(T)
    xs = [{n: T.embed(i, e) for n, e in ctx.xs().items()} for i in range(3)]
    ys = [{n: T.embed(i, e) for n, e in ctx.ys().items()} for i in range(3)]
    fams = []
    for a in range(3):
        b, c = [i for i in range(3) if i != a]
        prod = elem_prod(xs[b], xs[c], ctx.P, sc)
        fams.append((xs[a], elem_sub(ys[a], prod, ctx.Q, sc)))
    for a in range(3):
        if not relations_hold(*fams[a], sc):
            return False
        for b in range(a + 1, 3):
            for u in fams[a]:
                for v in fams[b]:
                    if not family_commutes(u, v):
                        return False
    return True


def frobenius_family(ys: Mapping, Q: IndexSet, k: int, scalar) -> dict:
    """Components of F_k y computed with the universal Frobenius polynomials."""
    ev = ordered_evaluator(scalar)
    return {n: ev(frobenius_poly(k, n), ys, {}) for n in Q.divided_by(k)}


def frobenius_subalgebra_check(ctx: BAlgebraCtx, k: int, l: int | None = None) -> bool:
    """Frobenius-twisted subfamilies commute or satisfy shifted relations as predicted.

    For universal contexts ``k`` multiplies indices (F_k); for p-typical
    contexts ``k`` and ``l`` are exponents, i.e. F_{p^k} and F_{p^l}.
    """
    sc = _scalar_of(ctx)
    p = ctx.P.p or ctx.Q.p
    K = p ** k if p else k
    xs, ys = ctx.xs(), ctx.ys()
    fy = frobenius_family(ys, ctx.Q, K, sc)
    # elements of x at indices prime to K commute with F_K y
    for m in ctx.P:
        if m % K and not family_commutes({m: xs[m]}, fy):
            return False
    vx = {d: xs[K * d] for d in ctx.P.divided_by(K)}
    if vx and fy and not c_relations_hold(vx, fy, sc):
        return False
    char = ctx.ring.characteristic
    if char and l is not None:
        L = p ** l if p else l
        if not (_is_power_of(K, char) and _is_power_of(L, char)):
            raise ValueError("the characteristic-p branch needs p-power twists")
        x1 = {m: xs[m] for m in ctx.P if m % K}
        y1 = {n: ys[n] for n in ctx.Q if n % L}
        x2 = {d: xs[K * d] ** L for d in ctx.P.divided_by(K)}
        y2 = {d: ys[L * d] ** K for d in ctx.Q.divided_by(L)}
        if not (relations_hold(x1, y1, sc) and relations_hold(x2, y2, sc)):
            return False
        if not (family_commutes(y1, x2) and family_commutes(y2, x1)):
            return False
    return True


# truncated exponential series ---------------------------------------------


@lru_cache(maxsize=None)
def _yx(k: int, l: int, a: Fraction) -> tuple:
    """Y^k X^l as sum of c * X^i Y^j when [Y, X] = a; items ((i, j), c)."""
    if k == 0 or l == 0:
        return (((l, k), Fraction(1)),)
    out: dict = {}
    # Y^k X^l = Y^{k-1} (X^l Y + l a X^{l-1})
    for (i, j), c in _yx(k - 1, l, a):
        out[(i, j + 1)] = out.get((i, j + 1), 0) + c
    for (i, j), c in _yx(k - 1, l - 1, a):
        out[(i, j)] = out.get((i, j), 0) + c * l * a
    return tuple((key, c) for key, c in sorted(out.items()) if c)


def exp_commutation_series_check(N: int, a=1) -> bool:
    """exp(tY) exp(sX) = exp(sX) exp(tY) exp(a s t) up to total degree N in s, t."""
    a = Fraction(a)
    lhs: dict = {}
    for k in range(N + 1):
        for l in range(N + 1 - k):
            w = Fraction(1, factorial(k) * factorial(l))
            for (i, j), c in _yx(k, l, a):
                key = (l, k, i, j)  # s-degree, t-degree, X-power, Y-power
                lhs[key] = lhs.get(key, 0) + w * c
    rhs: dict = {}
    for l in range(N + 1):
        for k in range(N + 1 - l):
            for r in range((N - l - k) // 2 + 1):
                key = (l + r, k + r, l, k)
                w = a ** r / (factorial(l) * factorial(k) * factorial(r))
                rhs[key] = rhs.get(key, 0) + w
    lhs = {k: v for k, v in lhs.items() if v}
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs
