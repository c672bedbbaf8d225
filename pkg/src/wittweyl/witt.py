"""Universal and p-typical Witt vectors.

The integral polynomials for sum, product, negation and Frobenius are found
by solving the ghost equations w_n(result) = f(w_n(x), w_n(y)) one position
at a time; every division is checked to be exact.  p-typical vectors are
universal vectors supported on {1, p, p^2, ...}.
"""

from __future__ import annotations

import threading
from typing import Callable, Mapping

from .exactnum import ZZ, ContextMismatch, RingContext, same_context
from .polyring import (IndexOutOfSet, IndexSet, MultiPoly, NotASubset, divisors,
                       eval_ordered)


class IntegralityViolation(ArithmeticError):
    pass


def _is_power_of(k: int, p: int) -> bool:
    if p < 2 or k < 1:
        return False
    while k % p == 0:
        k //= p
    return k == 1


class WittOpTable:
    """Memoized integral polynomials keyed by (kind, position)."""

    def __init__(self):
        self._cache: dict = {}
        self._lock = threading.RLock()

    def _vars(self, n: int) -> IndexSet:
        return IndexSet.divisor_set(n)

    def ghost_poly(self, n: int, block: str = "x", k: int = 1) -> MultiPoly:
        """w_{kn} in the X (or Y) block, with variables X_d for d | kn."""
        kn = k * n
        s = IndexSet.divisor_set(kn)
        terms = {}
        for d in divisors(kn):
            mono = ((d, kn // d),)
            terms[(mono, ()) if block == "x" else ((), mono)] = d
        return MultiPoly(ZZ, s, s, terms)

    def get(self, kind: str, n: int, k: int = 1) -> MultiPoly:
        key = (kind, n, k)
        poly = self._cache.get(key)
        if poly is not None:
            return poly
        with self._lock:
            poly = self._cache.get(key)
            if poly is None:
                poly = self._solve(kind, n, k)
                self._cache[key] = poly
        return poly

    def _solve(self, kind: str, n: int, k: int) -> MultiPoly:
        if kind == "sum":
            rhs = self.ghost_poly(n, "x") + self.ghost_poly(n, "y")
        elif kind == "prod":
            rhs = self.ghost_poly(n, "x") * self.ghost_poly(n, "y")
        elif kind == "neg":
            rhs = -self.ghost_poly(n, "x")
        elif kind == "frob":
            rhs = self.ghost_poly(n, "x", k)
        else:
            raise ValueError(kind)
        for d in divisors(n):
            if d < n:
                rhs = rhs - self.get(kind, d, k) ** (n // d) * d
        out = {}
        for mono, c in rhs.terms.items():
            q, r = divmod(c, n)
            if r:
                raise IntegralityViolation(f"{kind} polynomial at {n} is not integral")
            out[mono] = q
        s = IndexSet.divisor_set(k * n)
        return MultiPoly(ZZ, s, s, out)


OPS = WittOpTable()


def witt_sum_poly(n: int, p: int = 0) -> MultiPoly:
    """s_n; with ``p`` given, ``n`` is a p-typical index and variables are renamed."""
    return _typed(OPS.get("sum", p ** n if p else n), p, n)


def witt_prod_poly(n: int, p: int = 0) -> MultiPoly:
    return _typed(OPS.get("prod", p ** n if p else n), p, n)


def witt_neg_poly(n: int, p: int = 0) -> MultiPoly:
    return _typed(OPS.get("neg", p ** n if p else n), p, n)


def frobenius_poly(k: int, n: int) -> MultiPoly:
    return OPS.get("frob", n, k)


def _typed(poly: MultiPoly, p: int, n: int) -> MultiPoly:
    if not p:
        return poly
    s = IndexSet.typical(p, n + 1)
    return poly.with_sets(s, s)


# component-level operations usable with any commuting entries -------------


def combine(kind: str, positions, xs: Mapping, ys: Mapping, evaluate: Callable) -> dict:
    """Components of x op y at ``positions``; ``evaluate(poly, xs, ys)`` does the work."""
    return {n: evaluate(OPS.get(kind, n), xs, ys) for n in positions}


def ordered_evaluator(scalar: Callable) -> Callable:
    return lambda poly, xs, ys: eval_ordered(poly, xs, ys, scalar)


def ring_evaluator(ring: RingContext) -> Callable:
    return lambda poly, xs, ys: poly.evaluate(ring, xs, ys, ring.from_int)


def elem_sum(xs: Mapping, ys: Mapping, positions, scalar) -> dict:
    return combine("sum", positions, xs, ys, ordered_evaluator(scalar))


def elem_prod(xs: Mapping, ys: Mapping, positions, scalar) -> dict:
    return combine("prod", positions, xs, ys, ordered_evaluator(scalar))


def elem_neg(xs: Mapping, positions, scalar) -> dict:
    return combine("neg", positions, xs, {}, ordered_evaluator(scalar))


def elem_sub(xs: Mapping, ys: Mapping, positions, scalar) -> dict:
    return elem_sum(xs, elem_neg(ys, positions, scalar), positions, scalar)


# Witt vectors over a coefficient ring --------------------------------------


class WittVector:
    __slots__ = ("iset", "ring", "comps")

    def __init__(self, iset: IndexSet, ring: RingContext, comps: Mapping):
        missing = [n for n in iset if n not in comps]
        if missing:
            raise IndexOutOfSet(f"no component at {missing}")
        self.iset = iset
        self.ring = ring
        self.comps = {n: comps[n] for n in iset}

    @classmethod
    def from_list(cls, iset: IndexSet, ring: RingContext, values) -> "WittVector":
        values = list(values)
        if len(values) != len(iset):
            raise ValueError("wrong number of components")
        return cls(iset, ring, dict(zip(iset.positions, values)))

    @classmethod
    def zero(cls, iset, ring) -> "WittVector":
        return cls(iset, ring, {n: ring.zero for n in iset})

    @classmethod
    def one(cls, iset, ring) -> "WittVector":
        return cls(iset, ring, {n: ring.one if n == 1 else ring.zero for n in iset})

    def as_list(self) -> list:
        return [self.comps[n] for n in self.iset]

    def __getitem__(self, label: int):
        return self.comps[self.iset.position(label)]

    def __eq__(self, other):
        return (isinstance(other, WittVector) and self.iset.positions == other.iset.positions
                and self.comps == other.comps)

    def __repr__(self):
        body = ", ".join(self.ring.to_str(c) for c in self.as_list())
        return f"W({body})"

    def _check(self, other: "WittVector"):
        if self.iset.positions != other.iset.positions or not same_context(self.ring, other.ring):
            raise ContextMismatch("Witt vectors over different index sets or rings")

    def __add__(self, other):
        return witt_add(self, other)

    def __mul__(self, other):
        return witt_mul(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_add(self, witt_neg(other))


def witt_add(x: WittVector, y: WittVector) -> WittVector:
    x._check(y)
    return WittVector(x.iset, x.ring,
                      combine("sum", x.iset, x.comps, y.comps, ring_evaluator(x.ring)))


def witt_mul(x: WittVector, y: WittVector) -> WittVector:
    x._check(y)
    return WittVector(x.iset, x.ring,
                      combine("prod", x.iset, x.comps, y.comps, ring_evaluator(x.ring)))


def witt_neg(x: WittVector) -> WittVector:
    return WittVector(x.iset, x.ring, combine("neg", x.iset, x.comps, {}, ring_evaluator(x.ring)))


def witt_int(n: int, iset: IndexSet, ring: RingContext) -> WittVector:
    """Image of the integer n in the Witt ring."""
    result = WittVector.zero(iset, ring)
    base = WittVector.one(iset, ring)
    m = abs(n)
    while m:
        if m & 1:
            result = witt_add(result, base)
        m >>= 1
        if m:
            base = witt_add(base, base)
    return witt_neg(result) if n < 0 else result


def ghost(x: WittVector, n: int):
    """w_n(x) at the embedded position n."""
    if n not in x.iset:
        raise IndexOutOfSet(n)
    R = x.ring
    total = R.zero
    for d in divisors(n):
        total = R.add(total, R.mul(R.from_int(d), R.pow(x.comps[d], n // d)))
    return total


def ghost_vector(x: WittVector) -> list:
    return [ghost(x, n) for n in x.iset]


def frobenius(x: WittVector, k: int) -> WittVector:
    """F_k.  In characteristic p with k a power of p the entries are raised to the k-th power."""
    R = x.ring
    p = R.characteristic
    if p and _is_power_of(k, p):
        return WittVector(x.iset, R, {n: R.pow(c, k) for n, c in x.comps.items()})
    target = x.iset.divided_by(k)
    ev = ring_evaluator(R)
    return WittVector(target, R, {n: ev(frobenius_poly(k, n), x.comps, {}) for n in target})


def verschiebung(x: WittVector, k: int, target: IndexSet | None = None) -> WittVector:
    """V_k, indexed by D(k)P unless a target truncation set is given."""
    R = x.iset
    if target is None:
        pos = sorted({d * n for d in divisors(k) for n in R.positions})
        target = IndexSet(tuple(pos), R.p)
    comps = {}
    for n in target:
        if n % k == 0:
            if n // k not in x.iset:
                raise NotASubset(f"position {n // k} missing for V_{k}")
            comps[n] = x.comps[n // k]
        else:
            comps[n] = x.ring.zero
    return WittVector(target, x.ring, comps)


def v_inverse(x: WittVector, k: int) -> WittVector:
    target = x.iset.divided_by(k)
    return WittVector(target, x.ring, {n: x.comps[k * n] for n in target})


def truncate(x: WittVector, q: IndexSet) -> WittVector:
    if not q.issubset(x.iset):
        raise NotASubset(f"{q.positions} is not inside {x.iset.positions}")
    return WittVector(q, x.ring, {n: x.comps[n] for n in q})


def ghost_v_inverse_check(k: int, n: int) -> bool:
    """w_{kn}(X) - k*w_n(V_{k^-1}X) involves no X_d with k | d."""
    lhs = OPS.ghost_poly(n, "x", k)
    s = lhs.xset
    rhs = MultiPoly(ZZ, s, s, {(((k * d, n // d),), ()): k * d for d in divisors(n)})
    diff = lhs - rhs
    return all(i % k for i in diff.x_support())
