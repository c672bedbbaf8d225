"""Normal-form engine for B_{P,Q}(R) and the integral structure polynomials c_{m,n}.

Monomials are pairs ``(xe, ye)`` of exponent vectors and stand for x^xe y^ye.
The only rewriting step is y_e x_d -> x_d y_e + c_{d,e}(x, y).  Products of
a y-monomial with an x-monomial are memoized per characteristic, because
the c polynomials have integer coefficients and so the swap results only
depend on the characteristic of the coefficient ring.
"""

from __future__ import annotations

import sys
import threading
from itertools import product as cartesian
from typing import Iterable

from ..exactnum import ZZ, ContextMismatch, RingContext, same_context
from ..polyring import EV, IndexSet, MultiPoly, ev_add, ev_unit, lex_key, power

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_C_BOUND = 8


def partitions(k: int, largest: int | None = None) -> Iterable[dict]:
    """Partitions of k as {part: multiplicity}."""
    if largest is None:
        largest = k
    if k == 0:
        yield {}
        return
    for part in range(min(k, largest), 0, -1):
        for rest in partitions(k - part, part):
            out = dict(rest)
            out[part] = out.get(part, 0) + 1
            yield out


def lambda_coeff(k: int, block: str = "x") -> MultiPoly:
    """Coefficient a_k of s^k in prod_d (1 - X_d s^d)^{-1}."""
    s = IndexSet.upto(max(k, 1))
    terms = {}
    for part in partitions(k):
        mono = tuple(sorted(part.items()))
        terms[(mono, ()) if block == "x" else ((), mono)] = 1
    return MultiPoly(ZZ, s, s, terms)


def _acc(out: dict, key, c, char: int):
    v = out.get(key, 0) + c
    if char:
        v %= char
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class SwapCache:
    """Memoized normal forms of y^j x^k with integer (or mod char) coefficients."""

    def __init__(self, char: int, cfun):
        self.char = char
        self.cfun = cfun
        self._pairs: dict = {}
        self._single: dict = {}
        self._c: dict = {}
        self.lock = threading.RLock()

    def c_terms(self, d: int, e: int) -> dict:
        key = (d, e)
        t = self._c.get(key)
        if t is None:
            raw = self.cfun(d, e).terms
            t = {}
            for mono, c in raw.items():
                if self.char:
                    c %= self.char
                if c:
                    t[mono] = c
            self._c[key] = t
        return t

    def swap(self, j: EV, k: EV) -> dict:
        if not j or not k:
            return {(k, j): 1}
        key = (j, k)
        hit = self._pairs.get(key)
        if hit is not None:
            return hit
        with self.lock:
            e, ee = j[-1]
            jrest = j[:-1] + (((e, ee - 1),) if ee > 1 else ())
            out: dict = {}
            for (xa, yb), c in self.single(e, k).items():
                for (xc, yd), c2 in self.swap(jrest, xa).items():
                    _acc(out, (xc, ev_add(yd, yb)), c * c2, self.char)
            self._pairs[key] = out
        return out

    def single(self, e: int, k: EV) -> dict:
        """Normal form of y_e x^k."""
        if not k:
            return {((), ((e, 1),)): 1}
        key = (e, k)
        hit = self._single.get(key)
        if hit is not None:
            return hit
        with self.lock:
            d, dd = k[0]
            krest = (((d, dd - 1),) if dd > 1 else ()) + k[1:]
            out: dict = {}
            xd = ((d, 1),)
            for (xa, yb), c in self.single(e, krest).items():
                _acc(out, (ev_add(xd, xa), yb), c, self.char)
            for (xa, yb), c in self.c_terms(d, e).items():
                for (xc, yd), c2 in self.swap(yb, krest).items():
                    _acc(out, (ev_add(xa, xc), yd), c * c2, self.char)
            self._single[key] = out
        return out


def _raw_mul(u: dict, v: dict, cache: SwapCache) -> dict:
    out: dict = {}
    ch = cache.char
    for (xi, yj), c1 in u.items():
        for (xk, yl), c2 in v.items():
            for (xa, yb), c3 in cache.swap(yj, xk).items():
                _acc(out, (ev_add(xi, xa), ev_add(yb, yl)), c1 * c2 * c3, ch)
    return out


def _raw_sub(u: dict, v: dict, char: int = 0) -> dict:
    out = dict(u)
    for k, c in v.items():
        _acc(out, k, -c, char)
    return out


class CTable:
    """c_{m,n} over Z via the generating-series identity, solved in increasing m + n.

    Writing a_m = x_m + alpha and b_n = y_n + beta for the coefficients of the
    series in the x's and y's, the identity b_n a_m = sum_r a_{m-r} b_{n-r}
    yields [y_n, x_m] once the commutators of lower pairs are known.
    """

    def __init__(self):
        self._table: dict = {}
        self._pending: set = set()
        self._lock = threading.RLock()
        self.swaps = SwapCache(0, self.get)

    def get(self, m: int, n: int) -> MultiPoly:
        c = self._table.get((m, n))
        if c is not None:
            return c
        with self._lock:
            c = self._table.get((m, n))
            if c is None:
                if (m, n) in self._pending:
                    raise RuntimeError(f"cyclic dependency computing c_{m},{n}")
                self._pending.add((m, n))
                try:
                    c = self._compute(m, n)
                finally:
                    self._pending.discard((m, n))
                self._table[(m, n)] = c
        return c

    def _compute(self, m: int, n: int) -> MultiPoly:
        if m < 1 or n < 1:
            raise ValueError("c_{m,n} needs m, n >= 1")
        a = {k: lambda_coeff(k, "x").terms for k in range(m + 1)}
        b = {k: lambda_coeff(k, "y").terms for k in range(n + 1)}
        alpha = dict(a[m])
        del alpha[(((m, 1),), ())]
        beta = dict(b[n])
        del beta[((), ((n, 1),))]
        xm = {(((m, 1),), ()): 1}
        yn = {((), ((n, 1),)): 1}

        def comm(u, v):
            return _raw_sub(_raw_mul(u, v, self.swaps), _raw_mul(v, u, self.swaps))

        known = comm(yn, alpha)
        known = _raw_sub(known, _raw_sub({}, comm(beta, xm)))
        known = _raw_sub(known, _raw_sub({}, comm(beta, alpha)))
        rhs: dict = {}
        for r in range(1, min(m, n) + 1):
            for (xe, _), c1 in a[m - r].items():
                for (_, ye), c2 in b[n - r].items():
                    _acc(rhs, (xe, ye), c1 * c2, 0)
        terms = _raw_sub(rhs, known)
        return MultiPoly(ZZ, IndexSet.divisor_set(m), IndexSet.divisor_set(n), terms)

    def known(self) -> list:
        return sorted(self._table)


CTABLE = CTable()
_SWAPS: dict = {0: CTABLE.swaps}
_SWAPS_LOCK = threading.Lock()


def swap_cache(char: int) -> SwapCache:
    with _SWAPS_LOCK:
        cache = _SWAPS.get(char)
        if cache is None:
            cache = SwapCache(char, CTABLE.get)
            _SWAPS[char] = cache
    return cache


def compute_c(m: int, n: int) -> MultiPoly:
    return CTABLE.get(m, n)


def c_typical(p: int, i: int, j: int) -> MultiPoly:
    """p-typical c_{i,j}, i.e. universal c_{p^i, p^j} with renamed variables."""
    c = CTABLE.get(p ** i, p ** j)
    return c.with_sets(IndexSet.typical(p, i + 1), IndexSet.typical(p, j + 1))


# generic algebra elements ---------------------------------------------------


class Algebra:
    """Base for algebras whose elements are finite sums of monomials."""

    ring: RingContext
    one_mono = ((), ())

    def mono_mul(self, m1, m2) -> dict:
        raise NotImplementedError

    def element_class(self):
        return AlgElement

    def element(self, terms: dict | None = None) -> "AlgElement":
        return self.element_class()(self, terms or {})

    def scalar(self, c) -> "AlgElement":
        R = self.ring
        return self.element({} if R.is_zero(c) else {self.one_mono: c})

    def from_int(self, n: int) -> "AlgElement":
        return self.scalar(self.ring.from_int(n))

    @property
    def one(self) -> "AlgElement":
        return self.scalar(self.ring.one)

    @property
    def zero(self) -> "AlgElement":
        return self.element({})

    def mono_str(self, mono) -> str:
        raise NotImplementedError

    def sort_key(self, mono):
        return mono


class AlgElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def _coerce(self, other) -> "AlgElement":
        if isinstance(other, AlgElement):
            if other.alg is not self.alg and other.alg != self.alg:
                raise ContextMismatch("elements of different algebras")
            return other
        if isinstance(other, int):
            return self.alg.from_int(other)
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        R = self.alg.ring
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = R.add(out[k], c) if k in out else c
            if R.is_zero(v):
                out.pop(k, None)
            else:
                out[k] = v
        return type(self)(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        R = self.alg.ring
        return type(self)(self.alg, {k: R.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, AlgElement):
            if isinstance(other, int):
                other = self.alg.ring.from_int(other)
            return self.scale(other)
        other = self._coerce(other)
        R = self.alg.ring
        mono_mul = self.alg.mono_mul
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = R.mul(c1, c2)
                for m, c in mono_mul(m1, m2).items():
                    v = R.mul(c12, c)
                    if m in out:
                        v = R.add(out[m], v)
                        if R.is_zero(v):
                            del out[m]
                            continue
                    elif R.is_zero(v):
                        continue
                    out[m] = v
        return type(self)(self.alg, out)

    def __rmul__(self, other):
        return self * other

    def scale(self, c) -> "AlgElement":
        R = self.alg.ring
        out = {}
        for k, v in self.terms.items():
            w = R.mul(v, c)
            if not R.is_zero(w):
                out[k] = w
        return type(self)(self.alg, out)

    def __pow__(self, e: int):
        return power(self, e, self.alg.one)

    def __eq__(self, other):
        if isinstance(other, AlgElement):
            return self.alg == other.alg and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == self.alg.from_int(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(m == self.alg.one_mono for m in self.terms)

    def scalar_value(self):
        if not self.is_scalar():
            raise ValueError("not a scalar")
        return self.terms.get(self.alg.one_mono, self.alg.ring.zero)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: self.alg.sort_key(kv[0]), reverse=True)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        R = self.alg.ring
        out = ""
        for n, (mono, c) in enumerate(self.sorted_terms()):
            ms = self.alg.mono_str(mono)
            cs = R.to_str(c)
            neg = cs.startswith("-") and not any(ch in cs[1:] for ch in " +-/")
            if neg:
                cs = cs[1:]
            if ms == "1":
                body = cs
            elif cs == "1":
                body = ms
            else:
                body = (f"({cs})" if any(ch in cs for ch in " +-/") else cs) + "*" + ms
            if n == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return self.to_str()

    def to_json(self) -> list:
        R = self.alg.ring
        return [{"monomial": self.alg.mono_json(m), "coef": R.to_str(c)}
                for m, c in self.sorted_terms()]


def commutator(u: AlgElement, v: AlgElement) -> AlgElement:
    return u * v - v * u


# B_{P,Q}(R) -----------------------------------------------------------------


class BElement(AlgElement):
    __slots__ = ()


class BAlgebraCtx(Algebra):
    """B_{P,Q}(R) with generators x_m (m in P) and y_n (n in Q)."""

    def __init__(self, ring: RingContext, P: IndexSet, Q: IndexSet):
        self.ring = ring
        self.P = P
        self.Q = Q
        self.swaps = swap_cache(ring.characteristic)
        self._ints: dict = {}

    @classmethod
    def universal(cls, ring, P, Q=None) -> "BAlgebraCtx":
        P = P if isinstance(P, IndexSet) else IndexSet.universal(P)
        Q = P if Q is None else (Q if isinstance(Q, IndexSet) else IndexSet.universal(Q))
        return cls(ring, P, Q)

    @classmethod
    def typical(cls, ring, p: int, m: int, n: int) -> "BAlgebraCtx":
        return cls(ring, IndexSet.typical(p, m), IndexSet.typical(p, n))

    def __eq__(self, other):
        return (isinstance(other, BAlgebraCtx) and same_context(self.ring, other.ring)
                and self.P == other.P and self.Q == other.Q)

    def __hash__(self):
        return hash((self.P, self.Q, self.ring.characteristic))

    def element_class(self):
        return BElement

    def _int(self, c: int):
        v = self._ints.get(c)
        if v is None:
            v = self._ints[c] = self.ring.from_int(c)
        return v

    def x(self, label: int) -> BElement:
        return self.xpos(self.P.position(label))

    def y(self, label: int) -> BElement:
        return self.ypos(self.Q.position(label))

    def xpos(self, pos: int, e: int = 1) -> BElement:
        if pos not in self.P:
            raise KeyError(f"x position {pos} not in {self.P.positions}")
        return self.element({(ev_unit(pos, e), ()): self.ring.one})

    def ypos(self, pos: int, e: int = 1) -> BElement:
        if pos not in self.Q:
            raise KeyError(f"y position {pos} not in {self.Q.positions}")
        return self.element({((), ev_unit(pos, e)): self.ring.one})

    def xs(self) -> dict:
        return {n: self.xpos(n) for n in self.P}

    def ys(self) -> dict:
        return {n: self.ypos(n) for n in self.Q}

    def monomial(self, xe: EV, ye: EV, c=None) -> BElement:
        return self.element({(xe, ye): self.ring.one if c is None else c})

    def mono_mul(self, m1, m2) -> dict:
        xi, yj = m1
        xk, yl = m2
        if not yj or not xk:
            return {(ev_add(xi, xk), ev_add(yj, yl)): self.ring.one}
        out = {}
        for (xa, yb), c in self.swaps.swap(yj, xk).items():
            out[(ev_add(xi, xa), ev_add(yb, yl))] = self._int(c)
        return out

    def c_poly(self, m: int, n: int) -> MultiPoly:
        """c_{m,n} with coefficients mapped into the ring, over the sets P, Q."""
        return CTABLE.get(m, n).map_coeffs(self.ring).with_sets(self.P, self.Q)

    def sort_key(self, mono):
        return (lex_key(mono[0]), lex_key(mono[1]))

    def mono_str(self, mono) -> str:
        xe, ye = mono
        parts = [_gen_str("x", self.P, i, e) for i, e in xe]
        parts += [_gen_str("y", self.Q, j, e) for j, e in ye]
        return "*".join(parts) if parts else "1"

    def mono_json(self, mono) -> dict:
        xe, ye = mono
        return {"x": {str(self.P.label(i)): e for i, e in xe},
                "y": {str(self.Q.label(j)): e for j, e in ye}}

    def is_typical(self) -> bool:
        return bool(self.P.p or self.Q.p)


def _gen_str(name: str, iset: IndexSet, pos: int, e: int) -> str:
    lab = iset.label(pos)
    base = f"{name}{lab}" if iset.p else f"{name}[{lab}]"
    return base if e == 1 else f"{base}^{e}"


def nf_mul(u: BElement, v: BElement) -> BElement:
    return u * v


def nf_commutator(u: BElement, v: BElement) -> BElement:
    return commutator(u, v)


# tensor products --------------------------------------------------------------


class TensorBElement(AlgElement):
    __slots__ = ()


class TensorAlgebra(Algebra):
    """Tensor product of up to three algebras over a shared ring."""

    MAX_FACTORS = 3

    def __init__(self, factors: Iterable[Algebra]):
        self.factors = tuple(factors)
        if not 1 <= len(self.factors) <= self.MAX_FACTORS:
            raise ValueError("between one and three tensor factors are supported")
        self.ring = self.factors[0].ring
        for f in self.factors[1:]:
            if not same_context(f.ring, self.ring):
                raise ContextMismatch("tensor factors over different rings")
        self.one_mono = tuple(f.one_mono for f in self.factors)

    def __eq__(self, other):
        return isinstance(other, TensorAlgebra) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def element_class(self):
        return TensorBElement

    def mono_mul(self, m1, m2) -> dict:
        R = self.ring
        parts = [list(f.mono_mul(a, b).items()) for f, a, b in zip(self.factors, m1, m2)]
        out = {}
        for combo in cartesian(*parts):
            c = R.one
            for _, ci in combo:
                c = R.mul(c, ci)
            out[tuple(mono for mono, _ in combo)] = c
        return out

    def embed(self, pos: int, elem: AlgElement) -> TensorBElement:
        terms = {}
        for mono, c in elem.terms.items():
            key = list(self.one_mono)
            key[pos] = mono
            terms[tuple(key)] = c
        return self.element(terms)

    def sort_key(self, mono):
        return tuple(f.sort_key(m) for f, m in zip(self.factors, mono))

    def mono_str(self, mono) -> str:
        return " (x) ".join(f.mono_str(m) for f, m in zip(self.factors, mono))

    def mono_json(self, mono) -> list:
        return [f.mono_json(m) for f, m in zip(self.factors, mono)]


def tensor_nf_mul(u: TensorBElement, v: TensorBElement) -> TensorBElement:
    return u * v
