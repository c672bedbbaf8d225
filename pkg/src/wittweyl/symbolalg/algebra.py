"""The quotient A_{((a,b))} = B_{m,n}(K) / (x_i^{p^n} - a_i, y_j^{p^m} - b_j)."""

from __future__ import annotations

from itertools import product as cartesian
from typing import Sequence

from ..balgebra.core import AlgElement, Algebra, BAlgebraCtx, commutator
from ..exactnum import RingContext, same_context
from ..polyring import IndexSet, ev, lex_key
from ..witt import WittVector


class CharMismatch(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class AlgebraMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class QuotElement(AlgElement):
    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, AlgElement) and other.alg is not self.alg and other.alg != self.alg:
            raise AlgebraMismatch("elements of different symbol algebras")
        return super().__mul__(other)


def _components(v, K: RingContext, length: int, what: str) -> list:
    if isinstance(v, WittVector):
        if not same_context(v.ring, K):
            raise CharMismatch(f"{what} lives over {v.ring}, not {K}")
        v = v.as_list()
    v = list(v)
    if len(v) != length:
        raise LengthMismatch(f"{what} needs {length} components, got {len(v)}")
    return [K.from_int(c) if isinstance(c, int) else c for c in v]


class SymbolAlgebra(Algebra):
    """A_{((a,b))_{p^m,p^n}} over a field K of characteristic p.

    Exponents are reduced eagerly: x_i^e = a_i^{e // p^n} x_i^{e mod p^n}
    and y_j^e = b_j^{e // p^m} y_j^{e mod p^m}.
    """

    def __init__(self, K: RingContext, m: int, n: int, a: Sequence, b: Sequence):
        p = K.characteristic
        if p == 0:
            raise CharMismatch("symbol algebras need a field of positive characteristic")
        self.ring = K
        self.p, self.m, self.n = p, m, n
        self.a = _components(a, K, m, "a")
        self.b = _components(b, K, n, "b")
        self.B = BAlgebraCtx.typical(K, p, m, n)
        self.P, self.Q = self.B.P, self.B.Q
        self.xbound = p ** n
        self.ybound = p ** m
        self._apos = {p ** i: c for i, c in enumerate(self.a)}
        self._bpos = {p ** j: c for j, c in enumerate(self.b)}
        self._mm: dict = {}
        self._pows: dict = {}

    def __eq__(self, other):
        return self is other or (
            isinstance(other, SymbolAlgebra) and same_context(self.ring, other.ring)
            and (self.m, self.n) == (other.m, other.n) and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.p, self.m, self.n))

    def __repr__(self):
        return f"A(({self.a},{self.b}))_{{{self.p}^{self.m},{self.p}^{self.n}}}"

    def element_class(self):
        return QuotElement

    @property
    def dimension(self) -> int:
        return self.p ** (2 * self.m * self.n)

    # generators ---------------------------------------------------------
    def x(self, i: int, e: int = 1) -> QuotElement:
        if not 0 <= i < self.m:
            raise IndexOutOfRange(f"x_{i} with m = {self.m}")
        return self.monomial(((self.p ** i, e),), ())

    def y(self, j: int, e: int = 1) -> QuotElement:
        if not 0 <= j < self.n:
            raise IndexOutOfRange(f"y_{j} with n = {self.n}")
        return self.monomial((), ((self.p ** j, e),))

    def monomial(self, xe, ye, c=None) -> QuotElement:
        """Reduced image of c * x^xe y^ye (exponent vectors on embedded positions)."""
        K = self.ring
        mono, coef = self._reduce(xe, ye)
        coef = coef if c is None else K.mul(coef, c)
        return self.element({} if K.is_zero(coef) else {mono: coef})

    def xs(self) -> dict:
        return {self.p ** i: self.x(i) for i in range(self.m)}

    def ys(self) -> dict:
        return {self.p ** j: self.y(j) for j in range(self.n)}

    def generators(self) -> list:
        return [self.x(i) for i in range(self.m)] + [self.y(j) for j in range(self.n)]

    def from_b(self, elem) -> QuotElement:
        out = self.zero
        for (xe, ye), c in elem.terms.items():
            out = out + self.monomial(xe, ye, c)
        return out

    # multiplication -----------------------------------------------------
    def _pow(self, table: dict, pos: int, e: int):
        key = (id(table), pos, e)
        v = self._pows.get(key)
        if v is None:
            v = self._pows[key] = self.ring.pow(table[pos], e)
        return v

    def _reduce(self, xe, ye):
        K = self.ring
        coef = K.one
        xs, ys = [], []
        for i, e in xe:
            q, r = divmod(e, self.xbound)
            if q:
                coef = K.mul(coef, self._pow(self._apos, i, q))
            if r:
                xs.append((i, r))
        for j, e in ye:
            q, r = divmod(e, self.ybound)
            if q:
                coef = K.mul(coef, self._pow(self._bpos, j, q))
            if r:
                ys.append((j, r))
        return (tuple(xs), tuple(ys)), coef

    def mono_mul(self, m1, m2) -> dict:
        key = (m1, m2)
        hit = self._mm.get(key)
        if hit is not None:
            return hit
        K = self.ring
        out: dict = {}
        for mono, c in self.B.mono_mul(m1, m2).items():
            red, coef = self._reduce(*mono)
            v = K.mul(c, coef)
            if red in out:
                v = K.add(out[red], v)
            if K.is_zero(v):
                out.pop(red, None)
            else:
                out[red] = v
        self._mm[key] = out
        return out

    # basis --------------------------------------------------------------
    def basis(self) -> list:
        """Reduced monomials x^i y^j with i_q < p^n and j_r < p^m, in increasing order."""
        xpos = [self.p ** i for i in range(self.m)]
        ypos = [self.p ** j for j in range(self.n)]
        monos = []
        for iex in cartesian(range(self.xbound), repeat=self.m):
            for jex in cartesian(range(self.ybound), repeat=self.n):
                monos.append((ev(zip(xpos, iex)), ev(zip(ypos, jex))))
        monos.sort(key=self.sort_key)
        return monos

    def sort_key(self, mono):
        return (lex_key(mono[0]), lex_key(mono[1]))

    def mono_str(self, mono) -> str:
        return self.B.mono_str(mono)

    def mono_json(self, mono) -> dict:
        return self.B.mono_json(mono)

    def is_reduced(self, mono) -> bool:
        xe, ye = mono
        return all(e < self.xbound for _, e in xe) and all(e < self.ybound for _, e in ye)


def make_symbol_algebra(K: RingContext, m: int, n: int, a, b) -> SymbolAlgebra:
    return SymbolAlgebra(K, m, n, a, b)


def quot_mul(u: QuotElement, v: QuotElement) -> QuotElement:
    return u * v


def quot_commutator(u: QuotElement, v: QuotElement) -> QuotElement:
    if u.alg is not v.alg and u.alg != v.alg:
        raise AlgebraMismatch("elements of different symbol algebras")
    return commutator(u, v)


def generic_field(p: int, m: int, n: int, extra: Sequence[str] = ()):
    """F_p(a_0..a_{m-1}, b_0..b_{n-1}, extra...) and the generic parameter lists."""
    from ..exactnum import make_fraction_field, make_prime_field
    names = [f"a{i}" for i in range(m)] + [f"b{j}" for j in range(n)] + list(extra)
    K = make_fraction_field(make_prime_field(p), names)
    if not names:
        return K, [], []
    g = K.gens()
    return K, [g[f"a{i}"] for i in range(m)], [g[f"b{j}"] for j in range(n)]


def generic_symbol_algebra(p: int, m: int, n: int) -> SymbolAlgebra:
    K, a, b = generic_field(p, m, n)
    return SymbolAlgebra(K, m, n, a, b)


def typical_set(p: int, length: int) -> IndexSet:
    return IndexSet.typical(p, length)
