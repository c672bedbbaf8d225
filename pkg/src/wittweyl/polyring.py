"""Commutative polynomials in two blocks of variables, X and Y.

Variables are indexed by positions of a truncation set.  Exponent vectors
are sparse tuples ``((index, exponent), ...)`` sorted by index.  p-typical
index sets store their positions embedded in N* as 1, p, p^2, ... and only
relabel them as 0, 1, 2, ... when printing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .exactnum import ZZ, ContextMismatch, RingContext, same_context


class MissingVariable(KeyError):
    pass


class IndexOutOfSet(KeyError):
    pass


class NotASubset(ValueError):
    pass


# exponent vectors ---------------------------------------------------------

EV = tuple  # ((index, exp), ...) sorted by index, exp >= 1

ONE_EV: EV = ()


def ev(mapping: Mapping[int, int] | Iterable[tuple[int, int]]) -> EV:
    items = mapping.items() if isinstance(mapping, Mapping) else mapping
    return tuple(sorted((i, e) for i, e in items if e))


def ev_unit(i: int, e: int = 1) -> EV:
    return ((i, e),) if e else ()


def ev_add(a: EV, b: EV) -> EV:
    if not a:
        return b
    if not b:
        return a
    if len(b) == 1:
        (i, e), = b
        for pos, (k, f) in enumerate(a):
            if k == i:
                return a[:pos] + ((i, f + e),) + a[pos + 1:]
            if k > i:
                return a[:pos] + ((i, e),) + a[pos:]
        return a + b
    if len(a) == 1:
        return ev_add(b, a)
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def ev_get(a: EV, i: int) -> int:
    for k, e in a:
        if k == i:
            return e
    return 0


def ev_degree(a: EV) -> int:
    return sum(e for _, e in a)


def lex_key(a: EV) -> tuple:
    """Sort key realising :func:`lex_compare`."""
    return tuple(reversed(a))


def lex_compare(i: EV, j: EV) -> int:
    """Compare exponent vectors; the largest position where they differ decides.

    Returns -1, 0 or 1.  Under this order a variable of larger index beats
    any product of variables of smaller index, so X_2 > X_1^k for every k.
    """
    ki, kj = lex_key(i), lex_key(j)
    return (ki > kj) - (ki < kj)


# index sets ----------------------------------------------------------------


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class IndexSet:
    """A finite set of positions in N*; ``p`` is set for p-typical sets."""

    positions: tuple
    p: int = 0

    @staticmethod
    def universal(positions: Iterable[int], check: bool = True) -> "IndexSet":
        pos = tuple(sorted(set(positions)))
        if check:
            s = set(pos)
            for n in pos:
                if n < 1 or any(d not in s for d in divisors(n)):
                    raise ValueError(f"{pos} is not a truncation set")
        return IndexSet(pos)

    @staticmethod
    def upto(n: int) -> "IndexSet":
        return IndexSet(tuple(range(1, n + 1)))

    @staticmethod
    def divisor_set(n: int) -> "IndexSet":
        return IndexSet(tuple(divisors(n)))

    @staticmethod
    def typical(p: int, length: int) -> "IndexSet":
        return IndexSet(tuple(p ** k for k in range(length)), p)

    @property
    def typical_flag(self) -> bool:
        return self.p > 0

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __contains__(self, n):
        return n in self.positions

    def label(self, pos: int) -> int:
        """Printed index of a position (p-typical sets are renamed)."""
        if not self.p:
            return pos
        k, q = 0, pos
        while q > 1 and q % self.p == 0:
            q //= self.p
            k += 1
        if q != 1:
            raise IndexOutOfSet(f"{pos} is not a power of {self.p}")
        return k

    def position(self, label: int) -> int:
        if not self.p:
            if label not in self.positions:
                raise IndexOutOfSet(label)
            return label
        if not 0 <= label < len(self.positions):
            raise IndexOutOfSet(label)
        return self.p ** label

    def labels(self) -> list[int]:
        return [self.label(n) for n in self.positions]

    def divided_by(self, k: int) -> "IndexSet":
        """P/k = {n : kn in P}."""
        return IndexSet(tuple(n // k for n in self.positions if n % k == 0), self.p)

    def issubset(self, other: "IndexSet") -> bool:
        return set(self.positions) <= set(other.positions)

    def union(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(tuple(sorted(set(self.positions) | set(other.positions))),
                        self.p if self.p == other.p else 0)


# polynomials ---------------------------------------------------------------


class MultiPoly:
    """Polynomial in R[X][Y]; terms map (x exponents, y exponents) to coefficients."""

    __slots__ = ("ring", "xset", "yset", "terms")

    def __init__(self, ring: RingContext, xset: IndexSet, yset: IndexSet,
                 terms: dict | None = None):
        self.ring = ring
        self.xset = xset
        self.yset = yset
        self.terms = terms if terms is not None else {}

    # constructors
    @classmethod
    def const(cls, ring, xset, yset, c) -> "MultiPoly":
        return cls(ring, xset, yset, {} if ring.is_zero(c) else {((), ()): c})

    @classmethod
    def xvar(cls, ring, xset, yset, i: int, e: int = 1) -> "MultiPoly":
        return cls(ring, xset, yset, {(ev_unit(i, e), ()): ring.one})

    @classmethod
    def yvar(cls, ring, xset, yset, j: int, e: int = 1) -> "MultiPoly":
        return cls(ring, xset, yset, {((), ev_unit(j, e)): ring.one})

    def _like(self, terms: dict) -> "MultiPoly":
        return MultiPoly(self.ring, self.xset, self.yset, terms)

    def _check(self, other: "MultiPoly"):
        if not same_context(self.ring, other.ring):
            raise ContextMismatch(f"{self.ring} vs {other.ring}")

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = self.const(self.ring, self.xset, self.yset, self.ring.from_int(other))
        self._check(other)
        R = self.ring
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = R.add(out[k], c) if k in out else c
            if R.is_zero(v):
                out.pop(k, None)
            else:
                out[k] = v
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return self._like({k: R.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = self.const(self.ring, self.xset, self.yset, self.ring.from_int(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        R = self.ring
        if not isinstance(other, MultiPoly):
            return self.scale(R.from_int(other))
        self._check(other)
        out: dict = {}
        for (xa, ya), ca in self.terms.items():
            for (xb, yb), cb in other.terms.items():
                k = (ev_add(xa, xb), ev_add(ya, yb))
                c = R.mul(ca, cb)
                v = R.add(out[k], c) if k in out else c
                if R.is_zero(v):
                    out.pop(k, None)
                else:
                    out[k] = v
        return self._like(out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        R = self.ring
        if R.is_zero(c):
            return self._like({})
        out = {}
        for k, v in self.terms.items():
            w = R.mul(v, c)
            if not R.is_zero(w):
                out[k] = w
        return self._like(out)

    def __pow__(self, e: int):
        result = self.const(self.ring, self.xset, self.yset, self.ring.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({} if other == 0 else {((), ()): self.ring.from_int(other)})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # structure
    def sorted_terms(self) -> list:
        """Terms with the leading (largest) monomial first."""
        return sorted(self.terms.items(),
                      key=lambda kv: (lex_key(kv[0][0]), lex_key(kv[0][1])), reverse=True)

    def x_support(self) -> set:
        return {i for (xe, _) in self.terms for i, _ in xe}

    def y_support(self) -> set:
        return {j for (_, ye) in self.terms for j, _ in ye}

    def map_coeffs(self, ring: RingContext, fn: Callable | None = None) -> "MultiPoly":
        fn = fn or ring.from_int
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if not ring.is_zero(v):
                out[k] = v
        return MultiPoly(ring, self.xset, self.yset, out)

    def with_sets(self, xset: IndexSet, yset: IndexSet) -> "MultiPoly":
        return MultiPoly(self.ring, xset, yset, self.terms)

    def swap_blocks(self) -> "MultiPoly":
        return MultiPoly(self.ring, self.yset, self.xset,
                         {(ye, xe): c for (xe, ye), c in self.terms.items()})

    def evaluate(self, ring: RingContext, xs: Mapping, ys: Mapping, coerce=None):
        """Evaluate at commuting values of ``ring``; coefficients go through ``coerce``."""
        coerce = coerce or (lambda c: c)
        total = ring.zero
        for (xe, ye), c in self.terms.items():
            t = coerce(c)
            for i, e in xe:
                if i not in xs:
                    raise MissingVariable(f"X_{i}")
                t = ring.mul(t, ring.pow(xs[i], e))
            for j, e in ye:
                if j not in ys:
                    raise MissingVariable(f"Y_{j}")
                t = ring.mul(t, ring.pow(ys[j], e))
            total = ring.add(total, t)
        return total

    # printing
    def to_str(self) -> str:
        if not self.terms:
            return "0"
        R = self.ring
        out = ""
        for n, ((xe, ye), c) in enumerate(self.sorted_terms()):
            mono = [f"X{self.xset.label(i)}" + (f"^{e}" if e > 1 else "") for i, e in xe]
            mono += [f"Y{self.yset.label(j)}" + (f"^{e}" if e > 1 else "") for j, e in ye]
            cs = R.to_str(c)
            neg = cs.startswith("-") and "/" not in cs[1:] and " " not in cs
            if neg:
                cs = cs[1:]
            if mono:
                body = "*".join(mono) if cs == "1" else f"{_paren(cs)}*" + "*".join(mono)
            else:
                body = cs
            if n == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"

    # JSON
    def to_json(self) -> dict:
        xs, ys = self.xset, self.yset
        out = {
            "xvars": xs.labels(),
            "yvars": ys.labels(),
            "terms": [
                {"xexp": {str(xs.label(i)): e for i, e in xe},
                 "yexp": {str(ys.label(j)): e for j, e in ye},
                 "coef": self.ring.to_str(c)}
                for (xe, ye), c in self.sorted_terms()
            ],
        }
        if xs.p or ys.p:
            out["ptypical"] = xs.p or ys.p
        return out

    @classmethod
    def from_json(cls, data: dict, ring: RingContext = ZZ) -> "MultiPoly":
        p = data.get("ptypical", 0)
        if p:
            xset = IndexSet.typical(p, len(data["xvars"]))
            yset = IndexSet.typical(p, len(data["yvars"]))
        else:
            xset = IndexSet(tuple(data["xvars"]))
            yset = IndexSet(tuple(data["yvars"]))
        terms = {}
        for t in data["terms"]:
            xe = ev({xset.position(int(k)): v for k, v in t["xexp"].items()})
            ye = ev({yset.position(int(k)): v for k, v in t["yexp"].items()})
            c = ring.parse(t["coef"])
            if not ring.is_zero(c):
                terms[(xe, ye)] = c
        return cls(ring, xset, yset, terms)


def _paren(s: str) -> str:
    return f"({s})" if any(ch in s for ch in " +-/") else s


def deg_x(poly: MultiPoly) -> EV | None:
    """Largest X exponent vector, or None standing for minus infinity."""
    if not poly.terms:
        return None
    return max((xe for xe, _ in poly.terms), key=lex_key)


def deg_y(poly: MultiPoly) -> EV | None:
    if not poly.terms:
        return None
    return max((ye for _, ye in poly.terms), key=lex_key)


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def poly_neg(p: MultiPoly) -> MultiPoly:
    return -p


def power(elem, e: int, one):
    result = one
    base = elem
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def eval_ordered(poly: MultiPoly, xs: Mapping, ys: Mapping, scalar: Callable):
    """Evaluate ``poly`` in a possibly noncommutative algebra.

    ``xs`` and ``ys`` map positions to elements supporting ``+`` and ``*``;
    ``scalar(c)`` embeds a coefficient.  In every monomial the X images are
    multiplied to the left of the Y images.
    """
    one = scalar(poly.ring.one)
    total = scalar(poly.ring.zero)
    cache: dict = {}

    def pw(table, tag, i, e):
        key = (tag, i, e)
        if key not in cache:
            if i not in table:
                raise MissingVariable(f"{tag}_{i}")
            cache[key] = power(table[i], e, one)
        return cache[key]

    for (xe, ye), c in poly.sorted_terms():
        t = scalar(c)
        for i, e in xe:
            t = t * pw(xs, "X", i, e)
        for j, e in ye:
            t = t * pw(ys, "Y", j, e)
        total = total + t
    return total
