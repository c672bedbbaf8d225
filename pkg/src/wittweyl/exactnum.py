"""Exact coefficient rings.

A ring context bundles the arithmetic of one coefficient domain.  Elements
are plain Python values (``int`` for Z and F_p, ``Fraction`` for Q) or
``RatFunc`` instances for fraction fields F_p(t_1, ..., t_r), so the
algebra code can stay agnostic of the concrete domain:

>>> F = make_prime_field(5)
>>> F.mul(3, 4)
2
>>> K = make_fraction_field(make_prime_field(2), ["a0", "b0"])
>>> a0 = K.gen("a0")
>>> K.mul(a0, K.inv(a0)) == K.one
True
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence


class NotPrime(ValueError):
    pass


class DuplicateVariable(ValueError):
    pass


class ContextMismatch(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class RingContext:
    """Common interface; subclasses override the arithmetic."""

    characteristic: int = 0
    is_field: bool = False
    name: str = "?"

    zero: object = 0
    one: object = 1

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def inv(self, a):
        raise ZeroDivisionError(f"{self.name} has no inverses")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def to_str(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError

    def complexity(self, a) -> int:
        """Rough size of an element; used to choose cheap pivots."""
        return 0

    def is_unit_constant(self, a) -> bool:
        return not self.is_zero(a)

    def __repr__(self) -> str:
        return self.name


class IntegerRing(RingContext):
    characteristic = 0
    is_field = False
    name = "ZZ"

    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in ZZ")

    def parse(self, text):
        return int(text)

    def is_unit_constant(self, a):
        return a in (1, -1)


class RationalField(RingContext):
    characteristic = 0
    is_field = True
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def to_str(self, a):
        return str(Fraction(a))

    def parse(self, text):
        return Fraction(text.strip())


class PrimeField(RingContext):
    is_field = True

    def __init__(self, p: int):
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def from_int(self, n):
        return int(n) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p) if e >= 0 else pow(self.inv(a), -e, self.p)

    def parse(self, text):
        return int(text) % self.p


ZZ = IntegerRing()
QQ = RationalField()


def make_prime_field(p: int) -> PrimeField:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return PrimeField(p)


# ---------------------------------------------------------------------------
# Sparse polynomials over F_p (p > 0) or Q (p == 0).  A polynomial is a dict
# mapping dense exponent tuples to nonzero coefficients.  These helpers back
# the fraction field below and are not part of the public surface.


def _c(x, p):
    return x % p if p else x


def _p_add(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = _c(out.get(e, 0) + c, p)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _p_neg(a: dict, p: int) -> dict:
    return {e: _c(-c, p) for e, c in a.items()}


def _p_sub(a, b, p):
    return _p_add(a, _p_neg(b, p), p)


def _p_mul(a: dict, b: dict, p: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = _c(out.get(e, 0) + ca * cb, p)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _p_scale(a: dict, s, p: int) -> dict:
    if not _c(s, p):
        return {}
    return {e: _c(c * s, p) for e, c in a.items()}


def _c_inv(c, p):
    return pow(c, -1, p) if p else 1 / Fraction(c)


def _lead(a: dict):
    e = max(a)
    return e, a[e]


def _monic(a: dict, p: int) -> dict:
    if not a:
        return a
    _, lc = _lead(a)
    return _p_scale(a, _c_inv(lc, p), p)


def _p_divexact(a: dict, b: dict, p: int) -> dict:
    """Quotient a / b, which must be exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    eb, cb = _lead(b)
    icb = _c_inv(cb, p)
    q: dict = {}
    r = dict(a)
    while r:
        er, cr = _lead(r)
        shift = tuple(x - y for x, y in zip(er, eb))
        if min(shift) < 0:
            raise ArithmeticError("inexact polynomial division")
        t = {shift: _c(cr * icb, p)}
        q = _p_add(q, t, p)
        r = _p_sub(r, _p_mul(t, b, p), p)
    return q


def _vars_of(a: dict) -> set:
    out = set()
    for e in a:
        out.update(i for i, x in enumerate(e) if x)
    return out


def _split(a: dict, v: int) -> dict:
    """View a as univariate in variable v: degree -> coefficient poly."""
    out: dict = {}
    for e, c in a.items():
        d = e[v]
        rest = e[:v] + (0,) + e[v + 1:]
        out.setdefault(d, {})[rest] = c
    return out


def _join(parts: dict, v: int) -> dict:
    out = {}
    for d, poly in parts.items():
        for e, c in poly.items():
            out[e[:v] + (d,) + e[v + 1:]] = c
    return out


def _content(a: dict, v: int, p: int) -> dict:
    g: dict = {}
    for coef in _split(a, v).values():
        g = _p_gcd(g, coef, p)
        if len(g) == 1 and not any(next(iter(g))):
            break
    return g


def _prem(a: dict, b: dict, v: int, p: int) -> dict:
    bs = _split(b, v)
    db = max(bs)
    lcb = bs[db]
    r = a
    while r:
        rs = _split(r, v)
        dr = max(rs)
        if dr < db:
            break
        lcr = rs[dr]
        shift = {tuple((dr - db) if i == v else 0 for i in range(len(next(iter(a))))): 1}
        r = _p_sub(_p_mul(lcb, r, p), _p_mul(_p_mul(lcr, shift, p), b, p), p)
    return r


def _p_gcd(a: dict, b: dict, p: int) -> dict:
    """Monic gcd over the coefficient field (primitive remainder sequences)."""
    if not a:
        return _monic(b, p)
    if not b:
        return _monic(a, p)
    va, vb = _vars_of(a), _vars_of(b)
    nvars = len(next(iter(a)))
    if not va or not vb:
        return {(0,) * nvars: 1}
    v = min(va | vb)
    if v not in va:
        return _p_gcd(a, _content(b, v, p), p)
    if v not in vb:
        return _p_gcd(_content(a, v, p), b, p)
    ca, cb = _content(a, v, p), _content(b, v, p)
    c = _p_gcd(ca, cb, p)
    f, g = _p_divexact(a, ca, p), _p_divexact(b, cb, p)
    if max(e[v] for e in f) < max(e[v] for e in g):
        f, g = g, f
    while True:
        r = _prem(f, g, v, p)
        if not r:
            break
        if not any(e[v] for e in r):
            g = {(0,) * nvars: 1}
            break
        r = _p_divexact(r, _content(r, v, p), p)
        f, g = g, r
    g = _p_divexact(g, _content(g, v, p), p)
    return _monic(_p_mul(c, g, p), p)


class RatFunc:
    """Normalized quotient num/den with den monic; treat as immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: dict, den: dict):
        self.num = num
        self.den = den
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class FractionField(RingContext):
    """F_p(t_1, ..., t_r) (or Q(...)) with gcd-normalized elements."""

    is_field = True

    def __init__(self, base: RingContext, names: Sequence[str]):
        self.base = base
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.characteristic = base.characteristic
        self._p = base.characteristic
        self.name = f"{base.name}({', '.join(self.names)})"
        self._e0 = (0,) * self.nvars
        self._one_poly = {self._e0: 1}
        self.zero = RatFunc({}, self._one_poly)
        self.one = RatFunc({self._e0: 1}, self._one_poly)
        self._index = {nm: i for i, nm in enumerate(self.names)}

    def __eq__(self, other):
        return (isinstance(other, FractionField) and other.names == self.names
                and other.characteristic == self.characteristic)

    def __hash__(self):
        return hash(("Frac", self.names, self.characteristic))

    # construction -----------------------------------------------------
    def gen(self, name: str) -> RatFunc:
        i = self._index[name]
        e = tuple(1 if k == i else 0 for k in range(self.nvars))
        return RatFunc({e: 1}, self._one_poly)

    def gens(self) -> dict:
        return {nm: self.gen(nm) for nm in self.names}

    def from_int(self, n):
        v = _c(n, self._p) if self._p else Fraction(n)
        if not v:
            return self.zero
        return RatFunc({self._e0: v}, self._one_poly)

    def from_base(self, c):
        return self.from_int(c) if self._p else (
            RatFunc({self._e0: Fraction(c)}, self._one_poly) if c else self.zero)

    def _make(self, num: dict, den: dict) -> RatFunc:
        p = self._p
        if not num:
            return self.zero
        if len(den) == 1 and self._e0 in den:
            s = _c_inv(den[self._e0], p)
            return RatFunc(_p_scale(num, s, p) if s != 1 else num, self._one_poly)
        g = _p_gcd(num, den, p)
        if len(g) != 1 or self._e0 not in g:
            num = _p_divexact(num, g, p)
            den = _p_divexact(den, g, p)
        _, lc = _lead(den)
        if lc != 1:
            s = _c_inv(lc, p)
            num, den = _p_scale(num, s, p), _p_scale(den, s, p)
        if len(den) == 1 and self._e0 in den:
            den = self._one_poly
        return RatFunc(num, den)

    # arithmetic -----------------------------------------------------
    def add(self, a, b):
        p = self._p
        if not a.num:
            return b
        if not b.num:
            return a
        if a.den is b.den or a.den == b.den:
            num = _p_add(a.num, b.num, p)
            if a.den == self._one_poly:
                return RatFunc(num, self._one_poly) if num else self.zero
            return self._make(num, a.den)
        num = _p_add(_p_mul(a.num, b.den, p), _p_mul(b.num, a.den, p), p)
        return self._make(num, _p_mul(a.den, b.den, p))

    def neg(self, a):
        return RatFunc(_p_neg(a.num, self._p), a.den) if a.num else a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p = self._p
        if not a.num or not b.num:
            return self.zero
        one = self._one_poly
        if a.den == one and b.den == one:
            return RatFunc(_p_mul(a.num, b.num, p), one)
        return self._make(_p_mul(a.num, b.num, p), _p_mul(a.den, b.den, p))

    def is_zero(self, a):
        return not a.num

    def inv(self, a):
        if not a.num:
            raise ZeroDivisionError("inverse of zero")
        return self._make(a.den, a.num)

    def complexity(self, a):
        return len(a.num) + len(a.den) - 1 + sum(sum(e) for e in a.num) + sum(sum(e) for e in a.den)

    def is_unit_constant(self, a):
        return len(a.num) == 1 and self._e0 in a.num and a.den == self._one_poly

    def is_polynomial(self, a) -> bool:
        return a.den == self._one_poly

    # printing and parsing -------------------------------------------
    def _poly_str(self, poly: dict) -> str:
        if not poly:
            return "0"
        parts = []
        for e in sorted(poly, reverse=True):
            c = poly[e]
            mono = "*".join(
                nm if k == 1 else f"{nm}^{k}" for nm, k in zip(self.names, e) if k)
            sign = ""
            if not self._p and c < 0:
                sign, c = "-", -c
            if not mono:
                parts.append((sign, str(c)))
            elif c == 1:
                parts.append((sign, mono))
            else:
                parts.append((sign, f"{c}*{mono}"))
        out = ""
        for idx, (sign, body) in enumerate(parts):
            if idx == 0:
                out = sign + body
            else:
                out += (" - " if sign else " + ") + body
        return out

    def to_str(self, a) -> str:
        num = self._poly_str(a.num)
        if a.den == self._one_poly:
            return num
        return f"({num})/({self._poly_str(a.den)})"

    def parse(self, text: str):
        return _ScalarParser(self, text).parse()


class _ScalarParser:
    """Recursive-descent parser for scalars: + - * / ^ and parentheses."""

    def __init__(self, field: FractionField, text: str):
        self.f = field
        self.toks = []
        for m in _TOKEN.finditer(text):
            num, name, other = m.groups()
            if num is not None:
                self.toks.append(("num", int(num)))
            elif name is not None:
                self.toks.append(("name", name))
            elif other is not None and not other.isspace():
                self.toks.append(("op", other))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return v

    def expr(self):
        f = self.f
        if self.peek() == ("op", "-"):
            self.take()
            v = f.neg(self.term())
        else:
            v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            v = f.add(v, t) if op == "+" else f.sub(v, t)
        return v

    def term(self):
        f = self.f
        v = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            t = self.factor()
            v = f.mul(v, t) if op == "*" else f.div(v, t)
        return v

    def factor(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ValueError("exponent must be a natural number")
            v = self.f.pow(v, e)
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.f.from_int(val)
        if kind == "name":
            if val not in self.f._index:
                raise KeyError(f"unknown scalar {val!r}")
            return self.f.gen(val)
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing ')'")
            return v
        if (kind, val) == ("op", "-"):
            return self.f.neg(self.atom())
        raise ValueError(f"unexpected token {val!r}")


def make_fraction_field(base: RingContext, names: Iterable[str]) -> RingContext:
    names = list(names)
    if len(set(names)) != len(names):
        raise DuplicateVariable(f"duplicate variable names in {names}")
    if not base.is_field:
        raise ValueError("fraction fields need a base field")
    if not names:
        return base
    return FractionField(base, names)


def same_context(a: RingContext, b: RingContext) -> bool:
    return a is b or a == b
