"""A small expression language for algebra elements.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | factor
    factor := atom ('^' nat)?
    atom   := nat | name | 'x' nat | 'y' nat | 'x[' nat ']' | 'y[' nat ']'
            | '(' expr ')' | '[' expr ',' expr ']'

``x3`` names the generator with label 3 in the context's index set, while
``x[3]`` names the generator at embedded (universal) position 3; in a
p-typical context ``x[p^k]`` is therefore the same as ``xk``.  ``[e, f]`` is
the commutator ef - fe.  Other names resolve to the field's transcendentals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .balgebra.core import AlgElement, BAlgebraCtx, commutator
from .exactnum import ContextMismatch, FractionField
from .symbolalg.algebra import IndexOutOfRange, SymbolAlgebra


class ExprSyntaxError(SyntaxError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class UnknownSymbol(KeyError):
    def __str__(self):
        return f"unknown symbol {self.args[0]!r}"


# AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Scalar:
    name: str


@dataclass(frozen=True)
class Gen:
    block: str  # "x" or "y"
    index: int
    positional: bool = False  # True for the bracketed x[n] form


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-" or "*"
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Comm:
    left: object
    right: object


# parser -----------------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^()\[\],])|(\S)")
_GEN = re.compile(r"([xy])(\d+)$")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        for m in _TOKEN.finditer(text):
            num, name, op, bad = m.groups()
            if bad is not None:
                raise ExprSyntaxError(f"unexpected character {bad!r}", m.start(), text)
            kind = "num" if num is not None else "name" if name is not None else "op"
            self.toks.append((kind, m.group(), m.start()))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, what: str):
        kind, val, pos = self.peek()
        found = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(f"expected {what}, found {found}", pos, self.text)

    def expect(self, val: str):
        if self.peek()[1] != val or self.peek()[0] != "op":
            self.fail(repr(val))
        self.take()

    def nat(self) -> int:
        if self.peek()[0] != "num":
            self.fail("a natural number")
        return int(self.take()[1])

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail("an operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.factor()

    def factor(self):
        node = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            node = Pow(node, self.nat())
        return node

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return Int(int(val))
        if kind == "name":
            self.take()
            m = _GEN.match(val)
            if m:
                return Gen(m.group(1), int(m.group(2)))
            if val in ("x", "y") and self.peek()[:2] == ("op", "["):
                self.take()
                idx = self.nat()
                self.expect("]")
                return Gen(val, idx, positional=True)
            return Scalar(val)
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if kind == "op" and val == "[":
            self.take()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Comm(left, right)
        self.fail("an atom")


def parse(text: str):
    """Parse ``text`` into an AST; raises ExprSyntaxError with a character position."""
    return _Parser(text).parse()


# AST printer --------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _wrap(node, minimum: int) -> str:
    s = format_ast(node)
    return f"({s})" if _prec(node) < minimum else s


def format_ast(node) -> str:
    """Canonical text for an AST; parse(format_ast(t)) == t."""
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Scalar):
        return node.name
    if isinstance(node, Gen):
        return f"{node.block}[{node.index}]" if node.positional else f"{node.block}{node.index}"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, 5)}^{node.exponent}"
    if isinstance(node, Comm):
        return f"[{format_ast(node.left)}, {format_ast(node.right)}]"
    if node.op == "*":
        return f"{_wrap(node.left, 2)}*{_wrap(node.right, 3)}"
    return f"{_wrap(node.left, 1)} {node.op} {_wrap(node.right, 2)}"


# evaluation -----------------------------------------------------------------------


def _generator(ctx, node: Gen):
    try:
        if isinstance(ctx, SymbolAlgebra):
            label = node.index
            if node.positional:
                label = (ctx.P if node.block == "x" else ctx.Q).label(node.index)
            return ctx.x(label) if node.block == "x" else ctx.y(label)
        if node.positional:
            return ctx.xpos(node.index) if node.block == "x" else ctx.ypos(node.index)
        return ctx.x(node.index) if node.block == "x" else ctx.y(node.index)
    except (KeyError, IndexError, ValueError) as exc:
        if isinstance(exc, IndexOutOfRange):
            raise
        raise IndexOutOfRange(f"{format_ast(node)} is not a generator of this algebra") from exc


def evaluate(node, ctx) -> AlgElement:
    """Normal form of the expression in a B algebra or a symbol algebra."""
    if not isinstance(ctx, (BAlgebraCtx, SymbolAlgebra)):
        raise ContextMismatch(f"cannot evaluate in {type(ctx).__name__}")
    return _eval(node, ctx)


def _eval(node, ctx) -> AlgElement:
    if isinstance(node, Int):
        return ctx.from_int(node.value)
    if isinstance(node, Scalar):
        K = ctx.ring
        gens = K.gens() if isinstance(K, FractionField) else {}
        if node.name not in gens:
            raise UnknownSymbol(node.name)
        return ctx.scalar(gens[node.name])
    if isinstance(node, Gen):
        return _generator(ctx, node)
    if isinstance(node, Neg):
        return -_eval(node.operand, ctx)
    if isinstance(node, Pow):
        return _eval(node.base, ctx) ** node.exponent
    if isinstance(node, Comm):
        return commutator(_eval(node.left, ctx), _eval(node.right, ctx))
    left, right = _eval(node.left, ctx), _eval(node.right, ctx)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def evaluate_text(text: str, ctx) -> AlgElement:
    return evaluate(parse(text), ctx)


# element printer -------------------------------------------------------------------


def _coef_text(K, c) -> str:
    if isinstance(K, FractionField):
        if c.den != K.one.den:
            raise ValueError("coefficients with denominators have no expression syntax")
        return K.to_str(c)
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise ValueError("coefficients with denominators have no expression syntax")
        return str(c.numerator)
    return K.to_str(c)


def element_to_text(elem: AlgElement) -> str:
    """Canonical expression text for a normal form; parses back to the same element."""
    if elem.is_zero():
        return "0"
    K = elem.alg.ring
    out = ""
    for mono, c in elem.sorted_terms():
        cs = _coef_text(K, c)
        ms = elem.alg.mono_str(mono)
        neg = cs.startswith("-") and cs[1:].isdigit()
        if neg:
            cs = cs[1:]
        simple = cs.isdigit()
        if ms == "1":
            body = cs if simple else f"({cs})"
        elif cs == "1":
            body = ms
        else:
            body = f"{cs if simple else f'({cs})'}*{ms}"
        if not out:
            out = "-" + body if neg else body
        else:
            out += (" - " if neg else " + ") + body
    return out
