"""Matrix representations of symbol algebras and the splitting of A_{((0,0))}(F_p)."""

from __future__ import annotations

from ..balgebra.checks import c_relations_hold, self_commutes
from ..exactnum import RingContext, make_prime_field
from ..polyring import power
from .algebra import SymbolAlgebra
from .linalg import Echelon


class SplitFailure(RuntimeError):
    pass


class Matrix:
    __slots__ = ("K", "rows")

    def __init__(self, K: RingContext, rows):
        self.K = K
        self.rows = [list(r) for r in rows]

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def scalar(cls, K, c, d: int) -> "Matrix":
        c = K.from_int(c) if isinstance(c, int) else c
        return cls(K, [[c if i == j else K.zero for j in range(d)] for i in range(d)])

    @classmethod
    def zero(cls, K, d) -> "Matrix":
        return cls.scalar(K, K.zero, d)

    def __add__(self, other):
        K = self.K
        rows = zip(self.rows, other.rows)
        return Matrix(K, [[K.add(a, b) for a, b in zip(r, s)] for r, s in rows])

    def __neg__(self):
        K = self.K
        return Matrix(K, [[K.neg(a) for a in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        K = self.K
        if not isinstance(other, Matrix):
            c = K.from_int(other) if isinstance(other, int) else other
            return Matrix(K, [[K.mul(a, c) for a in r] for r in self.rows])
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = K.zero
                for a, b in zip(r, col):
                    if not K.is_zero(a) and not K.is_zero(b):
                        acc = K.add(acc, K.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(K, out)

    def __pow__(self, e: int):
        return power(self, e, Matrix.scalar(self.K, self.K.one, self.size))

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(map(tuple, self.rows)))

    def is_zero(self) -> bool:
        return all(self.K.is_zero(a) for r in self.rows for a in r)

    def trace(self):
        K = self.K
        acc = K.zero
        for i, r in enumerate(self.rows):
            acc = K.add(acc, r[i])
        return acc

    def flat(self) -> dict:
        d = self.size
        return {(i, j): a for i, r in enumerate(self.rows) for j, a in enumerate(r)
                if not self.K.is_zero(a)} if d else {}

    def to_json(self) -> list:
        return [[self.K.to_str(a) for a in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.to_json()})"


def _commutator(a, b):
    return a * b - b * a


class MatrixRep:
    """Generator images of a symbol algebra; relations are checked on construction."""

    def __init__(self, alg: SymbolAlgebra, xs: dict, ys: dict):
        self.alg = alg
        self.K = alg.ring
        self.xs = xs  # embedded position -> Matrix
        self.ys = ys
        some = next(iter(xs.values()), None) or next(iter(ys.values()), None)
        self.dim = some.size if some is not None else 1
        bad = self.failed_relations()
        if bad:
            raise SplitFailure(f"generator images violate {bad}")

    def scalar(self, c) -> Matrix:
        return Matrix.scalar(self.K, c, self.dim)

    def failed_relations(self) -> list:
        alg, bad = self.alg, []
        if not self_commutes(self.xs):
            bad.append("x commute")
        if not self_commutes(self.ys):
            bad.append("y commute")
        if not c_relations_hold(self.xs, self.ys, self.scalar):
            bad.append("c relations")
        for pos, M in self.xs.items():
            if M ** alg.xbound != self.scalar(alg._apos[pos]):
                bad.append(f"x power at {pos}")
        for pos, M in self.ys.items():
            if M ** alg.ybound != self.scalar(alg._bpos[pos]):
                bad.append(f"y power at {pos}")
        return bad

    def image(self, elem) -> Matrix:
        total = Matrix.zero(self.K, self.dim)
        for (xe, ye), c in elem.terms.items():
            M = self.scalar(c)
            for i, e in xe:
                M = M * self.xs[i] ** e
            for j, e in ye:
                M = M * self.ys[j] ** e
            total = total + M
        return total

    def span_dimension(self) -> int:
        order = [(i, j) for i in range(self.dim) for j in range(self.dim)]
        ech = Echelon(self.K, order)
        for mono in self.alg.basis():
            ech.add(self.image(self.alg.element({mono: self.K.one})).flat())
        return len(ech)

    def to_json(self) -> dict:
        alg = self.alg
        return {"dimension": self.dim,
                "x": {str(alg.P.label(i)): M.to_json() for i, M in sorted(self.xs.items())},
                "y": {str(alg.Q.label(j)): M.to_json() for j, M in sorted(self.ys.items())}}


def _action_matrix(alg: SymbolAlgebra, g, basis: list, project) -> Matrix:
    K = alg.ring
    index = {mono: k for k, mono in enumerate(basis)}
    d = len(basis)
    rows = [[K.zero] * d for _ in range(d)]
    for col, mono in enumerate(basis):
        img = g * alg.element({mono: K.one})
        for m, c in img.terms.items():
            m = project(m)
            if m is not None:
                rows[index[m]][col] = K.add(rows[index[m]][col], c)
    return Matrix(K, rows)


def regular_representation(alg: SymbolAlgebra) -> MatrixRep:
    """Left multiplication on the reduced monomial basis."""
    basis = alg.basis()
    xs = {pos: _action_matrix(alg, g, basis, lambda m: m) for pos, g in alg.xs().items()}
    ys = {pos: _action_matrix(alg, g, basis, lambda m: m) for pos, g in alg.ys().items()}
    return MatrixRep(alg, xs, ys)


def split_zero_symbol(p: int, m: int, n: int) -> MatrixRep:
    """A_{((0,0))}(F_p) acting on A / sum_j A y_j, with basis x^i (i_q < p^n)."""
    K = make_prime_field(p)
    alg = SymbolAlgebra(K, m, n, [0] * m, [0] * n)
    basis = [mono for mono in alg.basis() if not mono[1]]

    def project(mono):
        return mono if not mono[1] else None

    xs = {pos: _action_matrix(alg, g, basis, project) for pos, g in alg.xs().items()}
    ys = {pos: _action_matrix(alg, g, basis, project) for pos, g in alg.ys().items()}
    rep = MatrixRep(alg, xs, ys)
    if rep.dim != p ** (m * n):
        raise SplitFailure(f"module dimension {rep.dim} != {p ** (m * n)}")
    span = rep.span_dimension()
    if span != p ** (2 * m * n):
        raise SplitFailure(f"images span {span} < {p ** (2 * m * n)} dimensions")
    return rep
