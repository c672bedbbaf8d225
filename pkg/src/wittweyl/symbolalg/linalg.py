"""Exact sparse Gaussian elimination over a field context.

Vectors are dicts column -> nonzero field element.  Pivots are chosen to be
as simple as possible (constants first), which keeps rational-function
entries small over the generic parameter fields.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..exactnum import RingContext


def _axpy(K: RingContext, row: dict, factor, pivot_row: dict) -> dict:
    """row - factor * pivot_row."""
    out = dict(row)
    for c, v in pivot_row.items():
        w = K.mul(factor, v)
        if c in out:
            w = K.sub(out[c], w)
            if K.is_zero(w):
                del out[c]
            else:
                out[c] = w
        elif not K.is_zero(w):
            out[c] = K.neg(w)
    return out


def _normalize(K: RingContext, row: dict, col) -> dict:
    inv = K.inv(row[col])
    return {c: (K.one if c == col else K.mul(v, inv)) for c, v in row.items()}


class Echelon:
    """Incrementally maintained reduced row echelon basis."""

    def __init__(self, K: RingContext, order: Sequence):
        self.K = K
        self.rank_of = {c: i for i, c in enumerate(order)}
        self.rows: dict = {}  # pivot column -> normalized row

    def reduce(self, vec: dict) -> dict:
        K = self.K
        vec = dict(vec)
        for col in sorted((c for c in vec if c in self.rows), key=self.rank_of.__getitem__):
            if col in vec:
                vec = _axpy(K, vec, vec[col], self.rows[col])
        return vec

    def add(self, vec: dict) -> bool:
        """Insert vec; returns False if it was already in the span."""
        K = self.K
        vec = self.reduce(vec)
        if not vec:
            return False
        col = min(vec, key=self.rank_of.__getitem__)
        row = _normalize(K, vec, col)
        for c, other in list(self.rows.items()):
            if col in other:
                self.rows[c] = _axpy(K, other, other[col], row)
        self.rows[col] = row
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def __len__(self):
        return len(self.rows)

    def basis(self) -> list:
        return [self.rows[c] for c in sorted(self.rows, key=self.rank_of.__getitem__)]


def rank(K: RingContext, vectors: Iterable[dict], order: Sequence) -> int:
    e = Echelon(K, order)
    for v in vectors:
        e.add(v)
    return len(e)


def kernel(K: RingContext, columns: dict, order: Sequence) -> list:
    """Kernel of the linear map whose column for basis index j is ``columns[j]``.

    ``columns`` maps each unknown (in ``order``) to a sparse image vector.
    Returns kernel vectors in reduced echelon form, keyed by unknowns.
    """
    rows: dict = {}
    for j, col in columns.items():
        for r, v in col.items():
            rows.setdefault(r, {})[j] = v
    pending = list(rows.values())
    pivots: dict = {}  # unknown -> normalized row
    rank_of = {c: i for i, c in enumerate(order)}
    for row in pending:
        for c in sorted((c for c in row if c in pivots), key=rank_of.__getitem__):
            if c in row:
                row = _axpy(K, row, row[c], pivots[c])
        if not row:
            continue
        col = min(row, key=lambda c: (K.complexity(row[c]), rank_of[c]))
        row = _normalize(K, row, col)
        for c, other in list(pivots.items()):
            if col in other:
                pivots[c] = _axpy(K, other, other[col], row)
        pivots[col] = row
    free = [c for c in order if c not in pivots]
    basis = []
    for f in free:
        vec = {f: K.one}
        for c, row in pivots.items():
            if f in row:
                vec[c] = K.neg(row[f])
        basis.append(vec)
    ech = Echelon(K, order)
    for v in basis:
        ech.add(v)
    return ech.basis()
