"""Centralizers as kernels of commutator maps, and the predicted monomial spans."""

from __future__ import annotations

from typing import Sequence

from ..balgebra.core import commutator
from .algebra import QuotElement, SymbolAlgebra
from .linalg import Echelon, kernel


def centralizer(alg: SymbolAlgebra, generators: Sequence[QuotElement]) -> list:
    """Echelonized basis of {alpha : [g, alpha] = 0 for all g}."""
    basis = alg.basis()
    columns = {}
    for mono in basis:
        e = alg.element({mono: alg.ring.one})
        col = {}
        for gi, g in enumerate(generators):
            for m, c in commutator(g, e).terms.items():
                col[(gi, m)] = c
        columns[mono] = col
    return [alg.element(v) for v in kernel(alg.ring, columns, basis)]


def center(alg: SymbolAlgebra) -> list:
    return centralizer(alg, alg.generators())


def subalgebra_span(alg: SymbolAlgebra, generators: Sequence[QuotElement]) -> Echelon:
    """Echelon basis of the unital subalgebra generated by ``generators``."""
    ech = Echelon(alg.ring, alg.basis())
    ech.add(alg.one.terms)
    queue = [alg.one]
    while queue:
        v = queue.pop()
        for g in generators:
            w = v * g
            if ech.add(w.terms):
                queue.append(w)
    return ech


def predicted_exponents(m: int, n: int, mp: int, np_: int, ls: Sequence[int], ks: Sequence[int]):
    """l'_i (i < m) and k'_j (j < n) for the centralizer of
    x_i^{p^{l_i}} (i < m') and y_j^{p^{k_j}} (j < n')."""
    lprime = []
    for i in range(m):
        hits = [j for j in range(np_) if ks[j] > i]
        lprime.append(min(hits) if hits else np_)
    kprime = []
    for j in range(n):
        hits = [i for i in range(mp) if ls[i] > j]
        kprime.append(min(hits) if hits else mp)
    return lprime, kprime


def predicted_monomials(alg: SymbolAlgebra, lprime, kprime) -> list:
    p = alg.p
    out = []
    for xe, ye in alg.basis():
        ok = all(e % p ** lprime[alg.P.label(i)] == 0 for i, e in xe)
        ok = ok and all(e % p ** kprime[alg.Q.label(j)] == 0 for j, e in ye)
        if ok:
            out.append((xe, ye))
    return out


def power_generators(alg: SymbolAlgebra, mp: int, np_: int, ls, ks) -> list:
    p = alg.p
    return ([alg.x(i, p ** ls[i]) for i in range(mp)]
            + [alg.y(j, p ** ks[j]) for j in range(np_)])


def centralizer_formula_check(alg: SymbolAlgebra, mp: int, np_: int, ls, ks) -> bool:
    """The centralizer of the power generators is exactly the predicted monomial span."""
    if not (0 <= mp <= alg.m and 0 <= np_ <= alg.n):
        raise ValueError("m' and n' must not exceed m and n")
    if len(ls) != mp or len(ks) != np_:
        raise ValueError("exponent sequences must have lengths m' and n'")
    if list(ls) != sorted(ls) or list(ks) != sorted(ks):
        raise ValueError("exponent sequences must be monotone")
    lprime, kprime = predicted_exponents(alg.m, alg.n, mp, np_, ls, ks)
    expected = predicted_monomials(alg, lprime, kprime)
    found = centralizer(alg, power_generators(alg, mp, np_, ls, ks))
    K = alg.ring
    unit = [{mono: K.one} for mono in expected]
    return [f.terms for f in found] == unit


def monotone_profiles(length: int, top: int):
    """Non-decreasing sequences of the given length with entries in 0..top."""
    if length == 0:
        yield ()
        return
    for rest in monotone_profiles(length - 1, top):
        lo = rest[-1] if rest else 0
        for v in range(lo, top + 1):
            yield rest + (v,)
