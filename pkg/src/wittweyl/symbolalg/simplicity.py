"""Constructive simplicity: drive a nonzero element to a nonzero scalar by commutators.

Phase 1 removes the x-variables with brackets [y_l^{p^k}, .]; phase 2 then
removes the y-variables with brackets [., x_k^{p^l}].  Triples are chosen as
(largest index, smallest p-adic valuation, largest unit part) and must strictly
decrease in the order that compares (t0, -t1, t2) lexicographically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..balgebra.core import commutator
from .algebra import QuotElement, SymbolAlgebra


class ZeroInput(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    phase: int
    triple: tuple
    operator: str

    def to_json(self) -> dict:
        return {"phase": self.phase, "triple": list(self.triple), "operator": self.operator}


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    scalar: object = None
    seed: int | None = None

    def to_json(self, K) -> dict:
        out = {"steps": [s.to_json() for s in self.steps], "scalar": K.to_str(self.scalar)}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _valuation(v: int, p: int) -> int:
    k = 0
    while v % p == 0:
        v //= p
        k += 1
    return k


def triple_key(t: tuple) -> tuple:
    return (t[0], -t[1], t[2])


def _select(exps: list, p: int):
    """(largest index used, smallest valuation there, largest unit part) or None."""
    used = [i for e in exps for i, v in enumerate(e) if v]
    if not used:
        return None
    k = max(used)
    vals = [(_valuation(e[k], p), e[k]) for e in exps if e[k]]
    l = min(v for v, _ in vals)
    q = max(x // p ** l for v, x in vals if v == l)
    return (k, l, q)


def _x_exps(alg: SymbolAlgebra, elem: QuotElement) -> list:
    out = set()
    for xe, _ in elem.terms:
        d = dict(xe)
        out.add(tuple(d.get(alg.p ** i, 0) for i in range(alg.m)))
    return sorted(out)


def _y_exps(alg: SymbolAlgebra, elem: QuotElement) -> list:
    out = set()
    for _, ye in elem.terms:
        d = dict(ye)
        out.add(tuple(d.get(alg.p ** j, 0) for j in range(alg.n)))
    return sorted(out)


def phase_operator(alg: SymbolAlgebra, phase: int, triple: tuple):
    """The bracket applied for a selected triple, with its printed name."""
    p = alg.p
    if phase == 1:
        k, l, _ = triple
        g = alg.y(l, p ** k)
        return (lambda a: commutator(g, a)), f"[y_{l}^{{p^{k}}},·]"
    l, k, _ = triple
    g = alg.x(k, p ** l)
    return (lambda a: commutator(a, g)), f"[·,x_{k}^{{p^{l}}}]"


def simplicity_reduce(alg: SymbolAlgebra, alpha: QuotElement,
                      seed: int | None = None) -> ReductionTrace:
    if alpha.is_zero():
        raise ZeroInput("the reduction needs a nonzero element")
    trace = ReductionTrace(seed=seed)
    for phase, exps in ((1, _x_exps), (2, _y_exps)):
        prev = None
        while True:
            t = _select(exps(alg, alpha), alg.p)
            if t is None:
                break
            if prev is not None and not triple_key(t) < triple_key(prev):
                raise AssertionError(f"triple {t} does not decrease from {prev}")
            op, name = phase_operator(alg, phase, t)
            alpha = op(alpha)
            if alpha.is_zero():
                raise AssertionError(f"reduction hit zero at phase {phase}, triple {t}")
            trace.steps.append(Step(phase, t, name))
            prev = t
    trace.scalar = alpha.scalar_value()
    return trace


def replay(alg: SymbolAlgebra, alpha: QuotElement, trace: ReductionTrace) -> bool:
    """Re-apply the recorded brackets and confirm the recorded scalar."""
    for step in trace.steps:
        op, name = phase_operator(alg, step.phase, step.triple)
        if name != step.operator:
            return False
        alpha = op(alpha)
    return alpha.is_scalar() and alpha.scalar_value() == trace.scalar


def triples_decrease(trace: ReductionTrace) -> bool:
    for phase in (1, 2):
        keys = [triple_key(s.triple) for s in trace.steps if s.phase == phase]
        if any(not b < a for a, b in zip(keys, keys[1:])):
            return False
    return True


def coefficient_pool(alg: SymbolAlgebra) -> list:
    K = alg.ring
    pool = [K.one]
    if hasattr(K, "gens"):
        g = list(K.gens().values())
        pool += g + [K.add(v, K.one) for v in g]
        if len(g) > 1:
            pool.append(K.mul(g[0], g[-1]))
    else:
        pool += [K.from_int(c) for c in range(2, K.characteristic)]
    return pool


def random_element(alg: SymbolAlgebra, rng: random.Random, max_terms: int = 6) -> QuotElement:
    """Nonzero element with at most ``max_terms`` basis monomials."""
    basis = alg.basis()
    pool = coefficient_pool(alg)
    k = rng.randint(1, min(max_terms, len(basis)))
    monos = rng.sample(basis, k)
    return alg.element({mono: rng.choice(pool) for mono in monos})
