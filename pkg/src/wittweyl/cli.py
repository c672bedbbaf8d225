"""Command-line interface: structure polynomials, Witt polynomials, normal forms,
verification suites and splittings.

Exit codes: 0 success, 1 a verification case failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import exprlang
from .balgebra.core import BAlgebraCtx, CTABLE, c_typical
from .balgebra.checks import exp_commutation_series_check
from .balgebra.weyl import compute_c_weyl_oracle, has_integer_coefficients
from .exactnum import QQ, ZZ, is_prime, make_fraction_field, make_prime_field
from .polyring import IndexSet
from .witt import witt_neg_poly, witt_prod_poly, witt_sum_poly
from .symbolalg import (SymbolAlgebra, azumaya_desk_check, center, centralizer_formula_check,
                        classical_symbol_iso_check, falling_factorial_check,
                        fv_adjoint_structure_check, generic_field, monotone_profiles,
                        power_commutator_check, power_commutator_vanishing_check,
                        random_element, replay, simplicity_reduce, split_zero_symbol,
                        symbol_opposite_check, symbol_shift_check, symbol_triple_check,
                        triples_decrease)
from .symbolalg.theorems import ad_power_identity_check

SUITES = ("basis", "center", "prop32", "centralizer", "simplicity", "thm46", "thm52",
          "azumaya", "classical")


class ConfigError(ValueError):
    pass


@dataclass
class CliConfig:
    command: str
    p: int = 2
    m: int = 1
    n: int = 1
    seed: int = 0
    cases: int = 100
    jobs: int = 1
    suite: str | None = None
    params: str = "auto"
    fmt: str = "json"

    def validate(self) -> None:
        if not is_prime(self.p):
            raise ConfigError(f"--p {self.p} is not prime")
        if self.m < 0 or self.n < 0:
            raise ConfigError("--m and --n must be nonnegative")
        if self.cases < 1 or self.jobs < 1:
            raise ConfigError("--cases and --jobs must be positive")
        if self.suite is not None and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")


# output -----------------------------------------------------------------------


def _emit(payload, fmt: str, pretty) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(pretty(payload))


def _c_entry(m: int, n: int, p: int = 0) -> dict:
    """c_{m,n} with both route flags; for p > 0, m and n are p-typical labels."""
    um, un = (p ** m, p ** n) if p else (m, n)
    lam = CTABLE.get(um, un)
    oracle = compute_c_weyl_oracle(um, un)
    agree = oracle.terms == lam.terms
    poly = c_typical(p, m, n) if p else lam
    return {"m": m, "n": n, "poly": poly.to_json(), "text": poly.to_str(),
            "cross_check": agree, "integral": has_integer_coefficients(oracle)}


def cmd_cmn(args) -> int:
    p = args.p if args.ptypical else 0
    if p and not is_prime(p):
        raise ConfigError(f"--p {p} is not prime")
    lo = 0 if p else 1
    if args.table:
        if args.max is None or args.max < 1:
            raise ConfigError("--table needs --max >= 1")
        rng = range(lo, lo + args.max)
        entries = [_c_entry(m, n, p) for m in rng for n in rng]
        payload = {"ptypical": p, "entries": entries} if p else {"entries": entries}
    else:
        if args.m is None or args.n is None:
            raise ConfigError("cmn needs --m and --n (or --table --max)")
        if args.m < lo or args.n < lo:
            raise ConfigError(f"indices must be at least {lo}")
        entries = [_c_entry(args.m, args.n, p)]
        payload = entries[0]

    def pretty(_):
        return "\n".join(f"c_{{{e['m']},{e['n']}}} = {e['text']}"
                         f"   [routes agree: {e['cross_check']}, integral: {e['integral']}]"
                         for e in entries)

    _emit(payload, args.format, pretty)
    return 0 if all(e["cross_check"] and e["integral"] for e in entries) else 2


def cmd_wittpoly(args) -> int:
    p = 0
    if args.typical:
        p = args.p
        if not is_prime(p):
            raise ConfigError(f"--p {p} is not prime")
        if args.n < 0:
            raise ConfigError("--n must be nonnegative")
    elif args.n < 1:
        raise ConfigError("--n must be positive")
    make = {"sum": witt_sum_poly, "prod": witt_prod_poly, "neg": witt_neg_poly}[args.op]
    poly = make(args.n, p)
    _emit(poly.to_json(), args.format, lambda _: poly.to_str())
    return 0


def _split_list(text: str | None) -> list[str]:
    return [] if not text else [t.strip() for t in text.split(",")]


def _scalar_names(texts) -> list[str]:
    names: list[str] = []
    for t in texts:
        for node in _walk(exprlang.parse(t)):
            if isinstance(node, exprlang.Scalar) and node.name not in names:
                names.append(node.name)
    return names


def _walk(node):
    yield node
    for attr in ("operand", "left", "right", "base"):
        child = getattr(node, attr, None)
        if child is not None:
            yield from _walk(child)


def _symbol_context(p: int, m: int, n: int, a_text: str | None,
                    b_text: str | None) -> SymbolAlgebra:
    """A((a,b)) over F_p(names appearing in a and b)."""
    a_items = _split_list(a_text) or [f"a{i}" for i in range(m)]
    b_items = _split_list(b_text) or [f"b{j}" for j in range(n)]
    if len(a_items) != m or len(b_items) != n:
        raise ConfigError(f"--a needs {m} and --b needs {n} components")
    names = _scalar_names(a_items + b_items)
    K = make_fraction_field(make_prime_field(p), names)
    scalars = SymbolAlgebra(K, 0, 0, [], [])
    a = [exprlang.evaluate_text(t, scalars).scalar_value() for t in a_items]
    b = [exprlang.evaluate_text(t, scalars).scalar_value() for t in b_items]
    return SymbolAlgebra(K, m, n, a, b)


def _universal_context(text: str, ring_name: str, bound: int | None):
    ring = {"ZZ": ZZ, "QQ": QQ}.get(ring_name)
    if ring is None:
        if not ring_name.isdigit() or not is_prime(int(ring_name)):
            raise ConfigError(f"--ring must be ZZ, QQ or a prime, not {ring_name!r}")
        ring = make_prime_field(int(ring_name))
    top = max([g.index for g in _walk(exprlang.parse(text)) if isinstance(g, exprlang.Gen)],
              default=1)
    return BAlgebraCtx.universal(ring, IndexSet.upto(max(top, bound or 1)))


def cmd_nf(args) -> int:
    if args.universal:
        ctx = _universal_context(args.expr, args.ring, args.max)
        desc = {"algebra": "B", "ring": repr(ctx.ring), "P": list(ctx.P.positions)}
    else:
        if not is_prime(args.p):
            raise ConfigError(f"--p {args.p} is not prime")
        ctx = _symbol_context(args.p, args.m, args.n, args.a, args.b)
        desc = {"algebra": "A", "p": args.p, "m": args.m, "n": args.n,
                "a": [ctx.ring.to_str(v) for v in ctx.a], "b": [ctx.ring.to_str(v) for v in ctx.b]}
    elem = exprlang.evaluate_text(args.expr, ctx)
    payload = {"context": desc, "input": args.expr, "normal_form": elem.to_str(),
               "terms": elem.to_json()}
    _emit(payload, args.format, lambda d: d["normal_form"])
    return 0


def cmd_split(args) -> int:
    if not is_prime(args.p):
        raise ConfigError(f"--p {args.p} is not prime")
    rep = split_zero_symbol(args.p, args.m, args.n)
    payload = rep.to_json()
    payload["span_dimension"] = rep.span_dimension()

    def pretty(d):
        lines = [f"module dimension {d['dimension']}, span {d['span_dimension']}"]
        for block in ("x", "y"):
            for lab, M in d[block].items():
                lines.append(f"{block}{lab} ->")
                lines += ["  " + " ".join(row) for row in M]
        return "\n".join(lines)

    _emit(payload, args.format, pretty)
    return 0


# verification suites ------------------------------------------------------------


def _generic(p: int, m: int, n: int, extra=()):
    return generic_field(p, m, n, extra)


def _concrete(p: int, m: int, n: int):
    K = make_prime_field(p)
    a = [K.one if i == 0 else K.zero for i in range(m)]
    b = [K.one if j == n - 1 else K.zero for j in range(n)]
    return K, a, b


def _params(cfg: CliConfig):
    use_generic = cfg.params == "generic" or (cfg.params == "auto" and cfg.m * cfg.n <= 2)
    make = _generic if use_generic else _concrete
    return ("generic" if use_generic else "concrete", *make(cfg.p, cfg.m, cfg.n))


def _algebra(cfg: CliConfig):
    kind, K, a, b = _params(cfg)
    return kind, SymbolAlgebra(K, cfg.m, cfg.n, a, b)


def _case_ids(cfg: CliConfig) -> list:
    """Independent case descriptors for a suite; each is run by ``_run_case``."""
    m, n = cfg.m, cfg.n
    s = cfg.suite
    if s == "prop32":
        top = max(m, n)
        return [("prop32", i, j, k, l) for i in range(m) for j in range(n)
                for k in range(top + 1) for l in range(top + 1)]
    if s == "centralizer":
        return [("centralizer", mp, np_, ls, ks) for mp in range(m + 1) for np_ in range(n + 1)
                for ls in monotone_profiles(mp, n) for ks in monotone_profiles(np_, m)]
    if s == "simplicity":
        return [("simplicity", c) for c in range(cfg.cases)]
    if s == "basis":
        return [("basis", "dimension"), ("basis", "closure")]
    if s == "thm46":
        out = [("thm46", "i-trivial"), ("thm46", "i"), ("thm46", "iii")]
        if m == n:
            out += [("thm46", "iv"), ("thm46", "iv-degenerate")]
        return out
    if s == "thm52":
        return [("thm52", "Fa"), ("thm52", "Vb")] if n >= 1 else []
    if s == "classical":
        return [("classical", "artin-schreier"), ("classical", "falling-factorial"),
                ("classical", "ad-power"), ("classical", "series")]
    return [(s, "main")]


def _case_name(case) -> str:
    return "/".join(str(c) for c in case[1:]) if len(case) > 1 else case[0]


def _run_case(cfg: CliConfig, case) -> dict:
    p, m, n = cfg.p, cfg.m, cfg.n
    suite = case[0]
    out: dict = {}
    if suite == "basis":
        _, A = _algebra(cfg)
        if case[1] == "dimension":
            size = len(A.basis())
            out = {"basis_size": size, "expected": A.dimension, "passed": size == A.dimension}
        else:
            rng = random.Random(cfg.seed)
            ok = True
            for _ in range(min(cfg.cases, 50)):
                u, v = random_element(A, rng), random_element(A, rng)
                ok = ok and all(A.is_reduced(mono) for mono in (u * v).terms)
            out = {"products_checked": min(cfg.cases, 50), "passed": ok}
    elif suite == "center":
        kind, A = _algebra(cfg)
        basis = center(A)
        ok = len(basis) == 1 and basis[0] == A.one
        out = {"parameters": kind, "center_dimension": len(basis), "passed": ok}
    elif suite == "prop32":
        K, a, b = _generic(p, m, n)
        A = SymbolAlgebra(K, m, n, a, b)
        _, i, j, k, l = case
        out = {"passed": power_commutator_check(A, i, j, k, l)
               and power_commutator_vanishing_check(A, i, j, k, l)}
    elif suite == "centralizer":
        _, A = _algebra(cfg)
        _, mp, np_, ls, ks = case
        out = {"passed": centralizer_formula_check(A, mp, np_, ls, ks)}
    elif suite == "simplicity":
        _, A = _algebra(cfg)
        seed = cfg.seed * 1_000_003 + case[1]
        alpha = random_element(A, random.Random(seed))
        trace = simplicity_reduce(A, alpha, seed=seed)
        ok = (not A.ring.is_zero(trace.scalar) and triples_decrease(trace)
              and replay(A, alpha, trace))
        out = {"input": alpha.to_str(), "trace": trace.to_json(A.ring), "passed": ok}
    elif suite == "thm46":
        K, a, b = _generic(p, m, n, [f"c{i}" for i in range(m)] + [f"d{j}" for j in range(n)])
        g = K.gens() if m + n else {}
        c = [g[f"c{i}"] for i in range(m)]
        d = [g[f"d{j}"] for j in range(n)]
        what = case[1]
        if what == "i-trivial":
            ok = symbol_shift_check(K, m, n, a, b, [K.zero] * m, [K.zero] * n)
        elif what == "i":
            ok = symbol_shift_check(K, m, n, a, b, c, d)
        elif what == "iii":
            ok = symbol_opposite_check(K, m, n, a, b)
        else:
            ok = symbol_triple_check(*_iv_params(p, n, degenerate=(what != "iv")))
        out = {"passed": ok}
    elif suite == "thm52":
        K, a, b = _generic(p, m, n)
        b_in = b if case[1] == "Fa" else b[:n - 1]
        report = fv_adjoint_structure_check(K, m, n, a, b_in, case[1])
        out = {"report": report, "passed": report["passed"]}
    elif suite == "azumaya":
        out = {"passed": azumaya_desk_check(p, m, n)}
    elif suite == "classical":
        K = make_fraction_field(make_prime_field(p), ["a", "b"])
        g = K.gens()
        A = SymbolAlgebra(K, 1, 1, [g["a"]], [g["b"]])
        what = case[1]
        if what == "artin-schreier":
            xy = A.x(0) * A.y(0)
            ok = (xy ** p - xy == A.scalar(K.mul(g["a"], g["b"]))
                  and classical_symbol_iso_check(K, g["a"], g["b"]))
        elif what == "falling-factorial":
            ok = all(falling_factorial_check(A, k) for k in range(1, p))
        elif what == "ad-power":
            ok = all(ad_power_identity_check(A.y(0), A.x(0), k) for k in range(1, p + 1))
        else:
            ok = exp_commutation_series_check(6)
        out = {"passed": ok}
    return {"id": _case_name(case), **out}


def _iv_params(p: int, n: int, degenerate: bool):
    names = [f"{v}{i}" for v in "abc" for i in range(n)]
    K = make_fraction_field(make_prime_field(p), names)
    g = K.gens()
    a = [g[f"a{i}"] for i in range(n)]
    b = [g[f"b{i}"] for i in range(n)]
    c = [K.zero] * n if degenerate else [g[f"c{i}"] for i in range(n)]
    return K, n, a, b, c


def _run_case_safe(cfg: CliConfig, case) -> dict:
    try:
        return _run_case(cfg, case)
    except Exception as exc:  # a crash inside a case is a failed case, not a crash of the run
        return {"id": _case_name(case), "passed": False, "error": f"{type(exc).__name__}: {exc}"}


def run_suite(cfg: CliConfig) -> dict:
    cases = _case_ids(cfg)
    if cfg.jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_case_safe, [cfg] * len(cases), cases))
    else:
        results = [_run_case_safe(cfg, c) for c in cases]
    order = {_case_name(c): k for k, c in enumerate(cases)}
    results.sort(key=lambda r: order[r["id"]])
    return {"suite": cfg.suite, "p": cfg.p, "m": cfg.m, "n": cfg.n, "seed": cfg.seed,
            "cases": results, "passed": all(r["passed"] for r in results)}


def cmd_verify(args) -> int:
    cfg = CliConfig("verify", p=args.p, m=args.m, n=args.n, seed=args.seed, cases=args.cases,
                    jobs=args.jobs, suite=args.suite, params=args.params, fmt=args.format)
    cfg.validate()
    report = run_suite(cfg)

    def pretty(r):
        lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {r['suite']} {c['id']}"
                 + (f"  ({c['error']})" if "error" in c else "") for c in r["cases"]]
        ok = sum(c["passed"] for c in r["cases"])
        lines.append(f"{ok}/{len(r['cases'])} cases passed")
        return "\n".join(lines)

    _emit(report, args.format, pretty)
    return 0 if report["passed"] else 1


# argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "pretty"), default="json")
    sizes = argparse.ArgumentParser(add_help=False)
    sizes.add_argument("--p", type=int, default=2, help="characteristic (default 2)")
    sizes.add_argument("--m", type=int, default=1, help="length of the x family (default 1)")
    sizes.add_argument("--n", type=int, default=1, help="length of the y family (default 1)")

    parser = argparse.ArgumentParser(prog="wittweyl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cmn", parents=[common], help="structure polynomial c_{m,n}")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--ptypical", action="store_true", help="m, n are p-typical labels")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--table", action="store_true", help="all entries up to --max")
    p.add_argument("--max", type=int)
    p.set_defaults(func=cmd_cmn)

    p = sub.add_parser("wittpoly", parents=[common], help="Witt sum/product/negation polynomial")
    p.add_argument("--op", choices=("sum", "prod", "neg"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--typical", action="store_true", help="p-typical index and renaming")
    p.set_defaults(func=cmd_wittpoly)

    p = sub.add_parser("nf", parents=[common, sizes], help="normal form of an expression")
    p.add_argument("expr")
    p.add_argument("--a", help="comma-separated components of a (default a0,a1,...)")
    p.add_argument("--b", help="comma-separated components of b (default b0,b1,...)")
    p.add_argument("--universal", action="store_true", help="evaluate in universal B")
    p.add_argument("--ring", default="ZZ", help="ZZ, QQ or a prime (with --universal)")
    p.add_argument("--max", type=int, help="truncation bound for --universal")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("verify", parents=[common, sizes], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--params", choices=("auto", "generic", "concrete"), default="auto",
                   help="parameter field: generic transcendentals or concrete F_p values")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("split", parents=[common, sizes], help="matrix splitting of A((0,0))")
    p.set_defaults(func=cmd_split)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, exprlang.ExprSyntaxError, exprlang.UnknownSymbol, ValueError,
            KeyError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
