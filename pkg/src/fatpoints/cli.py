"""Command-line front end.

Subcommands mirror the classic interactive entry points: per-degree
tables (`hilb`, `res`, `oracle`), single characters (`alpha`, `tau`,
`beta`, `psi`), the semigroup decomposition of one class (`decomp`),
and the full bound suite (`bounds`).  Every command accepts either
`--mults m1,m2,...` or `--uniform N:M`, prints a human-readable report
by default and a canonical JSON document with `--json` (integers and
p/q strings only, fixed key order, byte-stable under parse/re-serialize).

Exit codes: 0 success, 2 usage error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import alpha_bounds as ab
from . import tau_bounds as tb
from .hilbert import (beta_expected, exactness_flag, find_alpha, find_tau,
                      hilbert_table)
from .lattice import DivisorClass, FatPointSpec, decompose
from .oracle import DEFAULT_PRIME, PointConfig, actual_hilbert, actual_nu
from .report import BoundReport
from .resolution import betti_table


def _parse_mults(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed multiplicity list: {text!r}")


def _parse_uniform(text: str) -> tuple[int, int]:
    try:
        n, m = text.split(":")
        return int(n), int(m)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N:M, got {text!r}")


def _parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")


def _parse_weights(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed weight list: {text!r}")


def _add_input_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mults", type=_parse_mults,
                   help="comma-separated multiplicities m1,m2,...")
    g.add_argument("--uniform", type=_parse_uniform, metavar="N:M",
                   help="N general points of equal multiplicity M")
    p.add_argument("--json", action="store_true", help="structured output")


def _spec_of(args) -> FatPointSpec:
    if args.mults is not None:
        return FatPointSpec(args.mults)
    n, m = args.uniform
    if n < 0 or m < 0:
        raise ValueError("uniform input needs N >= 0 and M >= 0")
    return FatPointSpec((m,) * n)


def _input_block(z: FatPointSpec) -> dict:
    return {"mults": list(z.mults), "n": z.n}


def canonical_json(obj) -> str:
    """The one serializer both emit and round-trip tests use."""
    return json.dumps(obj, indent=2, separators=(",", ": ")) + "\n"


def _report_json(z: FatPointSpec, rep: BoundReport) -> dict:
    params = {}
    for k, v in rep.params:
        params[k] = list(v) if isinstance(v, tuple) else v
    return {
        "input": _input_block(z),
        "method": rep.method,
        "direction": rep.direction,
        "value": rep.value,
        "params": params,
        "validity": list(rep.validity),
    }


def _value_report(z: FatPointSpec, method: str, value: int,
                  validity: tuple[str, ...] = ()) -> BoundReport:
    return BoundReport(method, exactness_flag(z.n), value, (), validity)


def _print_report(rep: BoundReport) -> None:
    def fmt(v):
        return ",".join(str(x) for x in v) if isinstance(v, tuple) else v
    extra = ""
    if rep.params:
        extra = " [" + ", ".join(f"{k}={fmt(v)}" for k, v in rep.params) + "]"
    note = f"  ({'; '.join(rep.validity)})" if rep.validity else ""
    print(f"  {rep.method}{extra}: {rep.value}{note}")


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_single(args, kind: str) -> int:
    z = _spec_of(args)
    if kind == "alpha":
        value, method = find_alpha(z), "expected-alpha"
    elif kind == "tau":
        value, method = find_tau(z), "expected-tau"
    elif kind == "beta":
        value, method = beta_expected(z), "expected-beta"
    else:
        rep = ab.semigroup_alpha_bound(z)
        value, method = rep.value, rep.method
    validity = () if z.n <= 9 or kind == "psi" else ("SHGH-conditional",)
    rep = BoundReport(method, "alpha-lower" if kind == "psi" else exactness_flag(z.n),
                      value, (), validity)
    if args.json:
        sys.stdout.write(canonical_json(_report_json(z, rep)))
    else:
        label = "Value" if z.n <= 9 else "Expected value (SHGH)"
        if kind == "psi":
            label = "Lower bound via semigroup membership"
        print(f"{label} of {kind if kind != 'psi' else 'alpha'}: {value}")
    return 0


def _cmd_hilb(args) -> int:
    z = _spec_of(args)
    lo, hi = (args.window or (None, None))
    table = hilbert_table(z, lo, hi)
    if args.json:
        doc = {
            "input": _input_block(z),
            "method": "hilbert-table",
            "direction": table.exactness,
            "alpha": table.alpha,
            "tau": table.tau,
            "rows": [[t, v] for t, v in table.rows],
        }
        sys.stdout.write(canonical_json(doc))
        return 0
    print(f"alpha = {table.alpha}, tau = {table.tau}  ({table.exactness})")
    print(" t    dim I_t")
    for t, v in table.rows:
        print(f"{t:3d}   {v}")
    return 0


def _cmd_res(args) -> int:
    z = _spec_of(args)
    table = betti_table(z)
    if args.json:
        doc = {
            "input": _input_block(z),
            "method": "betti-table",
            "direction": "exact",
            "alpha": table.alpha,
            "tau": table.tau,
            "rows": [list(r) for r in table.rows],
        }
        sys.stdout.write(canonical_json(doc))
        return 0
    print(f"alpha = {table.alpha}, tau = {table.tau}")
    print("  t     h   nu    s")
    for t, h, nu, s in table.rows:
        print(f"{t:3d} {h:5d} {nu:4d} {s:4d}")
    return 0


def _cmd_decomp(args) -> int:
    z = _spec_of(args)
    if args.t is None:
        raise ValueError("decomp needs a degree: pass --t")
    f = DivisorClass(args.t, z.mults)
    dec = decompose(f)
    if args.json:
        doc = {
            "input": _input_block(z),
            "method": "semigroup-decomposition",
            "degree": args.t,
            "in_semigroup": dec.in_semigroup,
            "moving_part": None if dec.moving_part is None else
                {"degree": dec.moving_part.degree, "mults": list(dec.moving_part.mults)},
            "fixed_part": [
                {"degree": v.degree, "mults": list(v.mults), "multiplicity": k}
                for v, k in dec.fixed_part
            ],
        }
        sys.stdout.write(canonical_json(doc))
        return 0
    if not dec.in_semigroup:
        print(f"{f} is not in the exceptional semigroup")
        return 0
    print(f"{f} is in the exceptional semigroup")
    print(f"moving part: {dec.moving_part}")
    if dec.fixed_part:
        for v, k in dec.fixed_part:
            print(f"fixed component: {k} x {v}")
    else:
        print("no fixed components")
    return 0


def _cmd_oracle(args) -> int:
    z = _spec_of(args)
    cfg = PointConfig.random(z.n, seed=args.seed, prime=args.prime)
    if args.window is not None:
        lo, hi = args.window
    elif args.t is not None:
        lo = hi = args.t
    else:
        lo, hi = max(0, find_alpha(z) - 1), find_tau(z) + 1
    rows = []
    for t in range(lo, hi + 1):
        row = [t, actual_hilbert(cfg, z, t)]
        if args.nu:
            row.append(actual_nu(cfg, z, t))
        rows.append(row)
    if args.json:
        doc = {
            "input": _input_block(z),
            "method": "interpolation-oracle",
            "prime": args.prime,
            "seed": args.seed,
            "columns": ["t", "dim"] + (["nu"] if args.nu else []),
            "rows": rows,
        }
        sys.stdout.write(canonical_json(doc))
        return 0
    header = " t    dim" + ("    nu" if args.nu else "")
    print(f"random points mod {args.prime}, seed {args.seed}")
    print(header)
    for row in rows:
        print("".join(f"{x:6d}" for x in row))
    return 0


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("THREADS", "1")))
    except ValueError:
        return 1


def _run_methods(makers) -> list[BoundReport]:
    """Evaluate bound thunks, skipping inapplicable ones; order is fixed."""
    workers = _threads()
    def run(make):
        try:
            return make()
        except ValueError:
            return None
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, makers))
    else:
        results = [run(make) for make in makers]
    return [r for r in results if r is not None]


def _alpha_methods(z: FatPointSpec) -> list:
    mults = z.mults
    positive = sorted((m for m in mults if m > 0), reverse=True)
    n = len(positive)
    makers = [lambda: ab.semigroup_alpha_bound(mults),
              lambda: ab.roe_alpha(mults)]
    if n >= 1:
        ra, da = ab.best_rd_a(n)
        rb, db = ab.best_rd_b(n)
        makers += [
            lambda: ab.nef_variant_bound(positive, "a", ra, da),
            lambda: ab.nef_variant_bound(positive, "b", rb, db),
            lambda: ab.best_variant_d_search(positive),
            lambda: _best_of(ab.modified_unloading_alpha, positive, (ra, da), (rb, db),
                             pick=max),
            lambda: ab.best_unloading_search(positive),
        ]
    return makers


def _tau_methods(z: FatPointSpec) -> list:
    mults = z.mults
    positive = sorted((m for m in mults if m > 0), reverse=True)
    n = len(positive)
    makers = [lambda: tb.hirschowitz_tau(mults),
              lambda: tb.gimigliano_tau(mults),
              lambda: tb.catalisano_tau(mults)]
    if n >= 2:
        makers.append(lambda: tb.roe_tau(positive))
    if n >= 1:
        ra, da = ab.best_rd_a(n)
        rb, db = ab.best_rd_b(n)
        makers.append(lambda: _best_of(tb.modified_unloading_tau, positive,
                                       (ra, da), (rb, db), pick=min))
    return makers


def _sqrt_rd(n: int) -> tuple[int, int]:
    # d = floor(sqrt(n)) with the least r >= d*sqrt(n): the standard
    # parameter choice for the closed-form modified-unloading bounds.
    d = max(1, math.isqrt(n))
    r = d * d
    while r * r < d * d * n:
        r += 1
    return min(r, n), d


def _uniform_extra_alpha(n: int, m: int) -> list:
    ra, da = ab.best_rd_a(n)
    rf, df = _sqrt_rd(n)
    makers = [
        lambda: ab.unloading_alpha((m,) * n, ra, da),
        lambda: ab.modified_unloading_alpha_formula_a(n, m, rf, df),
        lambda: ab.modified_unloading_alpha_formula_b(n, m, min(n, df * df), df),
    ]
    if n > 9 and m >= 1:
        makers.append(lambda: ab.nagata_reference(n, m))
    return makers


def _uniform_extra_tau(n: int, m: int) -> list:
    makers = []
    if n > 9 and m >= 1:
        makers += [lambda: tb.segre_tau(n, m), lambda: tb.cubic_tau(n, m)]
    if n >= 9:
        makers.append(lambda: tb.sqrt_specialization_tau(n, m))
    rf, df = _sqrt_rd(n)
    makers.append(lambda: tb.modified_unloading_tau_formula_a(n, m, rf, df))
    makers.append(lambda: tb.modified_unloading_tau_formula_b(n, m, min(n, df * df), df))
    if n > 9 and m >= 1:
        ra, da = ab.best_rd_a(n)
        rb, db = ab.best_rd_b(n)
        makers.append(lambda: tb.ran_tau(n, m, max(Fraction(n * da, ra),
                                                   Fraction(rb, db))))
    return makers


def _best_of(fn, mults, *rds, pick) -> BoundReport:
    reports = []
    for r, d in rds:
        try:
            reports.append(fn(mults, r, d))
        except ValueError:
            continue
    if not reports:
        raise ValueError("no applicable (r, d) choice")
    return pick(reports, key=lambda rep: rep.value)


def _requested_methods(z: FatPointSpec, args) -> tuple[list, list]:
    # Explicit --r/--d/--j/--weights run the parameterized methods at
    # exactly those parameters, alongside the default sweep.
    alpha_makers, tau_makers = [], []
    mults = z.mults
    if args.weights is not None:
        if args.r is None or args.d is None:
            raise ValueError("--weights needs --r and --d")
        alpha_makers.append(
            lambda: ab.nef_test_bound(mults, args.weights, args.r, args.d))
    if args.r is not None or args.d is not None:
        if args.r is None or args.d is None:
            raise ValueError("method parameters need both --r and --d")
        alpha_makers += [
            lambda: ab.unloading_alpha(mults, args.r, args.d),
            lambda: ab.modified_unloading_alpha(mults, args.r, args.d),
        ]
        if args.j is not None:
            alpha_makers.append(
                lambda: ab.nef_variant_bound(mults, "d", args.r, args.d, j=args.j))
        tau_makers.append(
            lambda: tb.modified_unloading_tau(mults, args.r, args.d))
    elif args.j is not None:
        raise ValueError("--j needs --r and --d")
    return alpha_makers, tau_makers


def _cmd_bounds(args) -> int:
    z = _spec_of(args)
    exact = z.n <= 9
    label = "Value" if exact else "Expected value (SHGH)"
    ea, et = find_alpha(z), find_tau(z)
    requested_alpha, requested_tau = _requested_methods(z, args)
    alpha_makers = requested_alpha + _alpha_methods(z)
    tau_makers = _tau_methods(z) + requested_tau
    if z.n > 0 and z.is_uniform() and z.mults[0] > 0:
        alpha_makers += _uniform_extra_alpha(z.n, z.mults[0])
        tau_makers += _uniform_extra_tau(z.n, z.mults[0])
    alpha_reports = _run_methods(alpha_makers)
    tau_reports = _run_methods(tau_makers)
    if args.json:
        docs = [_report_json(z, _value_report(z, "expected-alpha", ea))]
        docs += [_report_json(z, rep) for rep in alpha_reports]
        docs.append(_report_json(z, _value_report(z, "expected-tau", et)))
        docs += [_report_json(z, rep) for rep in tau_reports]
        sys.stdout.write(canonical_json(docs))
        return 0
    print(f"n = {z.n} general points, multiplicities {list(z.mults)}")
    print(f"{label} of alpha: {ea}")
    if not exact:
        print("  note: the expected value is an upper bound for alpha")
    print("Lower bounds on alpha:")
    for rep in alpha_reports:
        _print_report(rep)
    print(f"{label} of tau: {et}")
    if not exact:
        print("  note: the expected value is a lower bound for tau")
    print("Upper bounds on tau:")
    for rep in tau_reports:
        _print_report(rep)
    return 0


# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="fatpoints",
        description="numerical characters of fat-point subschemes of the plane")
    sub = top.add_subparsers(dest="command", required=True)

    for name, help_text in [("alpha", "least degree of a curve through the scheme"),
                            ("tau", "least degree of independent conditions"),
                            ("beta", "least degree with zero-dimensional base locus"),
                            ("psi", "semigroup-membership lower bound on alpha")]:
        p = sub.add_parser(name, help=help_text)
        _add_input_args(p)
        p.set_defaults(func=lambda a, kind=name: _cmd_single(a, kind))

    p = sub.add_parser("hilb", help="expected Hilbert-function table")
    _add_input_args(p)
    p.add_argument("--window", type=_parse_window, metavar="LO:HI")
    p.set_defaults(func=_cmd_hilb)

    p = sub.add_parser("res", help="Betti numbers for up to 8 points")
    _add_input_args(p)
    p.set_defaults(func=_cmd_res)

    p = sub.add_parser("decomp", help="semigroup decomposition of one class")
    _add_input_args(p)
    p.add_argument("--t", type=int, help="degree of the class")
    p.set_defaults(func=_cmd_decomp)

    p = sub.add_parser("bounds", help="run the full bound suite")
    _add_input_args(p)
    p.add_argument("--r", type=int, help="curve passes through the first r points")
    p.add_argument("--d", type=int, help="degree of the unloading curve")
    p.add_argument("--j", type=int, help="tail width for the prefix-spread family")
    p.add_argument("--weights", type=_parse_weights,
                   help="full nef weight vector a0,a1,...,an (rationals allowed)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("oracle", help="finite-field interpolation oracle")
    _add_input_args(p)
    p.add_argument("--window", type=_parse_window, metavar="LO:HI")
    p.add_argument("--t", type=int, help="single degree")
    p.add_argument("--nu", action="store_true", help="also report generator counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.set_defaults(func=_cmd_oracle)
    return top


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
