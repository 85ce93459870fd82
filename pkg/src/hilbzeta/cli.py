"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 verification failure,
3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import kernels
from .axes import axes_hilb_class, axes_zeta
from .degeneration import WeightVector, choose_weight, verify_equinormalizable
from .errors import (
    GermInputError,
    HilbZetaError,
    NonStabilizingError,
    ResourceGuardError,
    TruncationError,
    VerificationError,
)
from .germ import invariants, parse_presentation
from .global_curve import GlobalCurveDesc, SmoothLocusDesc, curve_zeta
from .hilb_enum import DEFAULT_DIM_CAP, stratum_table
from .verification import PRESETS, default_dmax, run_suite
from .zeta_assembly import assemble_punctual_zeta, punctual_zeta_L, required_dmax

SERIES_PREVIEW = 8


def _load_germ(spec: str):
    if spec.startswith("@"):
        with open(spec[1:], encoding="utf-8") as fh:
            return parse_presentation(json.load(fh))
    return parse_presentation(spec)


def _emit(data, as_json: bool, text_lines):
    if as_json:
        print(json.dumps(data, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def cmd_analyze(args) -> int:
    pres = _load_germ(args.germ)
    inv = invariants(pres)
    data = {
        "germ": pres.name,
        "s": inv.s,
        "delta": inv.delta,
        "delta_i": list(inv.delta_i),
        "c": list(inv.conductor),
        "C": inv.big_c,
        "smooth": inv.smooth,
    }
    c_str = "(" + ",".join(str(x) for x in inv.conductor) + ")"
    text = [
        f"s={inv.s} δ={inv.delta} c={c_str} C={inv.big_c}"
        + (" [smooth]" if inv.smooth else ""),
        f"per-branch δ: {list(inv.delta_i)}",
    ]
    _emit(data, args.json, text)
    return 0


def cmd_strata(args) -> int:
    pres = _load_germ(args.germ)
    inv = invariants(pres)
    d_max = args.dmax if args.dmax is not None else default_dmax(inv, args.dim_cap)
    table = stratum_table(pres, args.q, d_max, inv, args.dim_cap)
    text = [f"strata of {pres.name} over F_{args.q}, d <= {d_max}:"]
    for d, a in sorted(table.entries):
        text.append(f"  d={d} a={list(a)}: {table.entries[(d, a)]}")
    _emit(table.to_json(), args.json, text)
    return 0


def cmd_zeta(args) -> int:
    pres = _load_germ(args.germ)
    inv = invariants(pres)
    d_max = args.dmax if args.dmax is not None else default_dmax(inv, args.dim_cap)
    needed = required_dmax(inv)
    if args.dmax is None and d_max < needed:
        from .hilb_enum import predicted_dim

        raise ResourceGuardError(
            f"assembling this zeta needs strata through d={needed} "
            f"(predicted quotient dimension {predicted_dim(inv, needed)}); "
            f"raise --dim-cap beyond {args.dim_cap}"
        )
    primes = _parse_primes(args.primes) if args.primes else None
    qs = primes if primes else [args.q]

    def table_for(q):
        return stratum_table(pres, q, d_max, inv, args.dim_cap)

    with ThreadPoolExecutor(max_workers=len(qs)) as pool:
        tables = dict(zip(qs, pool.map(table_for, qs)))
    per_prime = {q: assemble_punctual_zeta(tables[q], inv) for q in qs}

    data = {"germ": pres.name, "per_prime": {}, "conjectural": False}
    text = []
    for q in qs:
        z = per_prime[q].zeta
        series = [c.eval(q) for c in z.series(d_max + 1).coeffs]
        data["per_prime"][str(q)] = {"zeta": z.to_json(), "series": series}
        text.append(f"Z_{{{pres.name}}}(q={q}) = {z}")
        text.append(f"  series: {series} ...")
    if primes:
        result = punctual_zeta_L(pres, primes, inv, dim_cap=args.dim_cap)
        data["conjectural"] = result.conjectural
        data["diagnostics"] = result.diagnostics
        if result.zeta is not None:
            data["zeta_L"] = result.zeta.to_json()
            text.append(f"Z (conjectural in L) = {result.zeta}")
        else:
            text.extend("! " + d for d in result.diagnostics)
    _emit(data, args.json, text)
    return 0


def cmd_axes(args) -> int:
    z = axes_zeta(args.n)
    data = {"N": args.n, "zeta": z.to_json()}
    text = [f"Z_{{axes:{args.n}}} = {z}"]
    if args.d is not None:
        cls = axes_hilb_class(args.n, args.d)
        data["class"] = cls.to_json()
        data["d"] = args.d
        text.append(f"[Hilb^{args.d}] = {cls}")
    if args.euler:
        ser = z.specialize(1).series(SERIES_PREVIEW)
        data["euler_series"] = [c.eval(1) for c in ser.coeffs]
        text.append(f"Euler series: {data['euler_series']} ...")
    _emit(data, args.json, text)
    return 0


def cmd_verify(args) -> int:
    if args.germ:
        presentations = [_load_germ(args.germ)]
    else:
        presentations = [parse_presentation(name) for name in PRESETS]
    reports = [
        run_suite(pres, args.q, args.dmax, args.dim_cap) for pres in presentations
    ]
    data = [r.to_json() for r in reports]
    text = []
    for r in reports:
        text.extend(r.lines())
    ok = all(r.ok for r in reports)
    text.append("all checks passed" if ok else "VERIFICATION FAILED")
    _emit(data, args.json, text)
    return 0 if ok else 2


def cmd_degenerate(args) -> int:
    pres = _load_germ(args.germ)
    if args.weight:
        w = WeightVector(tuple(int(x) for x in args.weight.split(",")))
    else:
        w = choose_weight(pres)
    report = verify_equinormalizable(pres, w)
    text = [
        f"weight: {list(report.weight)}",
        f"exponent sets below conductor: {[sorted(s) for s in report.monomial.exponents_below]}",
        f"delta: source {report.delta_source}, monomial fiber {report.delta_monomial}",
        f"branches: {report.branches}",
        "equinormalizable: " + ("yes" if report.ok else "NO"),
    ]
    _emit(report.to_json(), args.json, text)
    return 0 if report.ok else 2


def cmd_global(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        config = json.load(fh)
    smooth = SmoothLocusDesc.from_json(config.get("smooth", []))
    factors = []
    for entry in config.get("singularities", []):
        if isinstance(entry, str) and entry.startswith("axes:"):
            factors.append(axes_zeta(int(entry.split(":")[1])))
            continue
        pres = (
            _load_germ(entry)
            if isinstance(entry, str)
            else parse_presentation(entry)
        )
        result = punctual_zeta_L(pres, tuple(_parse_primes(args.primes)))
        if result.zeta is None:
            raise VerificationError(
                f"punctual zeta of {pres.name} could not be computed exactly: "
                + "; ".join(result.diagnostics)
            )
        factors.append(result.zeta)
    z = curve_zeta(GlobalCurveDesc(smooth=smooth, singularities=tuple(factors)))
    series = z.series(SERIES_PREVIEW)
    data = {
        "zeta": z.to_json(),
        "series": [c.to_json() for c in series.coeffs],
    }
    text = [f"Z = {z}", f"series coefficients: {[str(c) for c in series.coeffs]}"]
    _emit(data, args.json, text)
    return 0


def _parse_primes(raw) -> list:
    if isinstance(raw, (list, tuple)):
        return list(raw)
    return [int(x) for x in str(raw).split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbzeta",
        description="Exact motivic Hilbert zeta functions of curve singularities "
        f"(linear algebra backend: {kernels.BACKEND})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def germ_arg(p, optional=False):
        if optional:
            p.add_argument("germ", nargs="?", help="preset, axes:N, semigroup:a,b, or @file.json")
        else:
            p.add_argument("germ", help="preset, axes:N, semigroup:a,b, or @file.json")

    def common(p, dmax=True):
        p.add_argument("--q", type=int, default=2, help="prime field size (default 2)")
        if dmax:
            p.add_argument("--dmax", type=int, default=None)
        p.add_argument("--dim-cap", type=int, default=DEFAULT_DIM_CAP)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("analyze", help="branch count, delta, conductor")
    germ_arg(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("strata", help="stratum table over F_q")
    germ_arg(p)
    common(p)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("zeta", help="punctual zeta, per prime and interpolated")
    germ_arg(p)
    common(p)
    p.add_argument("--primes", default=None, help="comma list, e.g. 2,3,5")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("axes", help="closed form for the coordinate axes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--euler", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_axes)

    p = sub.add_parser("verify", help="run the invariant suite")
    germ_arg(p, optional=True)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("degenerate", help="monomial degeneration report")
    germ_arg(p)
    p.add_argument("--weight", default=None, help="comma list, e.g. 1,2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_degenerate)

    p = sub.add_parser("global", help="global curve zeta from a config file")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--primes", default="2,3,5")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_global)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    except (
        GermInputError,
        NonStabilizingError,
        TruncationError,
        OSError,
        ValueError,
    ) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 1
    except HilbZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
