"""Command-line front end.

Exit status: 0 on success, 1 when a verification or identity check fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exactnum import format_rat, parse_rat, sigma
from .lattice import enumerate_sublattices, partition_moduli
from .local import MultipleFiber, RegularFiber, build_table
from .surface import gw0_series
from .surfacespec import SpecError, load_spec
from .taubes import gr_series_closed_side, gr_series_gw_side, read_F_cache, write_F_cache
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rat_arg(text):
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_sigma(args) -> int:
    print(sigma(args.d))
    return EXIT_OK


def cmd_sublattices(args) -> int:
    if args.d < 1:
        raise UsageError("--d must be >= 1")
    if args.m is not None:
        if args.m < 2:
            raise UsageError("--m must be >= 2")
        part = partition_moduli(args.m, args.d)
        if args.json:
            _emit(part.to_dict())
        else:
            for label, lats in (("plus", part.plus), ("minus", part.minus)):
                for L in lats:
                    print(f"{label} a={L.a} b={L.b} k={L.k}")
            print(f"counts plus={len(part.plus)} minus={len(part.minus)}")
        return EXIT_OK
    lats = enumerate_sublattices(args.d)
    if args.json:
        _emit([L.to_dict() for L in lats])
    else:
        for L in lats:
            print(f"a={L.a} b={L.b} k={L.k}")
    return EXIT_OK


def cmd_local_gw(args) -> int:
    if args.dmax < 1:
        raise UsageError("--dmax must be >= 1")
    if args.kind == "regular":
        kind = RegularFiber(1 if args.m is None else args.m)
    else:
        if args.m is None:
            raise UsageError("--kind multiple needs --m")
        kind = MultipleFiber(args.m)

    if args.method != "both":
        table = build_table(kind, args.dmax, args.method)
        print(table.to_json() if args.json else table.to_csv(), end="" if not args.json else "\n")
        return EXIT_OK

    closed = build_table(kind, args.dmax, "closed")
    assembled = build_table(kind, args.dmax, "assembly")
    rows, ok = [], True
    for kind_name, idx, d, value in closed.rows():
        other = assembled.entries[(kind, d)]
        agree = other == value
        ok &= agree
        rows.append((kind_name, idx, d, format_rat(value), format_rat(other), agree))
    if args.json:
        _emit([
            {"kind": k, "m_or_n": i, "d": d, "value": v, "assembly_value": a, "agree": g}
            for k, i, d, v, a, g in rows
        ])
    else:
        print("kind,m_or_n,d,value,assembly_value,agree")
        for k, i, d, v, a, g in rows:
            print(f"{k},{i},{d},{v},{a},{str(g).lower()}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gw0(args) -> int:
    spec = load_spec(args.spec)
    series = gw0_series(spec, args.bound)
    if args.collapsed:
        _emit(series.collapsed_records())
    else:
        _emit({"labels": list(spec.labels), "multiplicities": list(spec.multiplicities),
               "collapsed": series.collapsed_records(), "series": series.to_records()})
    return EXIT_OK


def cmd_gr(args) -> int:
    spec = load_spec(args.spec)
    fc = read_F_cache(args.f_cache) if args.f_cache else None
    out = {"labels": list(spec.labels), "multiplicities": list(spec.multiplicities)}
    status = EXIT_OK
    if args.side in ("gw", "both"):
        gw = gr_series_gw_side(spec, args.bound, fc=fc)
        out["gw"] = gw.to_records()
    if args.side in ("closed", "both"):
        closed = gr_series_closed_side(spec, args.bound)
        out["closed"] = closed.to_records()
    if args.side == "both":
        out["equal"] = gw == closed
        status = EXIT_OK if out["equal"] else EXIT_FAIL
    _emit(out)
    return status


def cmd_verify(args) -> int:
    rep = run_suite(args.suite)
    print(rep.summary())
    for f in rep.failures[:20]:
        print("  " + json.dumps(f, default=str))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_cache(args) -> int:
    if args.write_F < 1:
        raise UsageError("--write-F needs trunc >= 1")
    write_F_cache(args.write_F, args.path)
    print(f"wrote {args.write_F} coefficients of log F to {args.path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ellgw", description="Local GW invariants of elliptic fibers.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sigma", help="sum of divisors (0 off the positive integers)")
    s.add_argument("d", type=_rat_arg)
    s.set_defaults(func=cmd_sigma)

    s = sub.add_parser("sublattices", help="index-d sublattices of Z+iZ, optionally split for F_m")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sublattices)

    s = sub.add_parser("local-gw", help="table of local invariants for d = 1..dmax")
    s.add_argument("--kind", choices=["regular", "multiple"], required=True)
    s.add_argument("--m", type=int, help="multiplicity, or the weight n of n*F for --kind regular")
    s.add_argument("--dmax", type=int, required=True)
    s.add_argument("--method", choices=["closed", "assembly", "both"], default="closed")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_local_gw)

    s = sub.add_parser("gw0", help="surface generating function of dimension-zero invariants")
    s.add_argument("--spec", required=True)
    s.add_argument("--bound", type=_rat_arg, required=True)
    s.add_argument("--collapsed", action="store_true", help="only the t-degree collapsed view")
    s.set_defaults(func=cmd_gw0)

    s = sub.add_parser("gr", help="Gromov-Taubes / Seiberg-Witten series")
    s.add_argument("--spec", required=True)
    s.add_argument("--bound", type=_rat_arg, required=True)
    s.add_argument("--side", choices=["gw", "closed", "both"], default="both")
    s.add_argument("--f-cache", help="read log F coefficients from a cache file")
    s.set_defaults(func=cmd_gr)

    s = sub.add_parser("verify", help="run an invariant suite")
    s.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("cache", help="write the log F coefficient cache")
    s.add_argument("--write-F", dest="write_F", type=int, required=True, metavar="TRUNC")
    s.add_argument("--path", required=True)
    s.set_defaults(func=cmd_cache)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "bound", None) is not None and args.bound < 0:
        parser.error("--bound must be >= 0")
    try:
        return args.func(args)
    except (SpecError, UsageError, ValueError, OSError) as exc:
        print(f"ellgw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
