"""Command-line front end.

    galtower params Q N K
    galtower verify Q N K --suite {splitting,chains,identities,shifting,all}
    galtower lambda-table L_MAX

Exit codes: 0 when every check passes, 1 on a failed check, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import BadParameters, CapExceeded, GaltowerError, NotPrime
from .linpoly import DEFAULT_EXT_CAP
from .report import (
    SUITES,
    RunConfig,
    lambda_table,
    lambda_table_csv,
    lambda_table_json,
    lambda_table_pretty,
    params_csv,
    params_pretty,
    params_sheet,
    render,
    run_suite,
)
from .shifting import DEFAULT_Z_SAMPLES
from .tower import params_from

LAMBDA_TABLE_MAX = 1 << 16
FORMATS = ("csv", "json", "pretty")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="galtower", description="Verify recursive Galois towers over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_params=True, default_fmt="pretty"):
        if with_params:
            p.add_argument("q", type=int)
            p.add_argument("n", type=int)
            p.add_argument("k", type=int)
        p.add_argument("--format", choices=FORMATS, default=default_fmt, dest="fmt")
        p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("params", help="parameter sheet: (a, b), bounds, ramification")
    common(p)

    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--depth", type=_positive, default=3)
    v.add_argument("--trials", type=_positive, default=200)
    v.add_argument("--seed", type=_seed, default=0)
    v.add_argument("--ext-cap", type=_positive, default=DEFAULT_EXT_CAP)
    v.add_argument("--z-samples", type=_positive, default=DEFAULT_Z_SAMPLES)

    t = sub.add_parser("lambda-table", help="best lambda bound for every ell = q^n <= L_MAX")
    t.add_argument("l_max", type=int)
    t.add_argument("--all-k", action="store_true", help="one row per admissible k instead of the best")
    common(t, with_params=False, default_fmt="csv")
    return ap


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(msg: str) -> int:
    print(f"galtower: error: {msg}", file=sys.stderr)
    return 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "lambda-table":
        if not 4 <= args.l_max <= LAMBDA_TABLE_MAX:
            return _fail(f"l_max must be between 4 and {LAMBDA_TABLE_MAX}")
        rows = lambda_table(args.l_max, all_k=args.all_k)
        fmt = {"csv": lambda_table_csv, "json": lambda_table_json, "pretty": lambda_table_pretty}[args.fmt]
        _emit(fmt(rows), args.out)
        return 0

    try:
        params = params_from(args.q, args.n, args.k)
    except (BadParameters, NotPrime) as exc:
        return _fail(str(exc))

    if args.command == "params":
        if args.fmt == "json":
            text = json.dumps(params_sheet(params), sort_keys=True, indent=2) + "\n"
        elif args.fmt == "csv":
            text = params_csv(params)
        else:
            text = params_pretty(params)
        _emit(text, args.out)
        return 0

    cfg = RunConfig(
        command="verify", q=args.q, n=args.n, k=args.k, suite=args.suite, depth=args.depth,
        trials=args.trials, seed=args.seed, ext_cap=args.ext_cap, z_samples=args.z_samples,
        fmt=args.fmt, out=args.out,
    )
    try:
        rep = run_suite(params, cfg)
    except CapExceeded as exc:
        print(f"galtower: {exc}", file=sys.stderr)
        return 1
    except GaltowerError as exc:
        return _fail(str(exc))
    _emit(render(rep, args.fmt), args.out)
    return 0 if rep.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
