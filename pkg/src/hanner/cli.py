"""Command-line front end.

Subcommands: certify, signmap, hanner, hunt, selftest.  Exit codes: 0 success,
1 usage error, 2 mathematical violation, 3 I/O failure.  Every subcommand
takes --seed and echoes the seed it used; reports are byte-stable given
identical flags and seed (HANNER_THREADS only changes the worker count).
"""

import argparse
import json
import sys

from .errors import ContractError, DomainError, ResourceError
from .explorer import SweepConfig, certify_regime, emit_report, open_range_hunt, sign_map
from .inequalities import (
    STATUS_FAIL,
    load_step_functions,
    theorem_check,
)
from .integrate import gauss_jacobi_rule
from .selftest import run_selftest

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad flags; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=0, help="random seed (echoed; reports are reproducible given it)")


def build_parser():
    parser = _Parser(prog="hanner", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cert = subs.add_parser("certify", help="certify Hessian verdicts in a proven regime")
    cert.add_argument("--p", type=float, required=True, help="norm exponent p >= 1")
    cert.add_argument("--d", type=int, required=True, help="sphere dimension d >= 1")
    cert.add_argument("--n", type=int, required=True, help="number of weights n >= 1")
    cert.add_argument("--trials", type=int, default=50, help="random weight vectors to test")
    cert.add_argument("--tol", type=float, default=1e-8, help="verdict tolerance (scaled by matrix size)")
    cert.add_argument("--m", type=int, default=24, help="quadrature size")
    cert.add_argument("--mc-samples", type=int, default=2_000_000, help="Monte Carlo samples per witness confirmation")
    cert.add_argument("--out", default=None, help="report path (written always if given, and on violation)")
    cert.add_argument("--format", choices=("json", "csv"), default="json")
    cert.add_argument("--open-range", action="store_true", help="allow sweeping outside the proven regimes")
    _add_common(cert)
    cert.set_defaults(func=cmd_certify)

    smap = subs.add_parser("signmap", help="map the signs of the cross expectations E_kl")
    smap.add_argument("--p", type=float, required=True)
    smap.add_argument("--d", type=int, required=True)
    smap.add_argument("--n", type=int, required=True)
    smap.add_argument("--grid-step", type=float, default=0.1, help="simplex grid resolution")
    smap.add_argument("--m", type=int, default=24, help="quadrature size")
    smap.add_argument("--mc-samples", type=int, default=2_000_000)
    smap.add_argument("--tol", type=float, default=1e-8)
    smap.add_argument("--out", required=True, help="output file")
    smap.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(smap)
    smap.set_defaults(func=cmd_signmap)

    han = subs.add_parser("hanner", help="check the inequality on step functions from a JSON file")
    han.add_argument("--functions", required=True, help="JSON: array of step functions, each [[len, val], ...]")
    han.add_argument("--p", type=float, required=True)
    han.add_argument("--d", type=int, required=True)
    han.add_argument("--m", type=int, default=32, help="quadrature size")
    han.add_argument("--tol", type=float, default=1e-9)
    _add_common(han)
    han.set_defaults(func=cmd_hanner)

    hunt = subs.add_parser("hunt", help="hunt wrong-sign witnesses in the open ranges")
    hunt.add_argument("--p", type=float, required=True)
    hunt.add_argument("--d", type=int, required=True)
    hunt.add_argument("--n", type=int, required=True)
    hunt.add_argument("--grid-step", type=float, default=None, help="simplex grid step (default: random sampling)")
    hunt.add_argument("--trials", type=int, default=50)
    hunt.add_argument("--m", type=int, default=24)
    hunt.add_argument("--mc-samples", type=int, default=2_000_000)
    hunt.add_argument("--tol", type=float, default=1e-8)
    hunt.add_argument("--out", default=None)
    hunt.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(hunt)
    hunt.set_defaults(func=cmd_hunt)

    st = subs.add_parser("selftest", help="run the golden-value suite")
    st.add_argument("--filter", default=None, help="restrict to one suite (e.g. specfun)")
    st.add_argument("--inject-bad-beta", action="store_true", help=argparse.SUPPRESS)
    _add_common(st)
    st.set_defaults(func=cmd_selftest)

    return parser


def cmd_certify(args):
    print(f"seed: {args.seed}")
    cfg = SweepConfig(
        p_values=(args.p,),
        d_values=(args.d,),
        n_values=(args.n,),
        x_mode="random",
        trials=args.trials,
        quad_m=args.m,
        mc_samples=args.mc_samples,
        seed=args.seed,
        tol=args.tol,
        open_range=args.open_range,
    )
    report = certify_regime(cfg)
    counts = report.summary["verdict_counts"]
    violations = report.summary["violations"]
    print(f"points: {report.summary['points']}  verdicts: {counts}")
    print(
        f"eigenvalue range (relative): [{report.summary['min_eigenvalue_rel']!r}, "
        f"{report.summary['max_eigenvalue_rel']!r}]"
    )
    out = args.out
    if violations and out is None:
        out = "certify_report.json"
    if out is not None:
        emit_report(report, out, args.format)
        print(f"report: {out}")
    if violations:
        print(f"VIOLATIONS: {len(violations)} point(s) failed confirmation")
        return EXIT_VIOLATION
    print("all verdicts match the expected regime")
    return EXIT_OK


def cmd_signmap(args):
    print(f"seed: {args.seed}")
    cfg = SweepConfig(
        p_values=(args.p,),
        d_values=(args.d,),
        n_values=(args.n,),
        x_mode="simplex",
        grid_step=args.grid_step,
        quad_m=args.m,
        mc_samples=args.mc_samples,
        seed=args.seed,
        tol=args.tol,
    )
    smap = sign_map(cfg)
    emit_report(smap, args.out, args.format)
    s = smap.summary
    print(f"points: {s['points']}  E_kl range: [{s['min_ekl']!r}, {s['max_ekl']!r}]")
    print(f"confirmed wrong-sign witnesses: {s['confirmed_witnesses']}")
    print(f"report: {args.out}")
    return EXIT_OK


def cmd_hanner(args):
    print(f"seed: {args.seed}")
    try:
        with open(args.functions, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: cannot read {args.functions}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        fs = load_step_functions(text)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at position {exc.pos} (line {exc.lineno}, column {exc.colno}): {exc.msg}",
              file=sys.stderr)
        return EXIT_USAGE
    except (TypeError, ValueError) as exc:
        print(f"error: invalid step-function data: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rule = gauss_jacobi_rule(args.m, args.d) if args.d >= 2 else None
    res = theorem_check(fs, args.p, args.d, rule, tol=args.tol)
    print(f"lhs:     {res.lhs!r}")
    print(f"rhs:     {res.rhs!r}")
    print(f"margin:  {res.margin!r} ({res.direction} direction)")
    print(f"verdict: {res.status}")
    return EXIT_VIOLATION if res.status == STATUS_FAIL else EXIT_OK


def cmd_hunt(args):
    print(f"seed: {args.seed}")
    cfg = SweepConfig(
        p_values=(args.p,),
        d_values=(args.d,),
        n_values=(args.n,),
        x_mode="simplex" if args.grid_step is not None else "random",
        grid_step=args.grid_step if args.grid_step is not None else 0.1,
        trials=args.trials,
        quad_m=args.m,
        mc_samples=args.mc_samples,
        seed=args.seed,
        tol=args.tol,
    )
    report = open_range_hunt(cfg)
    s = report.summary
    print(f"points: {s['points']}  confirmed wrong-sign witnesses: {s['confirmed_witnesses']}")
    if s["confirmed_witnesses"]:
        print(f"hessian verdicts at witnesses: {s['hessian_verdicts_at_witnesses']}")
    else:
        print("no wrong-sign witness found at this resolution")
    if args.out is not None:
        emit_report(report, args.out, args.format)
        print(f"report: {args.out}")
    return EXIT_OK


def cmd_selftest(args):
    print(f"seed: {args.seed}")
    _, failed = run_selftest(suite_filter=args.filter, inject_bad_beta=args.inject_bad_beta)
    return EXIT_OK if failed == 0 else EXIT_VIOLATION


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
