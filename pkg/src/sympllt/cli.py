"""Command-line interface.

Exit codes: 0 success, 1 bound violated, 2 usage error, 3 numerical
failure.  All configuration is flags; no environment variables.
"""

import argparse
import sys

from . import diagnostics, matio, testmat
from .errors import (DimensionError, FactorError, ParseError, SingularError,
                     SympLLTError, UsageError)
from .symplectic import BlockPartition, algorithm_w1, algorithm_w2

USAGE_EXIT = 2
NUMERICAL_EXIT = 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="sympllt",
        description="Block LL^T factorization experiments for SPD matrices "
                    "with symplectic structure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a test matrix and write it to a file")
    gen.add_argument("--family", required=True,
                     choices=["minij", "hyperbolic", "hyperbolic-inverse", "pascal", "diagt",
                              "random"])
    gen.add_argument("--theta", type=float, default=3.0)
    gen.add_argument("--n", type=int, default=6)
    gen.add_argument("--t", type=float, default=1e6)
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("--out", required=True)

    fac = sub.add_parser("factor", help="factor a matrix file, write the block factor")
    fac.add_argument("--alg", required=True, choices=["w1", "w2"])
    fac.add_argument("--in", dest="infile", required=True)
    fac.add_argument("--out", required=True)

    diag = sub.add_parser("diagnose", help="print all diagnostics for one matrix")
    diag.add_argument("--family",
                      choices=["minij", "hyperbolic", "hyperbolic-inverse", "pascal", "diagt",
                               "random"])
    diag.add_argument("--theta", type=float, default=3.0)
    diag.add_argument("--n", type=int, default=6)
    diag.add_argument("--t", type=float, default=1e6)
    diag.add_argument("--seed", type=int, default=1)
    diag.add_argument("--in", dest="infile")
    diag.add_argument("--csv")

    tab = sub.add_parser("table", help="recompute one of the three report tables")
    tab.add_argument("--id", type=int, required=True, choices=[1, 2, 3])
    tab.add_argument("--csv")

    sweep = sub.add_parser("sweep", help="diagnostics over a range of sizes")
    sweep.add_argument("--family", default="random", choices=["random", "pascal"])
    sweep.add_argument("--from", dest="n_from", type=int, required=True)
    sweep.add_argument("--to", dest="n_to", type=int, required=True)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--csv", required=True)

    chk = sub.add_parser("check", help="run the full bound-check suite")
    chk.add_argument("--scope", default="all")
    chk.add_argument("--inject-w2-fault", action="store_true",
                     help="corrupt the computed w2 factor to prove the "
                          "backward check can fail (self-test)")
    return parser


def _generate(args):
    fam = args.family
    if fam == "minij":
        return testmat.minij()
    if fam == "hyperbolic":
        return testmat.hyperbolic_spd(args.theta)
    if fam == "hyperbolic-inverse":
        return testmat.hyperbolic_spd_inverse(args.theta)
    if fam == "pascal":
        return testmat.pascal_symplectic(args.n).assemble()
    if fam == "diagt":
        return testmat.diag_family(args.t, args.theta)[1]
    if fam == "random":
        return testmat.random_pdp(args.n, args.seed).assemble()
    raise UsageError(f"unknown family {fam!r}")


def _cmd_gen(args):
    matio.write_matrix(args.out, _generate(args))
    return 0


def _cmd_factor(args):
    a = matio.read_matrix(args.infile)
    p = BlockPartition.from_matrix(a)
    f = algorithm_w1(p) if args.alg == "w1" else algorithm_w2(p)
    matio.write_matrix(args.out, f.assemble())
    return 0


def _cmd_diagnose(args):
    if args.infile:
        matrix = matio.read_matrix(args.infile)
        family, param = "file", 0.0
    elif args.family:
        matrix = _generate(args)
        family = args.family
        param = {"hyperbolic": args.theta, "hyperbolic-inverse": args.theta, "diagt": args.t,
                 "pascal": args.n, "random": args.n}.get(family, 0.0)
    else:
        raise UsageError("diagnose needs --family or --in")
    row = diagnostics.diagnose(matrix, family, param)
    print(diagnostics.format_table([row]))
    if args.csv:
        diagnostics.write_csv(args.csv, [row])
    if not row.ok:
        print(f"factorization failed: {row.error}", file=sys.stderr)
        return NUMERICAL_EXIT
    return 0


def _cmd_table(args):
    rows = diagnostics.run_table(args.id)
    print(diagnostics.format_table(rows, title=f"table {args.id}"))
    if args.csv:
        diagnostics.write_csv(args.csv, rows)
    return 0 if all(r.ok for r in rows) else NUMERICAL_EXIT


def _cmd_sweep(args):
    rows = diagnostics.run_sweep(args.family, args.n_from, args.n_to, args.seed)
    diagnostics.write_csv(args.csv, rows)
    bad = [r for r in rows if not r.ok]
    print(f"wrote {len(rows)} rows to {args.csv}"
          + (f" ({len(bad)} failed rows marked NaN)" if bad else ""))
    return 0 if not bad else NUMERICAL_EXIT


def _cmd_check(args):
    report = diagnostics.run_checks(scope=args.scope,
                                    inject_w2_fault=args.inject_w2_fault)
    print(report.describe())
    return report.exit_code


_COMMANDS = {
    "gen": _cmd_gen,
    "factor": _cmd_factor,
    "diagnose": _cmd_diagnose,
    "table": _cmd_table,
    "sweep": _cmd_sweep,
    "check": _cmd_check,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ParseError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (FactorError, SingularError, SympLLTError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_EXIT


if __name__ == "__main__":
    sys.exit(main())
