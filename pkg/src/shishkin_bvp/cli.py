"""Command-line front end.

    shishkin-bvp solve    --problem ex1 --eps1 5^-4 --eps2 2^-7 --N 1024 --out sol.csv
    shishkin-bvp mesh     --eps1 5^-4 --eps2 2^-7 --alpha 1 --N 64 --out mesh.csv
    shishkin-bvp reduced  --problem ex2 --M 1024 --out outer.csv
    shishkin-bvp table    --problem ex1 --eps-grid paper --N-list 128,256,512,1024,2048 --out table.csv
    shishkin-bvp validate --problem ex2

Real-valued options accept constant expressions such as ``5^-4``.  ``--out -``
(the default) writes to stdout.

Exit codes: 0 success, 2 usage or parse error, 3 validation failure,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from dataclasses import replace

import numpy as np

from . import convergence, mesh as meshmod
from .errors import ArgumentError, CatalogError, EvaluationError, NumericalFailure
from .expr import ExprField, ExprSyntaxError, eval_expression, parse_expression
from .problem import (BUILTIN_NAMES, COEFFICIENT_NAMES, DEFAULT_EPS1, DEFAULT_EPS2, TwoParamBVP,
                      builtin_problem, evaluate_field, validate_problem)
from .reduced import solve_reduced

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_NUMERICAL = 4


class _ValidationFailed(Exception):
    pass


def fmt(value: float) -> str:
    return f"{float(value):.17g}"


def real(text: str) -> float:
    """argparse type: a float literal or a constant expression like ``5^-4``."""
    try:
        return float(text)
    except ValueError:
        pass
    if "x" in text:
        raise argparse.ArgumentTypeError(f"invalid real {text!r}: constant expected")
    try:
        return eval_expression(parse_expression(text), 0.0)
    except (ExprSyntaxError, EvaluationError) as exc:
        raise argparse.ArgumentTypeError(f"invalid real {text!r}: {exc}") from None


def int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None


def eps_grid(text: str) -> list[tuple[float, float]]:
    if text == "paper":
        return convergence.paper_eps_grid()
    pairs = []
    for item in text.replace(";", ",").split(","):
        if not item.strip():
            continue
        try:
            e1, e2 = item.split(":")
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected eps1:eps2 pairs, got {item!r}") from None
        pairs.append((real(e1.strip()), real(e2.strip())))
    if not pairs:
        raise argparse.ArgumentTypeError("empty eps grid")
    return pairs


def _add_problem_options(p, with_eps=True):
    p.add_argument("--problem", default="ex1", choices=list(BUILTIN_NAMES) + ["custom"])
    if with_eps:
        p.add_argument("--eps1", type=real, default=DEFAULT_EPS1)
        p.add_argument("--eps2", type=real, default=DEFAULT_EPS2)
    for name in COEFFICIENT_NAMES:
        p.add_argument(f"--{name}", metavar="EXPR", help="coefficient expression in x (custom problems)")
    for name in ("l1", "l2", "r1", "r2"):
        p.add_argument(f"--{name}", type=real, default=None)
    p.add_argument("--alpha", type=real, default=None)
    p.add_argument("--beta", type=real, default=None,
                   help="coupling margin lower bound for custom problems (default: sampled minimum)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shishkin-bvp", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve on a Shishkin or uniform mesh, CSV x,u1,u2")
    _add_problem_options(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--mesh", choices=[meshmod.SHISHKIN, meshmod.UNIFORM], default=meshmod.SHISHKIN)
    p.add_argument("--out", default="-")

    p = sub.add_parser("mesh", help="dump Shishkin mesh points, CSV j,x,region")
    p.add_argument("--eps1", type=real, default=DEFAULT_EPS1)
    p.add_argument("--eps2", type=real, default=DEFAULT_EPS2)
    p.add_argument("--alpha", type=real, default=1.0)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", default="-")

    p = sub.add_parser("reduced", help="outer solution, CSV x,u1,u2")
    _add_problem_options(p)
    p.add_argument("--M", type=int, default=1024)
    p.add_argument("--out", default="-")

    p = sub.add_parser("table", help="two-mesh convergence table")
    _add_problem_options(p, with_eps=False)
    p.add_argument("--eps-grid", type=eps_grid, default="paper",
                   help="'paper' or comma-separated eps1:eps2 pairs")
    p.add_argument("--N-list", type=int_list, required=True)
    p.add_argument("--mesh", choices=[meshmod.SHISHKIN, meshmod.UNIFORM], default=meshmod.SHISHKIN)
    p.add_argument("--variant", choices=list(convergence.TWO_MESH_VARIANTS), default=convergence.INTERPOLATED)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default="-")

    p = sub.add_parser("validate", help="check coefficient assumptions")
    _add_problem_options(p)
    p.add_argument("--samples", type=int, default=1001)
    return parser


def problem_from_args(args, eps1=None, eps2=None) -> TwoParamBVP:
    eps1 = args.eps1 if eps1 is None else eps1
    eps2 = args.eps2 if eps2 is None else eps2
    overrides = {name: getattr(args, name) for name in COEFFICIENT_NAMES if getattr(args, name) is not None}
    bcs = [getattr(args, name) for name in ("l1", "l2", "r1", "r2")]

    if args.problem != "custom":
        if overrides:
            raise ArgumentError(f"coefficient options require --problem custom (got {', '.join(overrides)})")
        bvp = builtin_problem(args.problem, eps1, eps2)
        if args.alpha is not None or any(v is not None for v in bcs):
            l1, l2, r1, r2 = (d if v is None else v for v, d in zip(bcs, bvp.left_bc + bvp.right_bc))
            bvp = replace(bvp, alpha=bvp.alpha if args.alpha is None else args.alpha, left_bc=(l1, l2), right_bc=(r1, r2))
        return bvp

    missing = [name for name in COEFFICIENT_NAMES if name not in overrides]
    if missing:
        raise ArgumentError(f"custom problem needs --{', --'.join(missing)}")
    if args.alpha is None:
        raise ArgumentError("custom problem needs --alpha")
    fields = {name: ExprField(text) for name, text in overrides.items()}
    beta = args.beta
    if beta is None:
        x = np.linspace(0.0, 1.0, 1001)
        b = {name: evaluate_field(fields[name], x, name) for name in ("b11", "b12", "b21", "b22")}
        margin = min((b["b11"] - b["b12"]).min(), (b["b22"] - b["b21"]).min())
        if not margin > 0:
            raise _ValidationFailed(f"coupling margin b_ii - b_ij not positive (min {margin:g})")
        beta = float(margin)
    l1, l2, r1, r2 = (0.0 if v is None else v for v in bcs)
    return TwoParamBVP(eps1, eps2, **fields, left_bc=(l1, l2), right_bc=(r1, r2),
                       alpha=args.alpha, beta=beta, name="custom")


def _check(bvp: TwoParamBVP, err, samples=1001):
    report = validate_problem(bvp, samples)
    for w in report.warnings:
        print(f"warning: {w}", file=err)
    if not report.ok:
        raise _ValidationFailed("problem does not satisfy the coefficient assumptions")
    return report


@contextmanager
def _open_out(path, out):
    if path == "-":
        yield out
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_xy(fh, x, values):
    fh.write("x,u1,u2\n")
    for xj, (u1, u2) in zip(x, values):
        fh.write(f"{fmt(xj)},{fmt(u1)},{fmt(u2)}\n")


def cmd_solve(args, out, err):
    bvp = problem_from_args(args)
    _check(bvp, err)
    sol = convergence.solve_bvp(bvp, args.N, args.mesh)
    with _open_out(args.out, out) as fh:
        _write_xy(fh, sol.x, sol.values)


def cmd_mesh(args, out, err):
    m = meshmod.build_shishkin_mesh(args.eps1, args.eps2, args.alpha, args.N)
    with _open_out(args.out, out) as fh:
        fh.write("j,x,region\n")
        for j, xj in enumerate(m.points):
            fh.write(f"{j},{fmt(xj)},{m.region(j)}\n")


def cmd_reduced(args, out, err):
    bvp = problem_from_args(args)
    _check(bvp, err)
    rsol = solve_reduced(bvp, args.M)
    with _open_out(args.out, out) as fh:
        _write_xy(fh, rsol.grid, rsol.values)


def cmd_table(args, out, err):
    grid = args.eps_grid if isinstance(args.eps_grid, list) else eps_grid(args.eps_grid)
    problems = {}
    for e1, e2 in grid:
        problems[(e1, e2)] = bvp = problem_from_args(args, e1, e2)
        _check(bvp, err)
    report = convergence.uniform_table(lambda e1, e2: problems[(e1, e2)], grid, args.N_list,
                                       kind=args.mesh, variant=args.variant, max_workers=args.workers)
    with _open_out(args.out, out) as fh:
        write_table(report, fh)


def write_table(report: convergence.ConvergenceReport, fh):
    fh.write("eps1,eps2,N,D_eps_N\n")
    for r, (e1, e2) in enumerate(report.eps_grid):
        for c, n in enumerate(report.n_list):
            fh.write(f"{fmt(e1)},{fmt(e2)},{n},{fmt(report.d_eps_n[r, c])}\n")
    fh.write("D_N," + ",".join(fmt(v) for v in report.d_n) + "\n")
    fh.write("p_N," + ",".join(fmt(v) for v in report.p_n) + "\n")
    fh.write("C_pN," + ",".join(fmt(v) for v in report.c_p_n) + "\n")
    fh.write(f"# p_star={fmt(report.p_star)}\n")
    fh.write(f"# C_p_star={fmt(report.c_p_star)}\n")


def cmd_validate(args, out, err):
    bvp = problem_from_args(args)
    report = validate_problem(bvp, args.samples)
    print(f"alpha_estimate={fmt(report.alpha_estimate)}", file=out)
    print(f"beta_estimate={fmt(report.beta_estimate)}", file=out)
    print(f"offdiag_min={fmt(report.offdiag_min)}", file=out)
    print(f"sample_count={report.sample_count}", file=out)
    for w in report.warnings:
        print(f"warning: {w}", file=out)
    print(f"ok={'true' if report.ok else 'false'}", file=out)
    if not report.ok:
        raise _ValidationFailed("validation failed")


COMMANDS = {
    "solve": cmd_solve,
    "mesh": cmd_mesh,
    "reduced": cmd_reduced,
    "table": cmd_table,
    "validate": cmd_validate,
}


def run(argv, out=None, err=None) -> int:
    """Run one command and return its exit code (never raises SystemExit)."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        COMMANDS[args.command](args, out, err)
    except (ArgumentError, CatalogError, ExprSyntaxError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except _ValidationFailed as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    except (NumericalFailure, EvaluationError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
