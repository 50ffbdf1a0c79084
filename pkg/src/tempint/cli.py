"""Command-line interface.

Subcommands: oracle, fit, eval, compare, tables, list.  Output is
deterministic: fixed grid order and no randomness anywhere, so
identical invocations produce byte-identical results.

Exit codes: 0 success; 2 domain/validation error; 3 fit did not
converge; 4 fit converged but with a pole warning (the coefficient
file is still written); 5 a table-reproduction cell is out of
tolerance.
"""

from __future__ import annotations

import argparse
import os
import sys

from tempint import harness, models, tables
from tempint.fitter import FitGrid, FitProblem, bisect_fit
from tempint.harness import EvalGrid
from tempint.models import ModelDomainError
from tempint.oracle import DomainError, EvalPoint, OracleError, g_cf, h, h_series
from tempint.rational import ParseError, PoleError, load_coeffs, save_coeffs

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NOT_CONVERGED = 3
EXIT_POLE_WARNING = 4
EXIT_TABLE_MISMATCH = 5


def _threads_cap() -> int | None:
    """TEMPINT_THREADS caps internal parallelism; evaluation is currently
    sequential, so the cap is validated and retained for forward use."""
    raw = os.environ.get("TEMPINT_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise SystemExit(f"TEMPINT_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise SystemExit("TEMPINT_THREADS must be >= 1")
    return n


def _write_output(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_oracle(args) -> int:
    point = EvalPoint(args.m, args.x)
    g_val = g_cf(point)
    h_val = h(point)
    print(f"g({args.m:g}, {args.x:g}) = {g_val!r}")
    print(f"h({args.m:g}, {args.x:g}) = {h_val!r}")
    if args.series_terms is not None:
        k = args.series_terms
        lo = h_series(point, k)
        hi = h_series(point, k + 1)
        print(f"series[{k}] = {lo!r}")
        print(f"series[{k + 1}] = {hi!r}")
    return EXIT_OK


def cmd_fit(args) -> int:
    grid = EvalGrid.from_spec(args.grid)
    fit_grid = FitGrid.from_eval_grid(grid)
    problem = FitProblem(degree=args.degree, grid=fit_grid,
                         weighting=args.mode,
                         bisection_tol_rel=args.tol)
    result = bisect_fit(problem)
    save_coeffs(result.approximant, args.out)
    _write_output(result.report_text(), args.out + ".report")
    print(f"wrote {args.out} (u* in [{result.u_minus:.6E}, "
          f"{result.u_plus:.6E}], achieved_dev {result.achieved_dev:.6E})")
    if not result.converged:
        print("warning: bisection did not converge", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    if result.pole_warning:
        print("warning: denominator not positive on verification grid",
              file=sys.stderr)
        return EXIT_POLE_WARNING
    return EXIT_OK


def _resolve_eval_model(args):
    if args.coeffs:
        return load_coeffs(args.coeffs)
    models.model_info(args.model)
    return args.model


def cmd_eval(args) -> int:
    grid = EvalGrid.from_spec(args.grid)
    model = _resolve_eval_model(args)
    rep = harness.report(model, grid)
    if args.format == "csv":
        text = harness.render_per_point_csv(rep)
    else:
        text = harness.render_comparison_text([rep])
    _write_output(text, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    grid = EvalGrid.from_spec(args.grid)
    tags = harness.resolve_model_list(args.models, grid)
    for tag in tags:
        models.model_info(tag)
    reports = harness.compare(tags, grid)
    if args.format == "csv":
        text = harness.render_comparison_csv(reports)
    else:
        text = harness.render_comparison_text(reports)
    _write_output(text, args.out)
    return EXIT_OK


def cmd_tables(args) -> int:
    cells, ordered = tables.reproduce_all()
    failures = [c for c in cells if not c.ok]
    if args.format == "csv":
        lines = ["table,row,column,expected,actual,tolerance,status"]
        for c in cells:
            lines.append(f"{c.table},{c.row},{c.column},{c.expected!r},"
                         f"{c.actual!r},{c.tolerance!r},"
                         f"{'pass' if c.ok else 'fail'}")
        text = "\n".join(lines) + "\n"
    else:
        chunks = []
        for name in ("table5", "table7", "table10"):
            chunks.append(f"== {name} ==")
            chunks.extend(c.line() for c in cells if c.table == name)
        status = "PASS" if ordered else "FAIL"
        chunks.append(f"[{status}] table7 ordering G4 < G3 < O < J < SY")
        text = "\n".join(chunks) + "\n"
    _write_output(text, args.out)
    if failures or not ordered:
        for c in failures:
            print(c.line(), file=sys.stderr)
        if not ordered:
            print("[FAIL] table7 ordering G4 < G3 < O < J < SY",
                  file=sys.stderr)
        return EXIT_TABLE_MISMATCH
    return EXIT_OK


def cmd_list(args) -> int:
    infos = models.list_models(args.m)
    print(f"{'tag':<5} {'m-domain':<22} {'univariate':<11} citation")
    for info in infos:
        domain = {"any": "[-4, 4]",
                  "zero": "m = 0 only",
                  "tabulated": str(sorted(models.X_MODEL_ROWS)),
                  }[info.m_domain]
        print(f"{info.tag:<5} {domain:<22} {str(info.univariate).lower():<11} "
              f"{info.citation}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tempint",
        description="General temperature integral: oracle, minimax rational "
                    "fitting, and model benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="evaluate g(m, x) and h(m, x)")
    p.add_argument("-m", type=float, required=True)
    p.add_argument("-x", type=float, required=True)
    p.add_argument("--series-terms", type=int, default=None,
                   help="also print the asymptotic series bracket")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fit", help="fit a minimax rational approximant")
    p.add_argument("--degree", type=int, required=True, choices=range(1, 7))
    p.add_argument("--grid", default="paper-eval",
                   help="preset name or m=lo:hi:step,x=lo:hi:step")
    p.add_argument("--mode", choices=("relative", "absolute"),
                   default="relative")
    p.add_argument("--tol", type=float, default=1e-4,
                   help="relative bisection stopping tolerance")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("eval", help="deviation report for one model")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", help="model tag (see 'list')")
    group.add_argument("--coeffs", help="coefficient file of a fitted "
                                        "approximant")
    p.add_argument("--grid", default="paper-eval")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="rank models by max deviation")
    p.add_argument("--models", default="all",
                   help="comma-separated tags, or 'all'")
    p.add_argument("--grid", default="paper-eval")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("tables", help="reproduce the published accuracy "
                                      "tables and gate each cell")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("list", help="list models and their m-domains")
    p.add_argument("--m", type=float, default=None,
                   help="only models defined at this m")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    _threads_cap()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ModelDomainError, ParseError, PoleError,
            OracleError, KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_DOMAIN


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
