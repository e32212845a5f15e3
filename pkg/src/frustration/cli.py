"""Command-line entry point: ``frustration <command> ...``."""

from __future__ import annotations

import argparse
import csv
import sys

from .bench import Cell, format_table, run_sweep, ba_grid, write_sweep
from .bnb import SolveOptions, solve
from .export import export_lp, lp_constant, read_lp
from .formulation import add_fix_colour, add_triangle_cuts, build, set_branch_priorities, TWO_COLOUR
from .generators import GenSpec, generate
from .io import read_edge_list, report_row, write_edge_list, write_report_csv
from .oracle import OracleRefused, brute_force_L, brute_force_multicolour, brute_force_weighted
from .solver import frustration_index

_MODEL_NAMES = {"and": "and", "xor": "xor", "abs": "abs", "weighted": "weighted",
                "multik": "multicolour", "multicolour": "multicolour"}


def _options(args) -> SolveOptions:
    return SolveOptions(fix=args.fix, cuts=args.cuts, priorities=args.priorities == "on",
                        time_limit=args.time_limit, node_limit=args.node_limit, gap=args.gap,
                        backend=args.backend)


def _add_solve_flags(p):
    p.add_argument("--model", choices=sorted(_MODEL_NAMES), default="xor")
    p.add_argument("--k", type=int, default=2, help="colours for --model multik")
    p.add_argument("--fix", action=argparse.BooleanOptionalAction, default=True,
                   help="fix the colour of a maximum-degree node")
    p.add_argument("--cuts", choices=("lazy", "upfront", "off"), default="lazy")
    p.add_argument("--priorities", choices=("on", "off"), default="on")
    p.add_argument("--gap", type=float, default=0.0)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--backend", choices=("highs", "simplex"), default="highs")
    p.add_argument("--weighted", action="store_true", help="read real edge weights in [-1, 1]")


def cmd_generate(args) -> int:
    spec = GenSpec(args.model, args.n, rho=args.rho, m=args.m, attach=args.attach, neg_frac=args.neg_frac,
                   seed=args.seed, weighted=args.weighted)
    g = generate(spec)
    write_edge_list(g, args.out)
    print(f"wrote {args.out}: n={g.n} m={g.m} m_neg={g.m_neg} density={g.density():.4f}")
    return 0


def cmd_solve(args) -> int:
    inst = read_edge_list(args.file, weighted=args.weighted)
    g = inst.graph
    model = _MODEL_NAMES[args.model]
    rep = frustration_index(g, model, k=args.k, options=_options(args), preprocess=args.preprocess)
    print(f"instance={inst.name} n={g.n} m={g.m} m_neg={g.m_neg} model={rep.model}")
    print(rep.summary())
    if args.colouring and rep.incumbent is not None:
        labels = inst.labels
        for v, c in enumerate(rep.incumbent):
            print(f"{labels[v]} {c}")
    if args.csv:
        write_report_csv([report_row(inst.name, rep.model, g, rep)], args.csv)
    if args.trace:
        with open(args.trace, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["time", "lower_bound", "upper_bound"])
            for t, lb, ub in rep.trace:
                w.writerow([f"{t:.6f}", f"{lb:.6g}", f"{ub:.6g}"])
    return 0


def cmd_oracle(args) -> int:
    g = read_edge_list(args.file, weighted=args.weighted).graph
    try:
        if g.is_weighted:
            value, col = brute_force_weighted(g)
        elif args.k == 2:
            value, col = brute_force_L(g)
        else:
            value, col = brute_force_multicolour(g, args.k)
    except OracleRefused as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{value:g}")
    if args.colouring:
        print(" ".join(map(str, col)))
    return 0


def cmd_export(args) -> int:
    g = read_edge_list(args.file, weighted=args.weighted).graph
    model = build(g, _MODEL_NAMES[args.model], args.k)
    if args.fix:
        add_fix_colour(model, g)
    if args.priorities == "on":
        set_branch_priorities(model, g)
    if args.cuts != "off" and model.kind in TWO_COLOUR:
        add_triangle_cuts(model, g, args.cuts)
    export_lp(model, args.out, lazy=args.lazy)
    print(f"wrote {args.out}: {model.num_vars} variables, {model.num_constraints} constraints, "
          f"{len(model.cut_pool)} pooled cuts, objective constant {model.constant:g}")
    return 0


def cmd_external(args) -> int:
    """Add an exported file's objective constant back to an external solver's optimum."""
    print(f"{args.objective + lp_constant(args.file):g}")
    return 0


def cmd_solve_lp(args) -> int:
    model = read_lp(args.file)
    rep = solve(model, None, _options(args))
    print(rep.summary())
    return 0


def cmd_sweep(args) -> int:
    if args.grid == "ba":
        cells = ba_grid()
    else:
        if args.n is None or (args.m is None) == (args.rho is None):
            print("error: a custom grid needs --n and exactly one of --m / --rho", file=sys.stderr)
            return 2
        cells = [Cell(args.generator, args.n, m=args.m, rho=args.rho, neg_frac=f) for f in args.neg_frac]
    models = [_MODEL_NAMES[m] for m in args.models.split(",")]
    rep = run_sweep(cells, models, _options(args), args.reps, args.seed, args.workers, args.preprocess)
    write_sweep(rep, args.rows, args.table)
    print(format_table(rep.table), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frustration", description="Exact frustration index of signed graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded random signed graph")
    p.add_argument("--model", choices=("er", "ba"), required=True)
    p.add_argument("--n", type=int, required=True)
    size = p.add_mutually_exclusive_group(required=True)
    size.add_argument("--rho", type=float)
    size.add_argument("--m", type=int)
    size.add_argument("--attach", type=int)
    p.add_argument("--neg-frac", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="compute the frustration index of an edge-list file")
    p.add_argument("file")
    _add_solve_flags(p)
    p.add_argument("--no-preprocess", dest="preprocess", action="store_false")
    p.add_argument("--trace", metavar="FILE", help="write time,lower_bound,upper_bound rows")
    p.add_argument("--csv", metavar="FILE", help="write the report as one CSV row")
    p.add_argument("--colouring", action="store_true", help="print an optimal colouring")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exhaustive optimum for small graphs")
    p.add_argument("file")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--colouring", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export", help="write a model in LP format with a priority sidecar")
    p.add_argument("file")
    _add_solve_flags(p)
    p.add_argument("--lazy", choices=("constraints", "section", "omit"), default="constraints",
                   help="where pooled triangle cuts go")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("external", help="add an LP file's objective constant to an external optimum")
    p.add_argument("file")
    p.add_argument("objective", type=float)
    p.set_defaults(func=cmd_external)

    p = sub.add_parser("solve-lp", help="solve an exported LP file with the built-in branch and bound")
    p.add_argument("file")
    _add_solve_flags(p)
    p.set_defaults(func=cmd_solve_lp)

    p = sub.add_parser("sweep", help="benchmark sweep over random graphs")
    p.add_argument("--grid", choices=("ba", "custom"), default="custom")
    p.add_argument("--generator", choices=("er", "ba"), default="ba")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--rho", type=float)
    p.add_argument("--neg-frac", type=float, nargs="+", default=[0.3, 0.5, 0.7, 1.0])
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="base seed")
    p.add_argument("--models", default="and,xor,abs")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--preprocess", action="store_true")
    p.add_argument("--rows", metavar="FILE", help="per-instance CSV")
    p.add_argument("--table", metavar="FILE", help="aggregated CSV")
    for flag, kw in (("--fix", dict(action=argparse.BooleanOptionalAction, default=True)),
                     ("--cuts", dict(choices=("lazy", "upfront", "off"), default="lazy")),
                     ("--priorities", dict(choices=("on", "off"), default="on")),
                     ("--gap", dict(type=float, default=0.0)),
                     ("--time-limit", dict(type=float, default=None)),
                     ("--node-limit", dict(type=int, default=None)),
                     ("--backend", dict(choices=("highs", "simplex"), default="highs"))):
        p.add_argument(flag, **kw)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
