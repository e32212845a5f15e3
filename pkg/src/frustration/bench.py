"""Benchmark sweeps over random instances with per-cell aggregation."""

from __future__ import annotations

import csv
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .bnb import OPTIMAL, SolveOptions, solve
from .formulation import build
from .generators import GenSpec, generate
from .solver import frustration_index

SWEEP_COLUMNS = ("cell", "generator", "n", "m", "neg_frac", "seed", "instance", "model", "m_neg", "density",
                 "optimum", "lower_bound", "root_objective", "nodes", "branching_factor", "time", "status",
                 "time_limited")
TABLE_COLUMNS = ("cell", "generator", "n", "m", "density", "neg_frac", "instances", "mean_optimum", "model",
                 "time_mean", "time_sd", "nodes_mean", "time_limited")

# the grid of the published BA sweep: (n, m) pairs crossed with negative fractions
BA_SIZES = ((60, 539), (60, 884), (70, 741), (70, 1209))
BA_NEG_FRACS = (0.3, 0.5, 0.7, 1.0)


@dataclass(frozen=True)
class Cell:
    """One sweep cell: a generator setting repeated over several seeds."""

    generator: str
    n: int
    m: int | None = None
    rho: float | None = None
    neg_frac: float = 0.5

    def spec(self, seed: int) -> GenSpec:
        return GenSpec(self.generator, self.n, rho=self.rho, m=self.m, neg_frac=self.neg_frac, seed=seed)

    @property
    def label(self) -> str:
        size = f"m={self.m}" if self.m is not None else f"rho={self.rho}"
        return f"{self.generator}-n={self.n}-{size}-neg={self.neg_frac}"


def ba_grid(sizes=BA_SIZES, neg_fracs=BA_NEG_FRACS) -> list[Cell]:
    return [Cell("ba", n, m=m, neg_frac=f) for n, m in sizes for f in neg_fracs]


def cell_seeds(cell_index: int, repetitions: int, base_seed: int = 0) -> list[int]:
    """Seeds used for a cell; recorded in every row so instances can be replayed."""
    return [base_seed + 1000 * cell_index + r for r in range(repetitions)]


@dataclass
class SweepReport:
    rows: list[dict] = field(default_factory=list)
    table: list[dict] = field(default_factory=list)


def _solve_one(g, model, options, preprocess):
    if preprocess:
        rep = frustration_index(g, model, options=options)
        return rep, rep.time
    mdl = build(g, model)
    t0 = time.perf_counter()
    rep = solve(mdl, g, options)
    return rep, time.perf_counter() - t0


def _run_cell(args) -> list[dict]:
    idx, cell, models, options, seeds, preprocess = args
    rows = []
    for seed in seeds:
        g = generate(cell.spec(seed))
        name = f"{cell.label}-seed={seed}"
        for model in models:
            rep, elapsed = _solve_one(g, model, options, preprocess)
            rows.append({
                "cell": idx, "generator": cell.generator, "n": g.n, "m": g.m, "neg_frac": cell.neg_frac,
                "seed": seed, "instance": name, "model": model, "m_neg": g.m_neg, "density": g.density(),
                "optimum": rep.optimum, "lower_bound": rep.lower_bound, "root_objective": rep.root_objective,
                "nodes": rep.nodes, "branching_factor": rep.branching_factor, "time": elapsed,
                "status": rep.status, "time_limited": rep.status != OPTIMAL,
            })
    return rows


def _sd(vals: Sequence[float]) -> float:
    return statistics.stdev(vals) if len(vals) > 1 else 0.0


def aggregate(rows: Sequence[dict]) -> list[dict]:
    """Mean and sample SD of solve time per (cell, model), plus the mean optimum."""
    groups: dict[tuple, list[dict]] = {}
    for r in rows:
        groups.setdefault((r["cell"], r["model"]), []).append(r)
    table = []
    for (cell, model), rs in sorted(groups.items()):
        times = [float(r["time"]) for r in rs]
        table.append({
            "cell": cell, "generator": rs[0]["generator"], "n": rs[0]["n"], "m": rs[0]["m"],
            "density": statistics.fmean(float(r["density"]) for r in rs), "neg_frac": rs[0]["neg_frac"],
            "instances": len(rs), "mean_optimum": statistics.fmean(float(r["optimum"]) for r in rs),
            "model": model, "time_mean": statistics.fmean(times), "time_sd": _sd(times),
            "nodes_mean": statistics.fmean(float(r["nodes"]) for r in rs),
            "time_limited": sum(bool(r["time_limited"]) for r in rs),
        })
    return table


def run_sweep(cells: Sequence[Cell], models: Sequence[str] = ("and", "xor", "abs"),
              options: SolveOptions | None = None, repetitions: int = 10, base_seed: int = 0,
              workers: int = 1, preprocess: bool = False) -> SweepReport:
    """Solve ``repetitions`` seeded instances per cell with every model.

    Cells are spread over ``workers`` processes; instances within a cell run
    serially. Timing covers the solve call only (model building excluded
    unless ``preprocess`` is on, where per-block builds are part of it).
    Instances that stop on a limit are flagged and the sweep continues.
    """
    options = options or SolveOptions()
    jobs = [(t, c, tuple(models), options, cell_seeds(t, repetitions, base_seed), preprocess)
            for t, c in enumerate(cells)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_cell, jobs))
    else:
        parts = [_run_cell(j) for j in jobs]
    rows = [r for p in parts for r in p]
    return SweepReport(rows, aggregate(rows))


def _fmt(v):
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, float):
        return f"{v:.6g}"
    return v


def write_csv(rows: Sequence[dict], path, columns: Sequence[str]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(columns), extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: _fmt(r.get(k)) for k in columns})


def write_sweep(report: SweepReport, rows_path=None, table_path=None) -> None:
    if rows_path is not None:
        write_csv(report.rows, rows_path, SWEEP_COLUMNS)
    if table_path is not None:
        write_csv(report.table, table_path, TABLE_COLUMNS)


def format_table(table: Sequence[dict]) -> str:
    """Plain-text table with one line per cell and a ``mean ± SD`` time column per model."""
    models = sorted({r["model"] for r in table})
    by_cell: dict[int, dict] = {}
    for r in table:
        by_cell.setdefault(r["cell"], {})[r["model"]] = r
    head = f"{'n':>4} {'m':>6} {'rho':>6} {'neg':>5} {'Z*':>8}" + "".join(f" {m.upper():>18}" for m in models)
    lines = [head]
    for cell in sorted(by_cell):
        rs = by_cell[cell]
        r0 = next(iter(rs.values()))
        line = f"{r0['n']:>4} {r0['m']:>6} {r0['density']:>6.3f} {r0['neg_frac']:>5} {r0['mean_optimum']:>8.1f}"
        for m in models:
            r = rs.get(m)
            cellstr = "-" if r is None else f"{r['time_mean']:.2f}±{r['time_sd']:.2f}" + ("*" * bool(r["time_limited"]))
            line += f" {cellstr:>18}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def read_rows(path) -> list[dict]:
    with open(Path(path), newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
