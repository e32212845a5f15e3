"""Edge-list files and CSV solve reports.

Edge-list grammar, one record per line::

    # comment              lines starting with '#' are ignored, as are blank lines
    u v s                  an edge; fields separated by whitespace and/or one comma
    u                      a node with no edges (keeps isolated nodes on round trip)

``u`` and ``v`` are arbitrary labels without whitespace or commas. In signed
mode ``s`` is one of ``+1 -1 + - 1``; in weighted mode it is a real number in
[-1, 1] written with ``.`` as decimal separator. Dense node ids follow order of
first appearance.
"""

from __future__ import annotations

import csv
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .graph import SignedGraph

_SPLIT = re.compile(r"\s*,\s*|\s+")
_SIGNS = {"+1": 1, "-1": -1, "+": 1, "-": -1, "1": 1}
_FLOAT = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")

REPORT_COLUMNS = (
    "instance",
    "model",
    "n",
    "m",
    "m_neg",
    "optimum",
    "root_objective",
    "nodes",
    "branching_factor",
    "time",
)


class EdgeListError(ValueError):
    """Malformed edge-list input; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line


@dataclass
class Instance:
    name: str
    graph: SignedGraph
    labels: tuple[str, ...] = ()
    source: Any = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.labels:
            self.labels = tuple(str(i) for i in range(self.graph.n))
        if len(self.labels) != self.graph.n or len(set(self.labels)) != self.graph.n:
            raise ValueError("labels must be a bijection onto the graph's nodes")

    @property
    def ids(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}


def _parse_sign(tok: str, weighted: bool) -> float | int:
    if not weighted:
        if tok not in _SIGNS:
            raise ValueError(f"bad sign {tok!r}")
        return _SIGNS[tok]
    if not _FLOAT.match(tok):
        raise ValueError(f"bad weight {tok!r}")
    w = float(tok)
    if not -1.0 <= w <= 1.0:
        raise ValueError(f"weight {tok} outside [-1, 1]")
    return w


def parse_edge_list(lines: Iterable[str], weighted: bool = False, name: str = "", path=None) -> Instance:
    ids: dict[str, int] = {}
    seen: dict[tuple[int, int], int] = {}
    edges = []

    def node(lab):
        if lab not in ids:
            ids[lab] = len(ids)
        return ids[lab]

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = [t for t in _SPLIT.split(line) if t]
        if len(toks) == 1:
            node(toks[0])
            continue
        if len(toks) != 3:
            raise EdgeListError(f"expected 'u v s', got {line!r}", lineno, path)
        u, v, s = toks
        if u == v:
            raise EdgeListError(f"self-loop on {u!r}", lineno, path)
        try:
            val = _parse_sign(s, weighted)
        except ValueError as exc:
            raise EdgeListError(str(exc), lineno, path) from None
        i, j = node(u), node(v)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise EdgeListError(f"duplicate edge {u!r}-{v!r} (first on line {seen[key]})", lineno, path)
        seen[key] = lineno
        edges.append((i, j, float(val) if weighted else val))
    labels = tuple(sorted(ids, key=ids.get))
    g = SignedGraph.from_edges(len(labels), edges, weighted=weighted)
    return Instance(name, g, labels, source=path)


def read_edge_list(path, weighted: bool = False, name: str | None = None) -> Instance:
    """Read an edge-list file into an :class:`Instance`."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, weighted=weighted, name=name or path.stem, path=str(path))


def format_edge_list(inst: Instance) -> str:
    g = inst.graph
    out = [f"# {inst.name or 'signed graph'}: n={g.n} m={g.m} m_neg={g.m_neg}"
           + (" weighted" if g.is_weighted else "")]
    touched = set()
    for e, (i, j, s) in enumerate(g.edges):
        touched.update((i, j))
        if g.is_weighted:
            val = repr(g.weights[e])
        else:
            val = "+1" if s > 0 else "-1"
        out.append(f"{inst.labels[i]} {inst.labels[j]} {val}")
    out.extend(inst.labels[i] for i in range(g.n) if i not in touched)
    return "\n".join(out) + "\n"


def write_edge_list(inst: Instance | SignedGraph, path) -> None:
    if isinstance(inst, SignedGraph):
        inst = Instance("", inst)
    Path(path).write_text(format_edge_list(inst), encoding="utf-8")


def relabel_to(inst: Instance, other: Instance) -> SignedGraph:
    """Express ``inst``'s graph in ``other``'s dense ids (labels must agree)."""
    ids = other.ids
    if set(ids) != set(inst.labels):
        raise ValueError("label sets differ")
    g = inst.graph
    mp = [ids[lab] for lab in inst.labels]
    vals = g.weights if g.is_weighted else [s for *_, s in g.edges]
    return SignedGraph.from_edges(g.n, [(mp[i], mp[j], v) for (i, j, _), v in zip(g.edges, vals)],
                                  weighted=g.is_weighted)


def report_row(name: str, model: str, g: SignedGraph, report) -> dict:
    """Flatten a solve report into the CSV report schema."""
    return {
        "instance": name,
        "model": model,
        "n": g.n,
        "m": g.m,
        "m_neg": g.m_neg,
        "optimum": report.optimum,
        "root_objective": report.root_objective,
        "nodes": report.nodes,
        "branching_factor": report.branching_factor,
        "time": report.time,
    }


def write_report_csv(rows: Sequence[dict], path, columns: Sequence[str] = REPORT_COLUMNS) -> None:
    """Write solve rows (dicts keyed by ``columns``) as CSV with a header."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: _fmt(row.get(k)) for k in columns})


def read_report_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _fmt(v):
    if isinstance(v, float):
        if v.is_integer() and abs(v) < 1e15:
            return str(int(v))
        return repr(v)
    return "" if v is None else v


def data_dir() -> Path | None:
    """Directory holding manually ingested datasets (``FRUSTRATION_DATA``)."""
    env = os.environ.get("FRUSTRATION_DATA")
    for cand in ([Path(env)] if env else []) + [Path.cwd() / "data"]:
        if cand.is_dir():
            return cand
    return None
