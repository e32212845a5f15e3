"""LP-format export of models, a reader for the same dialect, and the
priority sidecar.

The writer emits the CPLEX LP text format::

    \\ model: xor
    \\ objective constant: 3
    Minimize
     obj: + x_0 + x_1 - 2 x_0_1 ...
    Subject To
     name: + x_0_1 - x_0 <= 0
    Lazy Constraints          (only with lazy="section")
     tri_0_1_2: ...
    Bounds
     0 <= x_0 <= 1            (every variable, in index order)
     x_3 = 1                  (fixed variables)
    Binaries
     x_0 x_1 ...
    End

The LP format cannot carry an objective constant, so it is written as a
comment; add it to any optimum an external solver reports. Lines are
wrapped after eight terms. Output depends only on the model, so identical
models give identical bytes.
"""

from __future__ import annotations

import re
from pathlib import Path

from .model import GE, LE, Constraint, IlpModel, linear

_TERMS_PER_LINE = 8
_CONST_RE = re.compile(r"^\\\s*objective constant:\s*(\S+)")
_KIND_RE = re.compile(r"^\\\s*model:\s*(\S+)")
_SECTIONS = {
    "minimize": "obj", "minimum": "obj", "min": "obj",
    "subject to": "con", "such that": "con", "st": "con", "s.t.": "con",
    "lazy constraints": "lazy",
    "bounds": "bounds", "bound": "bounds",
    "binaries": "bin", "binary": "bin", "bin": "bin",
    "generals": "gen", "general": "gen", "gen": "gen",
    "end": "end",
}


def _num(v: float) -> str:
    v = float(v)
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def _expr(terms, names) -> list[str]:
    out = []
    for v, c in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        out.append(f"{sign} {names[v]}" if mag == 1 else f"{sign} {_num(mag)} {names[v]}")
    return out


def _wrap(head: str, parts: list[str], tail: str = "") -> list[str]:
    lines = []
    for s in range(0, max(len(parts), 1), _TERMS_PER_LINE):
        chunk = " ".join(parts[s:s + _TERMS_PER_LINE])
        lines.append((head if s == 0 else "   ") + chunk)
    if tail:
        lines[-1] += tail
    return lines


def format_lp(model: IlpModel, lazy: str = "constraints") -> str:
    """LP text for ``model``.

    ``lazy`` places the cut pool: ``"constraints"`` appends it to Subject
    To, ``"section"`` writes a Lazy Constraints section, ``"omit"`` drops it.
    HiGHS does not read Lazy Constraints sections; CPLEX and Gurobi do.
    """
    if lazy not in ("constraints", "section", "omit"):
        raise ValueError(f"unknown lazy placement {lazy!r}")
    names = model.names
    out = [f"\\ model: {model.kind or 'ilp'}",
           f"\\ objective constant: {_num(model.constant)}",
           f"\\ variables: {model.num_vars} constraints: {model.num_constraints} pool: {len(model.cut_pool)}",
           "Minimize"]
    obj = linear(model.objective)
    if not obj and names:
        obj = ((0, 0.0),)
    parts = _expr(obj, names) if obj else []
    if obj and obj[0][1] == 0:
        parts = [f"+ 0 {names[0]}"]
    out.extend(_wrap(" obj: ", parts))
    rows = list(model.constraints)
    if lazy == "constraints":
        rows += model.cut_pool
    out.append("Subject To")
    for con in rows:
        out.extend(_wrap(f" {con.name}: ", _expr(con.terms, names), f" {con.sense} {_num(con.rhs)}"))
    if lazy == "section" and model.cut_pool:
        out.append("Lazy Constraints")
        for con in model.cut_pool:
            out.extend(_wrap(f" {con.name}: ", _expr(con.terms, names), f" {con.sense} {_num(con.rhs)}"))
    out.append("Bounds")
    for v, name in enumerate(names):
        lo, hi = model.lb[v], model.ub[v]
        if lo == hi:
            out.append(f" {name} = {_num(lo)}")
        else:
            out.append(f" {_num(lo)} <= {name} <= {_num(hi)}")
    bins = [names[v] for v in range(model.num_vars) if model.integer[v]]
    if bins:
        out.append("Binaries")
        for s in range(0, len(bins), _TERMS_PER_LINE):
            out.append(" " + " ".join(bins[s:s + _TERMS_PER_LINE]))
    out.append("End")
    return "\n".join(out) + "\n"


def format_priorities(model: IlpModel) -> str:
    lines = ["# variable branching priority"]
    lines += [f"{model.names[v]} {model.priority[v]}" for v in range(model.num_vars)
              if model.integer[v]]
    return "\n".join(lines) + "\n"


def priority_path(path) -> Path:
    return Path(path).with_suffix(".ord")


def export_lp(model: IlpModel, path, lazy: str = "constraints", priorities: bool = True) -> None:
    """Write ``model`` to ``path`` and its priorities to ``path`` with suffix ``.ord``."""
    Path(path).write_text(format_lp(model, lazy), encoding="utf-8")
    if priorities:
        priority_path(path).write_text(format_priorities(model), encoding="utf-8")


# -- reading ----------------------------------------------------------------

class LpParseError(ValueError):
    pass


_TOKEN = re.compile(r"<=|>=|=<|=>|[<>=]|[+-]|[^\s+\-<>=:]+:|[^\s+\-<>=]+")


def _parse_terms(tokens, index, get_var):
    terms: dict[int, float] = {}
    sign = 1.0
    coef = None
    for tok in tokens:
        if tok in "+-":
            sign = -1.0 if tok == "-" else 1.0
            continue
        try:
            coef = float(tok)
            continue
        except ValueError:
            pass
        v = get_var(tok)
        terms[v] = terms.get(v, 0.0) + sign * (1.0 if coef is None else coef)
        sign, coef = 1.0, None
    if coef is not None:
        raise LpParseError("constant terms in expressions are not supported")
    return terms


def parse_lp(text: str) -> IlpModel:
    """Read LP text written by :func:`format_lp` (a subset of the format)."""
    model = IlpModel()
    index: dict[str, int] = {}
    section = None
    stmts: dict[str, list[str]] = {"obj": [], "con": [], "lazy": [], "bounds": [], "bin": [], "gen": []}
    current: list[str] = []

    def get_var(name):
        if name not in index:
            index[name] = model.add_var(name, 0.0, float("inf"), integer=False)
        return index[name]

    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("\\"):
            if m := _CONST_RE.match(line):
                model.constant = float(m.group(1))
            elif m := _KIND_RE.match(line):
                model.kind = m.group(1)
            continue
        if not line:
            continue
        key = line.lower()
        if key in _SECTIONS:
            if current:
                stmts[section].append(" ".join(current))
                current = []
            section = _SECTIONS[key]
            if section == "end":
                break
            continue
        if section is None:
            raise LpParseError(f"text before the first section: {line!r}")
        if section in ("bounds", "bin", "gen"):
            stmts[section].append(line)
            continue
        # statements continue on lines without a label
        if re.match(r"^[^\s:]+:", line) and current:
            stmts[section].append(" ".join(current))
            current = []
        current.append(line)
    if current and section in stmts:
        stmts[section].append(" ".join(current))

    # variables first from Bounds so indices follow the writer's order
    for line in stmts["bounds"]:
        for tok in re.split(r"\s+|<=|>=|=", line):
            if tok and not _is_number(tok) and tok.lower() not in ("free", "inf", "-inf", "+inf", "infinity"):
                get_var(tok)
    for line in stmts["obj"]:
        toks = _TOKEN.findall(line)
        if toks and toks[0].endswith(":"):
            toks = toks[1:]
        model.objective = {v: c for v, c in _parse_terms(toks, index, get_var).items() if c != 0}
    for sec, target in (("con", model.constraints), ("lazy", model.cut_pool)):
        for line in stmts[sec]:
            toks = _TOKEN.findall(line)
            name = ""
            if toks and toks[0].endswith(":"):
                name, toks = toks[0][:-1], toks[1:]
            pos = next((t for t, tok in enumerate(toks) if tok in ("<=", ">=", "=", "=<", "=>", "<", ">")), None)
            if pos is None or pos + 1 >= len(toks):
                raise LpParseError(f"constraint without sense: {line!r}")
            sense = {"=<": LE, "<": LE, "=>": GE, ">": GE}.get(toks[pos], toks[pos])
            rhs_toks = toks[pos + 1:]
            rhs = float("".join(rhs_toks))
            terms = _parse_terms(toks[:pos], index, get_var)
            target.append(Constraint(linear(terms), sense, rhs, name or f"c{len(target)}"))
    for line in stmts["bounds"]:
        _apply_bound(model, index, line)
    for line in stmts["bin"] + stmts["gen"]:
        for name in line.split():
            v = get_var(name)
            model.integer[v] = True
            if line in stmts["bin"]:
                model.lb[v] = max(model.lb[v], 0.0)
                model.ub[v] = min(model.ub[v], 1.0)
    model.objective_integral = (float(model.constant).is_integer()
                                and all(model.integer[v] and float(c).is_integer()
                                        for v, c in model.objective.items()))
    model.priority = [0] * model.num_vars
    return model


def _is_number(tok: str) -> bool:
    try:
        float(tok)
        return True
    except ValueError:
        return False


def _apply_bound(model, index, line):
    toks = [t for t in re.split(r"\s*(<=|>=|=)\s*|\s+", line) if t]
    if len(toks) == 5 and toks[1] == toks[3] == "<=":
        v = index[toks[2]]
        model.lb[v], model.ub[v] = float(toks[0]), float(toks[4])
    elif len(toks) == 3 and toks[1] == "=":
        v = index[toks[0]]
        model.lb[v] = model.ub[v] = float(toks[2])
    elif len(toks) == 3 and toks[1] in ("<=", ">="):
        if toks[0] in index:
            v, val, op = index[toks[0]], float(toks[2]), toks[1]
        else:
            v, val, op = index[toks[2]], float(toks[0]), {"<=": ">=", ">=": "<="}[toks[1]]
        if op == "<=":
            model.ub[v] = val
        else:
            model.lb[v] = val
    elif len(toks) == 2 and toks[1].lower() == "free":
        v = index[toks[0]]
        model.lb[v], model.ub[v] = float("-inf"), float("inf")
    else:
        raise LpParseError(f"unsupported bound line: {line!r}")


def read_lp(path) -> IlpModel:
    model = parse_lp(Path(path).read_text(encoding="utf-8"))
    pri = priority_path(path)
    if pri.exists():
        idx = {name: v for v, name in enumerate(model.names)}
        for line in pri.read_text(encoding="utf-8").splitlines():
            parts = line.split()
            if len(parts) == 2 and not line.startswith("#") and parts[0] in idx:
                model.priority[idx[parts[0]]] = int(parts[1])
    return model


def lp_constant(path) -> float:
    """Objective constant recorded in an exported LP file's header comment."""
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if m := _CONST_RE.match(line.strip()):
                return float(m.group(1))
            if not line.startswith("\\"):
                break
    return 0.0
