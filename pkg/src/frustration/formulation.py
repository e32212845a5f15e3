"""AND / XOR / ABS 0/1 linear models of the frustration index, their
weighted and multi-colour variants, and the speed-up constraints."""

from __future__ import annotations

import numpy as np

from .graph import SignedGraph, frustration_count, unbalanced_triangles
from .model import EQ, GE, LE, Constraint, IlpModel, linear

MODELS = ("and", "xor", "abs", "weighted", "multicolour")
TWO_COLOUR = ("and", "xor", "abs")


def _require_unweighted(g: SignedGraph, what: str):
    if g.is_weighted:
        raise ValueError(f"{what} needs +-1 signs; use build_weighted for weighted graphs")


def _node_vars(model: IlpModel, g: SignedGraph):
    for i in range(g.n):
        model.node_vars.append((model.add_var(f"x_{i}"),))


def build_and(g: SignedGraph) -> IlpModel:
    """Model with one AND variable ``x_ij = x_i * x_j`` per edge.

    The edge variables are continuous on [0, 1]; the objective pressure and
    the linking constraints make them integral once the node variables are.
    """
    _require_unweighted(g, "the AND model")
    model = IlpModel("and", objective_integral=True)
    _node_vars(model, g)
    obj: dict[int, float] = {}
    for e, (i, j, s) in enumerate(g.edges):
        xi, xj = model.node_vars[i][0], model.node_vars[j][0]
        xij = model.add_var(f"x_{i}_{j}", integer=False)
        model.edge_vars.append((xij,))
        for v, c in ((xi, s), (xj, s), (xij, -2 * s)):
            obj[v] = obj.get(v, 0.0) + c
        if s > 0:
            model.add_constraint({xij: 1, xi: -1}, LE, 0, f"and_{i}_{j}_a")
            model.add_constraint({xij: 1, xj: -1}, LE, 0, f"and_{i}_{j}_b")
        else:
            model.add_constraint({xij: 1, xi: -1, xj: -1}, GE, -1, f"and_{i}_{j}")
    model.objective = obj
    model.constant = float(g.m_neg)
    return model


def build_xor(g: SignedGraph) -> IlpModel:
    """Model with one frustration variable ``f_ij`` per edge (continuous on [0, 1])."""
    _require_unweighted(g, "the XOR model")
    model = IlpModel("xor", objective_integral=True)
    _node_vars(model, g)
    for i, j, s in g.edges:
        xi, xj = model.node_vars[i][0], model.node_vars[j][0]
        f = model.add_var(f"f_{i}_{j}", integer=False)
        model.edge_vars.append((f,))
        model.objective[f] = 1.0
        if s > 0:
            model.add_constraint({f: 1, xi: -1, xj: 1}, GE, 0, f"xor_{i}_{j}_a")
            model.add_constraint({f: 1, xi: 1, xj: -1}, GE, 0, f"xor_{i}_{j}_b")
        else:
            model.add_constraint({f: 1, xi: -1, xj: -1}, GE, -1, f"xor_{i}_{j}_a")
            model.add_constraint({f: 1, xi: 1, xj: 1}, GE, 1, f"xor_{i}_{j}_b")
    return model


def build_abs(g: SignedGraph) -> IlpModel:
    """Model writing each edge's frustration as ``e_ij + h_ij`` (both binary)."""
    _require_unweighted(g, "the ABS model")
    model = IlpModel("abs", objective_integral=True)
    _node_vars(model, g)
    for i, j, s in g.edges:
        xi, xj = model.node_vars[i][0], model.node_vars[j][0]
        e = model.add_var(f"e_{i}_{j}")
        h = model.add_var(f"h_{i}_{j}")
        model.edge_vars.append((e, h))
        model.objective[e] = 1.0
        model.objective[h] = 1.0
        if s > 0:
            model.add_constraint({xi: 1, xj: -1, e: -1, h: 1}, EQ, 0, f"abs_{i}_{j}")
        else:
            model.add_constraint({xi: 1, xj: 1, e: -1, h: 1}, EQ, 1, f"abs_{i}_{j}")
    return model


def _weighted_needs_linking(w: float, tol: float = 1e-6) -> bool:
    # The consolidated constraint only forces x_ij = 0 at (x_i, x_j) = (1, 0)
    # and (0, 0) when its right-hand side drops below 1 there; this fails
    # for 0 < w <= 1/3.
    if w <= 0:
        return False
    rhs10 = ((3 * w - 1) / 4 + (1 - w) / 2) / w
    rhs00 = ((1 - w) / 2) / w
    return max(rhs10, rhs00) >= 1 - tol


def build_weighted(g: SignedGraph) -> IlpModel:
    """AND-style model for edge weights in [-1, 1].

    Edge frustration is ``(1 - w)/2 + w (x_i + x_j - 2 x_ij)`` and each edge
    gets the single constraint
    ``w x_ij <= (3w - 1)(x_i + x_j)/4 + (1 - w)/2`` with binary ``x_ij``.
    That constraint alone does not pin ``x_ij`` to ``x_i AND x_j`` for weights
    in (0, 1/3]; those edges also get ``x_ij <= x_i`` and ``x_ij <= x_j``.
    """
    if g.is_weighted:
        weights = list(g.weights)
    else:
        weights = [float(s) for *_, s in g.edges]
    for (i, j, _), w in zip(g.edges, weights):
        if not -1.0 <= w <= 1.0:
            raise ValueError(f"edge ({i}, {j}) weight {w} outside [-1, 1]")
    model = IlpModel("weighted", objective_integral=all(w in (-1.0, 1.0) for w in weights))
    _node_vars(model, g)
    obj: dict[int, float] = {}
    const = 0.0
    for (i, j, _), w in zip(g.edges, weights):
        xi, xj = model.node_vars[i][0], model.node_vars[j][0]
        xij = model.add_var(f"x_{i}_{j}")
        model.edge_vars.append((xij,))
        const += (1 - w) / 2
        for v, c in ((xi, w), (xj, w), (xij, -2 * w)):
            obj[v] = obj.get(v, 0.0) + c
        q = (3 * w - 1) / 4
        model.add_constraint({xij: w, xi: -q, xj: -q}, LE, (1 - w) / 2, f"w_{i}_{j}")
        if _weighted_needs_linking(w):
            model.add_constraint({xij: 1, xi: -1}, LE, 0, f"w_{i}_{j}_a")
            model.add_constraint({xij: 1, xj: -1}, LE, 0, f"w_{i}_{j}_b")
    model.objective = {v: c for v, c in obj.items() if c != 0}
    model.constant = const
    return model


def build_multicolour(g: SignedGraph, k: int) -> IlpModel:
    """Assignment model with ``k`` colour indicators per node."""
    _require_unweighted(g, "the multi-colour model")
    if k < 1:
        raise ValueError(f"need at least one colour, got k={k}")
    model = IlpModel("multicolour", k=k, objective_integral=True)
    for i in range(g.n):
        vs = tuple(model.add_var(f"x_{i}_c{c}") for c in range(k))
        model.node_vars.append(vs)
    for i in range(g.n):
        model.add_constraint({v: 1 for v in model.node_vars[i]}, EQ, 1, f"assign_{i}")
    for i, j, s in g.edges:
        f = model.add_var(f"f_{i}_{j}", integer=False)
        model.edge_vars.append((f,))
        model.objective[f] = 1.0
        for c in range(k):
            xic, xjc = model.node_vars[i][c], model.node_vars[j][c]
            if s > 0:
                model.add_constraint({f: 1, xic: -1, xjc: 1}, GE, 0, f"mc_{i}_{j}_{c}")
            else:
                model.add_constraint({f: 1, xic: -1, xjc: -1}, GE, -1, f"mc_{i}_{j}_{c}")
    return model


def build(g: SignedGraph, kind: str, k: int = 2) -> IlpModel:
    builders = {"and": build_and, "xor": build_xor, "abs": build_abs, "weighted": build_weighted}
    if kind == "multicolour":
        return build_multicolour(g, k)
    if kind not in builders:
        raise ValueError(f"unknown model {kind!r}; expected one of {MODELS}")
    return builders[kind](g)


def expected_size(g: SignedGraph, kind: str) -> tuple[int, int]:
    """Variable and constraint counts of a freshly built two-colour model."""
    n, m, mp, mn = g.n, g.m, g.m_pos, g.m_neg
    return {"and": (n + m, 2 * mp + mn), "xor": (n + m, 2 * mp + 2 * mn), "abs": (n + 2 * m, mp + mn)}[kind]


def frustration_expr(model: IlpModel, g: SignedGraph, e: int) -> tuple[dict[int, float], float]:
    """Linear expression (terms, constant) equal to edge ``e``'s frustration state."""
    i, j, a = g.edges[e]
    if model.kind == "and":
        xi, xj = model.node_vars[i][0], model.node_vars[j][0]
        (xij,) = model.edge_vars[e]
        return {xi: a, xj: a, xij: -2 * a}, (1 - a) / 2
    if model.kind == "abs":
        eij, hij = model.edge_vars[e]
        return {eij: 1.0, hij: 1.0}, 0.0
    if model.kind in ("xor", "multicolour"):
        return {model.edge_vars[e][0]: 1.0}, 0.0
    raise ValueError(f"no frustration expression for {model.kind!r} models")


def add_fix_colour(model: IlpModel, g: SignedGraph) -> int:
    """Fix the colour of the highest-degree node (smallest id on ties).

    Two-colour models get ``x_k = 1``; the multi-colour model gets
    ``x_k0 = 1``. Returns the fixed node.
    """
    if g.n == 0:
        raise ValueError("cannot fix a colour in an empty graph")
    node = g.max_degree_node()
    v = model.node_vars[node][0]
    model.lb[v] = model.ub[v] = 1.0
    model.fixed_node = node
    return node


def triangle_cuts(model: IlpModel, g: SignedGraph) -> list[Constraint]:
    if g.is_weighted or model.kind not in TWO_COLOUR:
        raise ValueError(f"triangle inequalities are only valid for unweighted two-colour models, not {model.kind!r}")
    cuts = []
    for i, j, k in unbalanced_triangles(g):
        terms: dict[int, float] = {}
        const = 0.0
        for a, b in ((i, j), (i, k), (j, k)):
            t, c = frustration_expr(model, g, g.edge_id(a, b))
            const += c
            for v, coef in t.items():
                terms[v] = terms.get(v, 0.0) + coef
        cuts.append(Constraint(linear(terms), GE, 1.0 - const, f"tri_{i}_{j}_{k}"))
    return cuts


def add_triangle_cuts(model: IlpModel, g: SignedGraph, mode: str = "lazy") -> int:
    """One inequality ``f_ij + f_ik + f_jk >= 1`` per unbalanced triangle.

    ``mode="upfront"`` appends them to the constraints, ``"lazy"`` puts them
    in the cut pool for separation during branch-and-bound.
    """
    if mode not in ("lazy", "upfront"):
        raise ValueError(f"unknown cut mode {mode!r}")
    cuts = triangle_cuts(model, g)
    if mode == "upfront":
        model.constraints.extend(cuts)
        model.cuts_upfront += len(cuts)
    else:
        model.cut_pool.extend(cuts)
    return len(cuts)


def set_branch_priorities(model: IlpModel, g: SignedGraph) -> None:
    """Node variables get their node's degree as priority, all others 0."""
    model.priority = [0] * model.num_vars
    for i, vs in enumerate(model.node_vars):
        for v in vs:
            model.priority[v] = g.degrees[i]


def point_from_colouring(model: IlpModel, g: SignedGraph, x) -> np.ndarray:
    """Integer-feasible model point encoding colouring ``x``."""
    x = [int(c) for c in x]
    p = np.zeros(model.num_vars)
    if model.kind == "multicolour":
        for i, vs in enumerate(model.node_vars):
            p[vs[x[i]]] = 1.0
    else:
        for i, (v,) in enumerate(model.node_vars):
            p[v] = x[i]
    flags = frustration_count(g, x, k=model.k).frustrated if model.kind != "weighted" else None
    for e, (i, j, s) in enumerate(g.edges):
        vs = model.edge_vars[e]
        if model.kind in ("and", "weighted"):
            p[vs[0]] = x[i] * x[j]
        elif model.kind in ("xor", "multicolour"):
            p[vs[0]] = float(flags[e])
        else:
            d = x[i] - x[j] if s > 0 else x[i] + x[j] - 1
            p[vs[0]], p[vs[1]] = max(d, 0), max(-d, 0)
    return p
