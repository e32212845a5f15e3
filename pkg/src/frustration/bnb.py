"""LP-based branch-and-bound for the frustration models."""

from __future__ import annotations

import heapq
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .formulation import (TWO_COLOUR, add_fix_colour, add_triangle_cuts, point_from_colouring,
                          set_branch_priorities)
from .graph import Colouring, SignedGraph, edge_cost, frustration_count
from .lp import Relaxation
from .model import IlpModel

log = logging.getLogger(__name__)

INT_TOL = 1e-6
CUT_TOL = 1e-6

OPTIMAL = "optimal"
BOUNDED = "bounded"  # stopped by a time or node limit
GAP = "gap"  # stopped within the requested relative gap


@dataclass
class SolveOptions:
    """Speed-ups and limits for :func:`solve`.

    ``cuts`` is ``"lazy"``, ``"upfront"`` or ``"off"``; triangle cuts are
    skipped for models where they are not valid (weighted, multi-colour).
    ``gap`` is relative: the search stops once
    ``(UB - LB) / max(1, UB) <= gap``.
    """

    fix: bool = True
    cuts: str = "lazy"
    priorities: bool = True
    time_limit: float | None = None
    node_limit: int | None = None
    gap: float = 0.0
    backend: str = "highs"
    heuristic: bool = True

    @classmethod
    def plain(cls, **kw) -> "SolveOptions":
        return cls(fix=False, cuts="off", priorities=False, **kw)


def effective_branching_factor(nodes: int, variables: int) -> float:
    """``nodes ** (1 / variables)``; 1 for a model without variables."""
    if variables <= 0 or nodes <= 1:
        return 1.0
    return nodes ** (1.0 / variables)


@dataclass
class SolveReport:
    status: str
    optimum: float
    lower_bound: float
    incumbent: Colouring | None
    root_objective: float
    nodes: int
    variables: int
    time: float
    cut_rounds: int = 0
    cuts_added: int = 0
    lp_iterations: int = 0
    trace: list[tuple[float, float, float]] = field(default_factory=list)
    model: str = ""
    x: np.ndarray | None = field(default=None, repr=False)
    deterministic: bool = True

    @property
    def branching_factor(self) -> float:
        return effective_branching_factor(self.nodes, self.variables)

    @property
    def gap(self) -> float:
        if not math.isfinite(self.optimum):
            return math.inf
        return (self.optimum - self.lower_bound) / max(1.0, abs(self.optimum))

    def summary(self) -> str:
        return (f"status={self.status} optimum={_num(self.optimum)} lower_bound={_num(self.lower_bound)} "
                f"root={self.root_objective:.6g} nodes={self.nodes} vars={self.variables} "
                f"ebf={self.branching_factor:.4f} cuts={self.cuts_added}/{self.cut_rounds} rounds "
                f"time={self.time:.3f}s")


def _num(v):
    return int(v) if isinstance(v, float) and v.is_integer() else v


# -- heuristics -------------------------------------------------------------

def local_search(g: SignedGraph, colouring: Sequence[int], k: int = 2) -> Colouring:
    """Greedy descent over single-node moves and, for two colours, cluster flips.

    Each single-node step moves the node (and colour) with the largest
    decrease, ties broken by smallest node id then smallest colour. Once no
    node move helps, a two-colouring is grouped into clusters joined by
    edges in their cheaper state; flipping a cluster only changes its
    boundary edges, so any cluster with positive gain is flipped and the
    descent restarts. On a balanced graph this always ends at zero.
    """
    x = list(colouring)
    while True:
        x = _node_descent(g, x, k)
        if k != 2 or not _cluster_flip(g, x):
            return tuple(x)


def _node_descent(g, x, k):
    w = g.edge_weights
    inc = g.incidence

    def best_move(v):
        cur = x[v]
        here = [0.0] * k
        for u, e in inc[v]:
            for c in range(k):
                here[c] += edge_cost(w[e], c == x[u])
        best_c, best_gain = cur, 0.0
        for c in range(k):
            gain = here[cur] - here[c]
            if gain > best_gain + 1e-12:
                best_c, best_gain = c, gain
        return best_gain, best_c

    gains = [best_move(v) for v in range(g.n)]
    while True:
        v = max(range(g.n), key=lambda i: (gains[i][0], -i), default=None)
        if v is None or gains[v][0] <= 1e-12:
            return x
        x[v] = gains[v][1]
        gains[v] = best_move(v)
        for u, _ in inc[v]:
            gains[u] = best_move(u)


def _cluster_flip(g, x) -> bool:
    """Flip the first cluster (by smallest member) whose flip lowers frustration."""
    w = g.edge_weights
    label = [-1] * g.n
    clusters = []
    for root in range(g.n):
        if label[root] >= 0:
            continue
        label[root] = len(clusters)
        members = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            for u, e in g.incidence[v]:
                same = x[u] == x[v]
                if label[u] < 0 and edge_cost(w[e], same) < edge_cost(w[e], not same):
                    label[u] = label[root]
                    members.append(u)
                    stack.append(u)
        clusters.append(members)
    gain = [0.0] * len(clusters)
    for e, (i, j, _) in enumerate(g.edges):
        if label[i] != label[j]:
            same = x[i] == x[j]
            delta = edge_cost(w[e], same) - edge_cost(w[e], not same)
            gain[label[i]] += delta
            gain[label[j]] += delta
    for c, members in enumerate(clusters):
        if gain[c] > 1e-12:
            for v in members:
                x[v] = 1 - x[v]
            return True
    return False


def incumbent_heuristic(g: SignedGraph, point, model: IlpModel | None = None) -> Colouring:
    """Round an LP point to a colouring, then improve it by local search.

    ``point`` is either a full model vector (with ``model``) or one value
    per node; node values >= 0.5 become colour 1.
    """
    if model is not None:
        col = model.colouring_from(point)
        k = model.k
    else:
        col = tuple(int(v >= 0.5) for v in point)
        k = 2
    return local_search(g, col, k)


# -- branching --------------------------------------------------------------

def fractional_vars(x: np.ndarray, integer_idx: np.ndarray, tol: float = INT_TOL) -> np.ndarray:
    vals = x[integer_idx]
    return integer_idx[np.abs(vals - np.round(vals)) > tol]


def branch_select(x, integer_idx, priority, tol: float = INT_TOL) -> int | None:
    """Fractional integer variable of highest priority.

    Ties go to the most fractional value (closest to 0.5), then the smallest
    index. Returns None when the point is integral.
    """
    x = np.asarray(x, dtype=float)
    frac = fractional_vars(x, np.asarray(integer_idx), tol)
    if frac.size == 0:
        return None
    prio = np.asarray(priority)[frac]
    dist = np.abs(x[frac] - 0.5)
    order = np.lexsort((frac, dist, -prio))
    return int(frac[order[0]])


# -- search -----------------------------------------------------------------

class _Pool:
    """Lazy cut pool with vectorised violation checks."""

    def __init__(self, model: IlpModel):
        self.cuts = list(model.cut_pool)
        self.active = np.zeros(len(self.cuts), dtype=bool)
        if self.cuts:
            self.a, self.lo, self.hi = model.matrix(self.cuts)

    def violated(self, x) -> list[int]:
        if not self.cuts:
            return []
        act = self.a @ x
        viol = np.maximum(self.lo - act, act - self.hi)
        return [int(i) for i in np.flatnonzero((viol >= CUT_TOL) & ~self.active)]

    def separation_round(self, rel: Relaxation, x) -> int:
        idx = self.violated(x)
        if idx:
            self.active[idx] = True
            rel.add_rows([self.cuts[i] for i in idx])
        return len(idx)


def separation_round(model: IlpModel, rel: Relaxation, x, pool: _Pool | None = None) -> int:
    """Move every pool cut violated by ``x`` (by at least 1e-6) into ``rel``."""
    pool = pool or _Pool(model)
    return pool.separation_round(rel, x)


def prepare(model: IlpModel, g: SignedGraph | None, options: SolveOptions) -> IlpModel:
    """Copy of ``model`` with the requested speed-ups applied."""
    model = model.copy()
    if g is None:
        return model
    if options.fix and g.n and model.fixed_node is None:
        add_fix_colour(model, g)
    if options.priorities:
        set_branch_priorities(model, g)
    if (options.cuts != "off" and model.kind in TWO_COLOUR and not g.is_weighted
            and not model.cut_pool and not model.cuts_upfront):
        add_triangle_cuts(model, g, options.cuts)
    return model


def solve(model: IlpModel, g: SignedGraph | None = None, options: SolveOptions | None = None) -> SolveReport:
    """Solve ``model`` (built from ``g``) to proven optimality or a limit.

    With ``g`` given, the fixing, priority and cut options are applied and
    colourings found by the rounding heuristic feed the upper bound;
    without it any :class:`IlpModel` over binary and [0, 1] variables is
    solved as a plain 0/1 program.
    """
    options = options or SolveOptions()
    return BranchAndBound(prepare(model, g, options), g, options).run()


class BranchAndBound:
    """Best-bound search with depth-first plunging.

    After branching, the child with the branching variable set to 1 is
    processed immediately and its sibling goes to a heap ordered by the
    parent bound; once a dive ends, the open node of least bound is next.
    """

    def __init__(self, model: IlpModel, g: SignedGraph | None, options: SolveOptions):
        self.model = model
        self.g = g
        self.opt = options
        self.integer_idx = np.flatnonzero(model.integer)
        self.priority = np.asarray(model.priority)
        self.integral = model.objective_integral
        self.rel = Relaxation(model, options.backend)
        self.pool = _Pool(model)
        self.base_lb = np.asarray(model.lb, dtype=float)
        self.base_ub = np.asarray(model.ub, dtype=float)
        self.ub = math.inf
        self.best_x: np.ndarray | None = None
        self.best_col: Colouring | None = None
        self.lb = -math.inf
        self.nodes = 0
        self.cut_rounds = 0
        self.cuts_added = 0
        self.trace: list[tuple[float, float, float]] = []
        self._seq = 0

    # -- helpers -----------------------------------------------------------

    def _elapsed(self):
        return time.perf_counter() - self.t0

    def _bound(self, obj: float) -> float:
        return math.ceil(obj - 1e-6) if self.integral else obj

    def _record(self, lb=None):
        if lb is not None:
            self.lb = max(self.lb, min(lb, self.ub))
        point = (self._elapsed(), self.lb, self.ub)
        if not self.trace or self.trace[-1][1:] != point[1:]:
            self.trace.append(point)

    def _offer(self, value: float, x: np.ndarray | None, col: Colouring | None):
        if value < self.ub - 1e-9:
            self.ub = value
            self.best_x = x
            self.best_col = col
            self._record()

    def _offer_colouring(self, col: Colouring):
        value = frustration_count(self.g, col, self.model.k).count
        if value < self.ub - 1e-9:
            self._offer(value, point_from_colouring(self.model, self.g, col), col)

    def _evaluate(self, fixings):
        lb = self.base_lb.copy()
        ub = self.base_ub.copy()
        for v, val in fixings:
            lb[v] = ub[v] = val
        self.rel.set_bounds(lb, ub)
        sol = self.rel.solve()
        self.nodes += 1
        while sol.optimal:
            added = self.pool.separation_round(self.rel, sol.x)
            if not added:
                break
            self.cut_rounds += 1
            self.cuts_added += added
            sol = self.rel.solve()
        return sol

    def _limit_hit(self) -> bool:
        if self.opt.time_limit is not None and self._elapsed() >= self.opt.time_limit:
            return True
        return self.opt.node_limit is not None and self.nodes >= self.opt.node_limit

    def _gap_closed(self) -> bool:
        if not math.isfinite(self.ub):
            return False
        return self.ub - self.lb <= self.opt.gap * max(1.0, abs(self.ub)) + 1e-9

    # -- main loop ---------------------------------------------------------

    def run(self) -> SolveReport:
        self.t0 = time.perf_counter()
        heap: list = []
        current = ((), -math.inf)  # (fixings, parent bound)
        root_obj = None
        status = OPTIMAL
        while True:
            fixings, parent_bound = current
            sol = self._evaluate(fixings)
            next_child = None
            if root_obj is None:
                if not sol.optimal:
                    raise RuntimeError("root relaxation infeasible; formulation error")
                root_obj = sol.objective
                self._record(self._bound(sol.objective))
            if sol.optimal and self._bound(sol.objective) < self.ub - 1e-9:
                next_child = self._process(sol, fixings, heap)
            if next_child is not None:
                current = next_child
                open_min = min(next_child[1], heap[0][0]) if heap else next_child[1]
            else:
                while heap and heap[0][0] >= self.ub - 1e-9:
                    heapq.heappop(heap)
                open_min = heap[0][0] if heap else self.ub
            self._record(open_min)
            if next_child is None and not heap:
                break
            if self.opt.gap > 0 and self._gap_closed():
                status = GAP
                break
            if self._limit_hit():
                status = BOUNDED
                break
            if next_child is None:
                bound, _, fixings = heapq.heappop(heap)
                current = (fixings, bound)
        if status == OPTIMAL:
            self.lb = self.ub
            self._record()
        return self._report(status, root_obj)

    def _process(self, sol, fixings, heap):
        x = sol.x
        bound = self._bound(sol.objective)
        var = branch_select(x, self.integer_idx, self.priority)
        if var is None:
            if self.g is not None:
                self._offer_colouring(self.model.colouring_from(x))
            else:
                self._offer(float(sol.objective), x.copy(), None)
            return None
        if self.g is not None and self.opt.heuristic:
            self._offer_colouring(incumbent_heuristic(self.g, x, self.model))
            if bound >= self.ub - 1e-9:
                return None
        up = fixings + ((var, 1.0),)
        down = fixings + ((var, 0.0),)
        self._seq += 1
        heapq.heappush(heap, (bound, self._seq, down))
        return (up, bound)

    def _report(self, status, root_obj) -> SolveReport:
        opt = self.ub
        if self.integral and math.isfinite(opt):
            opt = float(round(opt))
        return SolveReport(
            status=status,
            optimum=opt,
            lower_bound=self.lb if status != OPTIMAL else opt,
            incumbent=self.best_col,
            root_objective=float(root_obj),
            nodes=self.nodes,
            variables=self.model.num_vars,
            time=self._elapsed(),
            cut_rounds=self.cut_rounds,
            cuts_added=self.cuts_added,
            lp_iterations=self.rel.iterations,
            trace=self.trace,
            model=self.model.kind,
            x=self.best_x,
        )
