"""LP relaxations of :class:`IlpModel` instances.

Two backends solve the same relaxation: ``"highs"`` keeps a persistent
HiGHS simplex instance whose bounds and rows can be changed between solves
(warm-started from its last basis), and ``"simplex"`` is a small dense
bounded-variable primal simplex used as an independent check on small models.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .model import Constraint, IlpModel

FEAS_TOL = 1e-7
OPT_TOL = 1e-7

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"


@dataclass
class LpSolution:
    status: str
    objective: float = float("nan")
    x: np.ndarray = field(default_factory=lambda: np.zeros(0))
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class LpError(RuntimeError):
    """The LP engine failed for reasons other than infeasibility."""


def _rows(model: IlpModel, extra: Sequence[Constraint]):
    a, lo, hi = model.matrix(list(model.constraints) + list(extra))
    return a, lo, hi


class Relaxation:
    """Persistent LP relaxation of ``model`` (integrality dropped).

    ``set_bounds`` overrides variable bounds (e.g. branching fixings) and
    ``add_rows`` appends constraints such as separated cuts. Results never
    depend on warm-start state beyond tolerances.
    """

    def __init__(self, model: IlpModel, backend: str = "highs"):
        if backend not in ("highs", "simplex"):
            raise ValueError(f"unknown LP backend {backend!r}")
        self.model = model
        self.backend = backend
        self.c = model.objective_vector()
        self.constant = model.constant
        self.lb = np.array(model.lb, dtype=float)
        self.ub = np.array(model.ub, dtype=float)
        self.rows: list[Constraint] = list(model.constraints)
        self.iterations = 0
        self._highs = None
        if backend == "highs":
            self._init_highs()

    # -- HiGHS -------------------------------------------------------------

    def _init_highs(self):
        import highspy

        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.setOptionValue("presolve", "off")
        h.setOptionValue("solver", "simplex")
        h.setOptionValue("threads", 1)
        h.setOptionValue("random_seed", 0)
        h.setOptionValue("primal_feasibility_tolerance", FEAS_TOL)
        h.setOptionValue("dual_feasibility_tolerance", OPT_TOL)
        nv = len(self.c)
        if nv:
            h.addCols(nv, self.c, self.lb, self.ub, 0, np.zeros(nv, dtype=np.int32),
                      np.zeros(0, dtype=np.int32), np.zeros(0))
        self._highs = h
        self._push_rows(self.rows)

    def _push_rows(self, rows):
        if not rows:
            return
        a, lo, hi = self.model.matrix(rows)
        inf = self._highs.getInfinity()
        lo = np.where(np.isinf(lo), -inf, lo)
        hi = np.where(np.isinf(hi), inf, hi)
        self._highs.addRows(len(rows), lo, hi, a.nnz, a.indptr.astype(np.int32),
                            a.indices.astype(np.int32), a.data)

    def _solve_highs(self) -> LpSolution:
        import highspy

        h = self._highs
        nv = len(self.c)
        if nv:
            idx = np.arange(nv, dtype=np.int32)
            h.changeColsBounds(nv, idx, self.lb, self.ub)
        h.run()
        status = h.getModelStatus()
        info = h.getInfo()
        its = int(info.simplex_iteration_count)
        delta, self._last_its = its - getattr(self, "_last_its", 0), its
        self.iterations += max(delta, 0)
        if status == highspy.HighsModelStatus.kInfeasible:
            return LpSolution(INFEASIBLE, iterations=max(delta, 0))
        if status == highspy.HighsModelStatus.kModelEmpty:
            return LpSolution(OPTIMAL, self.constant, np.zeros(0), 0)
        if status != highspy.HighsModelStatus.kOptimal:
            raise LpError(f"HiGHS returned {h.modelStatusToString(status)}")
        x = np.array(h.getSolution().col_value, dtype=float)
        return LpSolution(OPTIMAL, float(self.c @ x) + self.constant, x, max(delta, 0))

    # -- public ------------------------------------------------------------

    def set_bounds(self, lb, ub) -> None:
        self.lb = np.array(lb, dtype=float)
        self.ub = np.array(ub, dtype=float)

    def add_rows(self, rows: Sequence[Constraint]) -> None:
        rows = list(rows)
        self.rows.extend(rows)
        if self._highs is not None:
            self._push_rows(rows)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def basis(self):
        """Opaque warm-start handle (HiGHS backend only)."""
        return self._highs.getBasis() if self._highs is not None else None

    def set_basis(self, handle) -> None:
        if self._highs is not None and handle is not None:
            self._highs.setBasis(handle)

    def solve(self) -> LpSolution:
        if np.any(self.lb > self.ub + FEAS_TOL):
            return LpSolution(INFEASIBLE)
        if self.backend == "highs":
            return self._solve_highs()
        a, lo, hi = self.model.matrix(self.rows)
        sol = bounded_simplex(self.c, a.toarray(), lo, hi, self.lb, self.ub)
        self.iterations += sol.iterations
        if sol.optimal:
            sol.objective += self.constant
        return sol


def solve_lp(model: IlpModel, lb=None, ub=None, extra: Sequence[Constraint] = (),
             backend: str = "highs") -> LpSolution:
    """Solve the LP relaxation of ``model`` with optional bound overrides and extra rows."""
    rel = Relaxation(model, backend)
    if lb is not None or ub is not None:
        rel.set_bounds(model.lb if lb is None else lb, model.ub if ub is None else ub)
    if extra:
        rel.add_rows(extra)
    return rel.solve()


# -- dense bounded-variable primal simplex ----------------------------------

def bounded_simplex(c, a, row_lo, row_hi, lb, ub, max_iter: int = 50_000,
                    stall_limit: int = 50) -> LpSolution:
    """Minimise ``c @ x`` s.t. ``row_lo <= a @ x <= row_hi``, ``lb <= x <= ub``.

    Each row gets an activity variable ``r = a @ x`` bounded by the row
    limits, so the system is ``[a, -I] (x, r) = 0`` with bounded columns.
    Phase one minimises the sum of artificials; phase two the objective.
    Pricing is Dantzig's rule, switching to Bland's rule after
    ``stall_limit`` consecutive degenerate pivots.
    """
    c = np.asarray(c, dtype=float)
    a = np.asarray(a, dtype=float).reshape(-1, len(c))
    nr, nv = a.shape
    lb = np.asarray(lb, dtype=float)
    ub = np.asarray(ub, dtype=float)
    if np.any(np.isinf(lb) & np.isinf(ub)):
        raise ValueError("free variables are not supported")
    if nr == 0:
        x = np.where(c < 0, ub, lb)
        if np.any(np.isinf(x)):
            raise LpError("unbounded")
        return LpSolution(OPTIMAL, float(c @ x), x, 0)

    # columns: x (nv) | r (nr) | artificials (nr)
    lo = np.concatenate([lb, row_lo, np.zeros(nr)])
    hi = np.concatenate([ub, row_hi, np.full(nr, np.inf)])
    x = np.concatenate([np.where(np.isfinite(lb), lb, ub),
                        np.where(np.isfinite(row_lo), row_lo, row_hi), np.zeros(nr)])
    resid = -(a @ x[:nv] - x[nv:nv + nr])
    sgn = np.where(resid >= 0, 1.0, -1.0)
    full = np.hstack([a, -np.eye(nr), np.diag(sgn)])
    x[nv + nr:] = np.abs(resid)
    basis = list(range(nv + nr, nv + 2 * nr))
    binv = np.diag(sgn)  # inverse of diag(sgn)

    cost1 = np.concatenate([np.zeros(nv + nr), np.ones(nr)])
    its = 0
    status, x, basis, binv, its = _simplex_phase(full, cost1, lo, hi, x, basis, binv, its, max_iter, stall_limit)
    if x[nv + nr:].sum() > FEAS_TOL * max(1, nr):
        return LpSolution(INFEASIBLE, iterations=its)
    hi[nv + nr:] = 0.0
    x[nv + nr:] = np.clip(x[nv + nr:], 0.0, 0.0)
    cost2 = np.concatenate([c, np.zeros(2 * nr)])
    status, x, basis, binv, its = _simplex_phase(full, cost2, lo, hi, x, basis, binv, its, max_iter, stall_limit)
    if status != OPTIMAL:
        raise LpError(status)
    xs = x[:nv].copy()
    return LpSolution(OPTIMAL, float(c @ xs), xs, its)


def _recompute(full, lo, hi, x, basis):
    bmat = full[:, basis]
    binv = np.linalg.inv(bmat)
    nonbasic = np.ones(full.shape[1], dtype=bool)
    nonbasic[basis] = False
    rhs = -(full[:, nonbasic] @ x[nonbasic])
    x[basis] = binv @ rhs
    return binv


def _simplex_phase(full, cost, lo, hi, x, basis, binv, its, max_iter, stall_limit):
    nr, ncol = full.shape
    is_basic = np.zeros(ncol, dtype=bool)
    is_basic[basis] = True
    degenerate = 0
    since_refactor = 0
    while True:
        if its >= max_iter:
            return "iteration limit", x, basis, binv, its
        if since_refactor >= 50:
            binv = _recompute(full, lo, hi, x, basis)
            since_refactor = 0
        y = cost[basis] @ binv
        d = cost - y @ full
        at_lo = ~is_basic & (x <= lo + FEAS_TOL)
        at_hi = ~is_basic & (x >= hi - FEAS_TOL)
        fixed = lo >= hi - FEAS_TOL
        can_up = at_lo & ~fixed & (d < -OPT_TOL)
        can_down = at_hi & ~fixed & (d > OPT_TOL)
        cand = np.flatnonzero(can_up | can_down)
        if cand.size == 0:
            return OPTIMAL, x, basis, binv, its
        if degenerate >= stall_limit:
            j = int(cand[0])
        else:
            j = int(cand[np.argmax(np.abs(d[cand]))])
        direction = 1.0 if can_up[j] else -1.0
        alpha = binv @ full[:, j]
        # basic values move by -direction * t * alpha
        step = -direction * alpha
        t_best = hi[j] - lo[j]
        leave = -1
        leave_to = 0.0
        for r in range(nr):
            s = step[r]
            b = basis[r]
            if s < -1e-12 and np.isfinite(lo[b]):
                t = (x[b] - lo[b]) / -s
                bound = lo[b]
            elif s > 1e-12 and np.isfinite(hi[b]):
                t = (hi[b] - x[b]) / s
                bound = hi[b]
            else:
                continue
            t = max(t, 0.0)
            if t < t_best - 1e-12 or (leave >= 0 and abs(t - t_best) <= 1e-12 and b < basis[leave]):
                t_best, leave, leave_to = t, r, bound
        if not np.isfinite(t_best):
            return "unbounded", x, basis, binv, its
        its += 1
        degenerate = degenerate + 1 if t_best <= 1e-12 else 0
        x[j] += direction * t_best
        x[basis] += step * t_best
        if leave < 0:
            continue  # bound flip of the entering column
        out = basis[leave]
        x[out] = leave_to
        is_basic[out] = False
        is_basic[j] = True
        basis[leave] = j
        piv = alpha[leave]
        row = binv[leave] / piv
        binv -= np.outer(alpha, row)
        binv[leave] = row
        since_refactor += 1
