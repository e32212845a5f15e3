"""Abstract 0/1 linear programs."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

LE, GE, EQ = "<=", ">=", "="


@dataclass(frozen=True)
class Constraint:
    """Sparse linear constraint ``sum(coef * x[var]) sense rhs``."""

    terms: tuple[tuple[int, float], ...]
    sense: str
    rhs: float
    name: str = ""

    def activity(self, x) -> float:
        return sum(c * x[v] for v, c in self.terms)

    def violation(self, x) -> float:
        """Amount by which ``x`` violates the constraint (0 when satisfied)."""
        a = self.activity(x)
        if self.sense == LE:
            return max(0.0, a - self.rhs)
        if self.sense == GE:
            return max(0.0, self.rhs - a)
        return abs(a - self.rhs)


def linear(terms: dict[int, float]) -> tuple[tuple[int, float], ...]:
    return tuple((v, float(c)) for v, c in sorted(terms.items()) if c != 0)


@dataclass
class IlpModel:
    """Minimisation 0/1 linear program over named variables.

    ``node_vars[i]`` lists the colour variables of graph node ``i`` (one for
    two-colour models, ``k`` for the multi-colour model); ``edge_vars[e]``
    the variables attached to edge ``e``. ``cut_pool`` holds inequalities
    kept out of the model until a relaxation violates them.
    """

    kind: str = ""
    names: list[str] = field(default_factory=list)
    lb: list[float] = field(default_factory=list)
    ub: list[float] = field(default_factory=list)
    integer: list[bool] = field(default_factory=list)
    priority: list[int] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[int, float] = field(default_factory=dict)
    constant: float = 0.0
    cut_pool: list[Constraint] = field(default_factory=list)
    node_vars: list[tuple[int, ...]] = field(default_factory=list)
    edge_vars: list[tuple[int, ...]] = field(default_factory=list)
    k: int = 2
    fixed_node: int | None = None
    cuts_upfront: int = 0
    # every integer-feasible subproblem optimum is an integer
    objective_integral: bool = False

    # -- building ----------------------------------------------------------

    def add_var(self, name: str, lb=0.0, ub=1.0, integer=True, priority=0) -> int:
        self.names.append(name)
        self.lb.append(float(lb))
        self.ub.append(float(ub))
        self.integer.append(bool(integer))
        self.priority.append(int(priority))
        return len(self.names) - 1

    def add_constraint(self, terms: dict[int, float], sense: str, rhs: float, name: str = "") -> Constraint:
        c = Constraint(linear(terms), sense, float(rhs), name or f"c{len(self.constraints)}")
        self.constraints.append(c)
        return c

    def copy(self) -> "IlpModel":
        return copy.deepcopy(self)

    # -- queries -----------------------------------------------------------

    @property
    def num_vars(self) -> int:
        return len(self.names)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    def objective_vector(self) -> np.ndarray:
        c = np.zeros(self.num_vars)
        for v, a in self.objective.items():
            c[v] = a
        return c

    def objective_value(self, x) -> float:
        return self.constant + sum(a * x[v] for v, a in self.objective.items())

    def matrix(self, rows=None):
        """CSR matrix, row lower and upper bounds for ``rows`` (default: all constraints)."""
        rows = self.constraints if rows is None else rows
        data, ri, ci = [], [], []
        lo = np.empty(len(rows))
        hi = np.empty(len(rows))
        for r, con in enumerate(rows):
            for v, a in con.terms:
                ri.append(r)
                ci.append(v)
                data.append(a)
            lo[r] = con.rhs if con.sense in (GE, EQ) else -np.inf
            hi[r] = con.rhs if con.sense in (LE, EQ) else np.inf
        a = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), self.num_vars))
        return a, lo, hi

    def is_feasible(self, x, tol: float = 1e-6) -> bool:
        x = np.asarray(x, dtype=float)
        if np.any(x < np.asarray(self.lb) - tol) or np.any(x > np.asarray(self.ub) + tol):
            return False
        return all(c.violation(x) <= tol for c in self.constraints)

    def colouring_from(self, x, tol: float = 0.5) -> tuple[int, ...]:
        """Read node colours off a (possibly fractional) point by rounding."""
        if self.k == 2 and all(len(v) == 1 for v in self.node_vars):
            return tuple(int(x[v[0]] >= tol) for v in self.node_vars)
        return tuple(int(np.argmax([x[j] for j in v])) for v in self.node_vars)

    def __repr__(self):
        return (f"IlpModel({self.kind!r}, vars={self.num_vars}, cons={self.num_constraints}, "
                f"pool={len(self.cut_pool)})")
