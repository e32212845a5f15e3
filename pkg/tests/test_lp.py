import numpy as np
import pytest

from conftest import random_instance
from frustration.formulation import add_fix_colour, add_triangle_cuts, build
from frustration.graph import SignedGraph
from frustration.lp import Relaxation, bounded_simplex, solve_lp


@pytest.mark.parametrize("kind", ["and", "xor", "abs", "multicolour"])
def test_half_point_is_optimal(kind, rng):
    for _ in range(10):
        g = random_instance(rng, 3, 10)
        m = build(g, kind, k=3)
        sol = solve_lp(m)
        assert sol.optimal and abs(sol.objective) < 1e-6
        if kind != "multicolour":
            half = np.full(m.num_vars, 0.5)
            for vs in m.edge_vars:
                for v in vs:
                    half[v] = 0.0
            if kind == "and":
                for e, (i, j, s) in enumerate(g.edges):
                    # x_ij = 1/2 gives frustration 1/2 - 1/2 = 0 on positive edges
                    half[m.edge_vars[e][0]] = 0.5 if s > 0 else 0.0
            assert m.is_feasible(half)


def test_single_edge_fixed():
    pos = SignedGraph.from_edges(2, [(0, 1, 1)])
    m = build(pos, "xor")
    m.lb[0] = m.ub[0] = 1
    sol = solve_lp(m)
    assert abs(sol.objective) < 1e-9 and sol.x[1] == pytest.approx(1)
    neg = SignedGraph.from_edges(2, [(0, 1, -1)])
    m = build(neg, "xor")
    m.lb[0] = m.ub[0] = 1
    sol = solve_lp(m)
    assert abs(sol.objective) < 1e-9 and sol.x[1] == pytest.approx(0)


def test_backends_agree(rng):
    for _ in range(60):
        g = random_instance(rng, 3, 9)
        kind = ["and", "xor", "abs"][int(rng.integers(3))]
        m = build(g, kind)
        if g.n:
            add_fix_colour(m, g)
        add_triangle_cuts(m, g, "upfront")
        lb = np.array(m.lb)
        ub = np.array(m.ub)
        for v in rng.choice(m.num_vars, size=min(3, m.num_vars), replace=False):
            if m.integer[v] and lb[v] != ub[v]:
                lb[v] = ub[v] = float(rng.integers(2))
        a = solve_lp(m, lb, ub, backend="highs")
        b = solve_lp(m, lb, ub, backend="simplex")
        assert a.status == b.status
        if a.optimal:
            assert a.objective == pytest.approx(b.objective, abs=1e-6)


def test_infeasible_bounds():
    g = SignedGraph.from_edges(2, [(0, 1, 1)])
    m = build(g, "abs")
    lb, ub = np.array(m.lb), np.array(m.ub)
    # x_0 = 1, x_1 = 0 but e = h = 0 violates x_0 - x_1 = e - h
    lb[0] = ub[0] = 1
    ub[1] = 0
    ub[2:] = 0
    for backend in ("highs", "simplex"):
        assert solve_lp(m, lb, ub, backend=backend).status == "infeasible"


def test_simplex_small_problem():
    # min -x - y  s.t. x + y <= 1.5, 0 <= x, y <= 1
    sol = bounded_simplex(np.array([-1.0, -1.0]), np.array([[1.0, 1.0]]), np.array([-np.inf]),
                          np.array([1.5]), np.zeros(2), np.ones(2))
    assert sol.optimal and sol.objective == pytest.approx(-1.5)


def test_relaxation_rows_and_bounds():
    g = SignedGraph.from_edges(8, [(0, 1, -1), (1, 2, 1), (0, 2, 1)] + [(3, v, 1) for v in (0, 4, 5, 6, 7)])
    m = build(g, "xor")
    add_fix_colour(m, g)
    rel = Relaxation(m)
    base = rel.solve().objective
    add_triangle_cuts(m, g, "lazy")
    rel.add_rows(m.cut_pool)
    assert base < 1 - 1e-6
    assert rel.solve().objective >= 1 - 1e-6
    lb = np.array(m.lb)
    ub = np.array(m.ub)
    lb[0] = ub[0] = 1.0
    lb[1] = ub[1] = 1.0
    assert rel.solve().objective <= 1 + 1e-6
    rel.set_bounds(lb, ub)
    # negative edge (0,1) with equal colours is frustrated
    assert rel.solve().objective >= 1 - 1e-6
