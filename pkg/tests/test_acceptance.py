"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``. Criterion 4 needs the four
biological network files in ``$FRUSTRATION_DATA`` (or ``./data``) and is
skipped otherwise; see the README for the expected file names.
"""

from pathlib import Path

import highspy
import numpy as np
import pytest

from conftest import CONFIGS, complete, tailed_triangle, three_colourable
from frustration.bnb import OPTIMAL, SolveOptions, effective_branching_factor, solve
from frustration.export import export_lp, lp_constant
from frustration.formulation import add_fix_colour, add_triangle_cuts, build, expected_size
from frustration.generators import GenSpec, generate, random_graph
from frustration.graph import SignedGraph, frustration_count, is_balanced
from frustration.io import data_dir, read_edge_list
from frustration.lp import solve_lp
from frustration.oracle import brute_force_L, brute_force_multicolour
from frustration.preprocess import merge_block_colourings, split_blocks, strip_degree_le_one
from frustration.solver import frustration_index


def verdict(capsys, num, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, detail


def sample_graphs(count, n_lo, n_hi, seed):
    """Seeded random graphs with n in [n_lo, n_hi], density in (0, 1], negative share in [0, 1]."""
    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        rho = float(1.0 - rng.random())  # (0, 1]
        neg = float(rng.random())
        out.append(random_graph(n, rho, neg, seed=seed * 100_000 + t))
    return out


def test_criterion_01_oracle_equivalence(capsys):
    bad = []
    graphs = sample_graphs(500, 4, 16, seed=1)
    for t, g in enumerate(graphs):
        want = brute_force_L(g)[0]
        for kind in ("and", "xor", "abs"):
            for name, opt in CONFIGS.items():
                got = solve(build(g, kind), g, opt).optimum
                if got != want:
                    bad.append((t, kind, name, got, want))
    verdict(capsys, 1, not bad, f"{len(graphs)} graphs x 3 models x 4 configurations agree with the oracle"
            + (f"; mismatches {bad[:5]}" if bad else ""))


def test_criterion_02_small_example_optima(capsys):
    got = {
        "tailed_triangle": [frustration_index(tailed_triangle(), kind).optimum for kind in ("and", "xor", "abs")],
        "three_colourable": [frustration_index(three_colourable(), "multicolour", k=k).optimum for k in (1, 2, 3)],
    }
    ok = got["tailed_triangle"] == [1, 1, 1] and got["three_colourable"] == [4, 1, 0]
    oracle = [brute_force_multicolour(three_colourable(), k)[0] for k in (1, 2, 3)]
    ok = ok and brute_force_L(tailed_triangle())[0] == 1 and oracle == [4, 1, 0]
    verdict(capsys, 2, ok, f"tailed triangle L per model {got['tailed_triangle']}, "
            f"three-colourable graph by colours 1/2/3 {got['three_colourable']}")


def test_criterion_03_k9(capsys):
    g = complete(9)
    vals = [frustration_index(g, kind).optimum for kind in ("and", "xor", "abs")]
    ok = vals == [16, 16, 16] and brute_force_L(g)[0] == 16
    verdict(capsys, 3, ok, f"all-negative K9 optimum {vals}")


DATASETS = {"yeast": 41, "egfr": 193, "macrophage": 332, "ecoli": 371}


def _dataset(name):
    root = data_dir()
    if root is None:
        return None
    for p in sorted(Path(root).glob(f"{name}*")):
        if p.is_file():
            return p
    return None


def test_criterion_04_real_datasets(capsys, tmp_path):
    paths = {name: _dataset(name) for name in DATASETS}
    missing = [name for name, p in paths.items() if p is None]
    if missing:
        with capsys.disabled():
            print(f"\n[SKIP] criterion 4: dataset files not found for {missing} "
                  "(set FRUSTRATION_DATA or create ./data)")
        pytest.skip(f"datasets missing: {missing}")
    results = {}
    g = read_edge_list(paths["yeast"]).graph
    rep = frustration_index(g, "xor", options=SolveOptions(time_limit=3600))
    results["yeast"] = rep.optimum if rep.status == OPTIMAL else None
    for name in ("egfr", "macrophage", "ecoli"):
        g = read_edge_list(paths[name]).graph
        m = build(g, "xor")
        add_fix_colour(m, g)
        add_triangle_cuts(m, g, "upfront")
        lp = tmp_path / f"{name}.lp"
        export_lp(m, lp)
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.readModel(str(lp))
        h.run()
        ok = h.getModelStatus() == highspy.HighsModelStatus.kOptimal
        results[name] = round(h.getInfo().objective_function_value + lp_constant(lp)) if ok else None
    verdict(capsys, 4, results == DATASETS, f"dataset optima {results} (expected {DATASETS})")


def test_criterion_05_lp_relaxation(capsys):
    problems = []
    graphs = [g for g in sample_graphs(100, 5, 16, seed=5)]
    positive_checked = 0
    for t, g in enumerate(graphs):
        for kind in ("and", "xor", "abs"):
            m = build(g, kind)
            plain = solve_lp(m).objective
            if abs(plain) > 1e-6:
                problems.append((t, kind, "plain", plain))
            k = add_fix_colour(m, g)
            root = solve_lp(m).objective
            d = g.degree(k)
            if root > d / 2 + 1e-6:
                problems.append((t, kind, "above d/2", root))
            # strict positivity needs an unbalanced component around the fixed node
            comp = _component(g, k)
            if d > 0 and not is_balanced(g.subgraph(comp)):
                positive_checked += 1
                if root <= 1e-6:
                    problems.append((t, kind, "not positive", root))
            elif root > 1e-6:
                problems.append((t, kind, "positive on balanced component", root))
            add_triangle_cuts(m, g, "upfront")
            cut_root = solve_lp(m).objective
            if cut_root < root - 1e-6:
                problems.append((t, kind, "cuts lowered root", cut_root, root))
    verdict(capsys, 5, not problems,
            f"100 instances x 3 models: plain root 0, fixed root in (0, d(k)/2] on {positive_checked} "
            f"unbalanced cases, cuts never lower it" + (f"; problems {problems[:5]}" if problems else ""))


def _component(g, k):
    seen = {k}
    stack = [k]
    while stack:
        v = stack.pop()
        for u in g.neighbours[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return sorted(seen)


def test_criterion_06_branching_factor(capsys):
    f = effective_branching_factor(3, 1108)
    ones = [effective_branching_factor(1, v) for v in (1, 7, 1108, 10 ** 6)]
    ok = f"{f:.4f}" == "1.0010" and all(x == 1 for x in ones)
    verdict(capsys, 6, ok, f"(3, 1108) -> {f:.6f}; b=1 -> {ones}")


def test_criterion_07_model_sizes(capsys):
    bad = []
    for t, g in enumerate(sample_graphs(50, 4, 30, seed=7)):
        n, m, mp = g.n, g.m, g.m_pos
        want = {"and": (n + m, 2 * mp + g.m_neg), "xor": (n + m, 2 * m), "abs": (n + 2 * m, m)}
        for kind, size in want.items():
            mdl = build(g, kind)
            if (mdl.num_vars, mdl.num_constraints) != size or expected_size(g, kind) != size:
                bad.append((t, kind))
    verdict(capsys, 7, not bad, "model variable and constraint counts on 50 graphs" + (f"; bad {bad}" if bad else ""))


def test_criterion_08_extensions(capsys):
    bad = []
    for t, g in enumerate(sample_graphs(200, 3, 14, seed=8)):
        w = SignedGraph.from_edges(g.n, [(i, j, float(s)) for i, j, s in g.edges], weighted=True)
        if frustration_index(w, "weighted").optimum != brute_force_L(g)[0]:
            bad.append(("weighted", t))
    single = frustration_index(SignedGraph.from_edges(2, [(0, 1, 0.0)], weighted=True), "weighted").optimum
    if abs(single - 0.5) > 1e-9:
        bad.append(("w=0", single))
    for t, g in enumerate(sample_graphs(100, 3, 12, seed=81)):
        want = brute_force_L(g)[0]
        if not frustration_index(g, "multicolour", k=2).optimum == frustration_index(g, "xor").optimum == want:
            bad.append(("k=2", t))
    for t, g in enumerate(sample_graphs(50, 3, 9, seed=82)):
        vals = [frustration_index(g, "multicolour", k=k).optimum for k in (1, 2, 3, 4)]
        if vals != sorted(vals, reverse=True):
            bad.append(("monotone", t, vals))
    verdict(capsys, 8, not bad, f"weighted +-1 on 200, w=0 edge -> {single}, k=2 equals XOR on 100, "
            "nonincreasing in k on 50" + (f"; bad {bad[:5]}" if bad else ""))


def test_criterion_09_preprocessing(capsys):
    bad = []
    opt = SolveOptions()
    for t, g in enumerate(sample_graphs(500, 4, 14, seed=9)):
        want = brute_force_L(g)[0]
        red = strip_degree_le_one(g)
        blocks = split_blocks(red.graph)
        reps = [solve(build(b.graph, "xor"), b.graph, opt) for b in blocks]
        total = sum(r.optimum for r in reps) + red.offset
        col = red.extend(merge_block_colourings(red.graph.n, blocks, [r.incumbent for r in reps]))
        if total != want or frustration_count(g, col).count != want:
            bad.append(t)
    verdict(capsys, 9, not bad, "500 graphs: block optima sum and glued colouring match the oracle"
            + (f"; bad {bad[:5]}" if bad else ""))


def test_criterion_10_anytime_trace(capsys):
    bad = []
    for t in range(20):
        g = generate(GenSpec("er", 40, rho=0.1 + 0.01 * t, neg_frac=0.5, seed=1000 + t))
        kind = ("and", "xor", "abs")[t % 3]
        rep = solve(build(g, kind), g, SolveOptions())
        lbs = [lb for _, lb, _ in rep.trace]
        ubs = [ub for _, _, ub in rep.trace]
        times = [tm for tm, _, _ in rep.trace]
        ok = (rep.status == OPTIMAL and lbs == sorted(lbs) and ubs == sorted(ubs, reverse=True)
              and times == sorted(times) and lbs[-1] == ubs[-1] == rep.optimum
              and frustration_count(g, rep.incumbent).count == rep.optimum
              and frustration_index(g, "xor").optimum == rep.optimum)
        if not ok:
            bad.append(t)
    verdict(capsys, 10, not bad, "20 instances at n=40: LB nondecreasing, UB nonincreasing, final LB = UB = Z*"
            + (f"; bad {bad}" if bad else ""))
