import highspy
import pytest

from conftest import tailed_triangle, random_instance
from frustration.bnb import SolveOptions, solve
from frustration.export import (export_lp, format_lp, lp_constant, parse_lp, priority_path, read_lp)
from frustration.formulation import add_fix_colour, add_triangle_cuts, build, set_branch_priorities
from frustration.oracle import brute_force_L


def _prepared(g, kind):
    m = build(g, kind)
    add_fix_colour(m, g)
    set_branch_priorities(m, g)
    add_triangle_cuts(m, g, "lazy")
    return m


def test_tailed_triangle_and_file(tmp_path):
    p = tmp_path / "tailed_triangle.lp"
    export_lp(build(tailed_triangle(), "and"), p)
    m = read_lp(p)
    assert (m.num_vars, m.num_constraints) == (9, 7)
    assert lp_constant(p) == 3
    text = p.read_text()
    assert "x_0_1" in text and "Binaries" in text


def test_deterministic_and_idempotent(tmp_path):
    m = _prepared(tailed_triangle(), "xor")
    a, b = tmp_path / "a.lp", tmp_path / "b.lp"
    export_lp(m, a)
    export_lp(m, b)
    assert a.read_bytes() == b.read_bytes()
    text = format_lp(m, lazy="section")
    assert format_lp(parse_lp(text), lazy="section") == text


def test_fixed_variable_written_as_equality():
    m = _prepared(tailed_triangle(), "abs")
    assert f" x_{m.fixed_node} = 1" in format_lp(m).splitlines()


def test_priority_sidecar(tmp_path):
    g = tailed_triangle()
    m = _prepared(g, "and")
    p = tmp_path / "m.lp"
    export_lp(m, p)
    lines = priority_path(p).read_text().splitlines()
    assert "x_1 3" in lines
    assert read_lp(p).priority == m.priority


@pytest.mark.parametrize("kind", ["and", "xor", "abs"])
def test_round_trip_solves(kind, rng, tmp_path):
    for t in range(12):
        g = random_instance(rng, 4, 14)
        want = brute_force_L(g)[0]
        p = tmp_path / f"{kind}{t}.lp"
        export_lp(_prepared(g, kind), p)
        assert solve(read_lp(p), None, SolveOptions()).optimum == want
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.readModel(str(p))
        h.run()
        assert h.getInfo().objective_function_value + lp_constant(p) == pytest.approx(want)


def test_lazy_placement():
    m = _prepared(tailed_triangle(), "xor")
    assert "Lazy Constraints" not in format_lp(m)
    assert "Lazy Constraints" in format_lp(m, lazy="section")
    assert "tri_" not in format_lp(m, lazy="omit")
    with pytest.raises(ValueError):
        format_lp(m, lazy="sometimes")
