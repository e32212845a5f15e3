import pytest

from conftest import tailed_triangle
from frustration.graph import SignedGraph
from frustration.io import (REPORT_COLUMNS, EdgeListError, Instance, data_dir, parse_edge_list,
                            read_edge_list, read_report_csv, report_row, write_edge_list, write_report_csv)
from frustration.solver import frustration_index


def test_parse_labels_and_signs():
    inst = parse_edge_list(["a b +1", "b c -1"])
    g = inst.graph
    assert (g.n, g.m, g.m_neg) == (3, 2, 1)
    assert inst.labels == ("a", "b", "c")


def test_parse_separators_and_comments():
    inst = parse_edge_list(["# header", "", "1, 2, -", "2\t3 +", "4"])
    assert inst.graph.n == 4 and inst.graph.m == 2


def test_self_loop_names_line(tmp_path):
    p = tmp_path / "loop.txt"
    p.write_text("a a +1\n")
    with pytest.raises(EdgeListError, match="line 1"):
        read_edge_list(p)


@pytest.mark.parametrize("lines", [["a b 2"], ["a b"], ["a b +1", "b a -1"], ["a b 0.5"]])
def test_malformed_input(lines):
    with pytest.raises(EdgeListError):
        parse_edge_list(lines)


def test_round_trip_tailed_triangle(tmp_path):
    p = tmp_path / "tailed_triangle.txt"
    write_edge_list(tailed_triangle(), p)
    assert read_edge_list(p).graph == tailed_triangle()


def test_round_trip_weighted(tmp_path):
    g = SignedGraph.from_edges(3, [(0, 1, 0.123456789), (1, 2, -0.987654321), (0, 2, 0.0)], weighted=True)
    p = tmp_path / "w.txt"
    write_edge_list(g, p)
    h = read_edge_list(p, weighted=True).graph
    assert h.edges == g.edges
    assert h.weights == pytest.approx(g.weights, abs=1e-9)


def test_round_trip_keeps_isolated_nodes(tmp_path):
    g = SignedGraph.from_edges(4, [(0, 2, -1)])
    p = tmp_path / "iso.txt"
    write_edge_list(g, p)
    assert read_edge_list(p).graph.n == 4


def test_empty_graph_file(tmp_path):
    p = tmp_path / "empty.txt"
    write_edge_list(SignedGraph(0), p)
    text = p.read_text()
    assert text.startswith("#")
    assert [ln for ln in text.splitlines() if not ln.startswith("#")] == []
    assert read_edge_list(p).graph.n == 0


def test_report_csv(tmp_path):
    g = tailed_triangle()
    rep = frustration_index(g, "xor")
    p = tmp_path / "r.csv"
    write_report_csv([report_row("tailed_triangle", "xor", g, rep)], p)
    rows = read_report_csv(p)
    assert len(rows) == 1 and len(rows[0]) == 10 == len(REPORT_COLUMNS)
    assert float(rows[0]["optimum"]) == 1
    q = tmp_path / "empty.csv"
    write_report_csv([], q)
    assert q.read_text().strip() == ",".join(REPORT_COLUMNS)


def test_data_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FRUSTRATION_DATA", str(tmp_path))
    assert data_dir() == tmp_path


def test_instance_label_check():
    with pytest.raises(ValueError):
        Instance("x", tailed_triangle(), labels=("a", "a", "b", "c"))
