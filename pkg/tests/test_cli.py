import csv

from frustration.cli import main
from frustration.io import read_edge_list


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_generate_solve_oracle(tmp_path, capsys):
    g = tmp_path / "g.txt"
    code, out = _run(capsys, "generate", "--model", "er", "--n", 12, "--rho", 0.5, "--neg-frac", 0.5,
                     "--seed", 3, "--out", g)
    assert code == 0 and read_edge_list(g).graph.n == 12
    _, out = _run(capsys, "oracle", g)
    want = int(out.split()[0])
    trace, report = tmp_path / "t.csv", tmp_path / "r.csv"
    for model in ("and", "xor", "abs"):
        code, out = _run(capsys, "solve", g, "--model", model, "--trace", trace, "--csv", report)
        assert code == 0 and f"optimum={want} " in out
    rows = list(csv.DictReader(open(trace)))
    assert float(rows[-1]["lower_bound"]) == float(rows[-1]["upper_bound"]) == want
    assert float(list(csv.DictReader(open(report)))[0]["optimum"]) == want


def test_solve_flags(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("a b -1\nb c -1\na c -1\nc d +1\nb d +1\n")
    for flags in (["--no-fix", "--cuts", "off", "--priorities", "off"], ["--cuts", "upfront", "--no-preprocess"],
                  ["--gap", "0.1", "--time-limit", "10"], ["--backend", "simplex"]):
        code, out = _run(capsys, "solve", g, *flags)
        assert code == 0 and "optimum=1 " in out
    # a, b, c need three colours and d then disagrees with one of b, c
    _, out = _run(capsys, "solve", g, "--model", "multik", "--k", "3")
    assert "optimum=1 " in out
    assert _run(capsys, "oracle", "--k", 3, g)[1].strip() == "1"


def test_oracle_multicolour_and_refusal(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("0 1 +1\n0 2 -1\n1 2 -1\n0 3 -1\n2 3 -1\n")
    assert _run(capsys, "oracle", "--k", 1, g)[1].strip() == "4"
    assert _run(capsys, "oracle", "--k", 3, g)[1].strip() == "0"
    big = tmp_path / "big.txt"
    big.write_text("".join(f"{i} {i + 1} -1\n" for i in range(30)))
    assert main(["oracle", str(big)]) == 2


def test_export_external_and_solve_lp(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("a b -1\nb c -1\na c -1\nc d +1\nb d +1\n")
    lp = tmp_path / "m.lp"
    assert _run(capsys, "export", g, "--model", "and", "--out", lp)[0] == 0
    assert lp.exists() and lp.with_suffix(".ord").exists()
    # the AND objective carries the constant m_neg = 3
    assert _run(capsys, "external", lp, -2)[1].strip() == "1"
    assert "optimum=1 " in _run(capsys, "solve-lp", lp)[1]


def test_sweep(tmp_path, capsys):
    rows = tmp_path / "rows.csv"
    code, out = _run(capsys, "sweep", "--generator", "er", "--n", 10, "--rho", 0.5, "--reps", 2,
                     "--neg-frac", 0.5, 1.0, "--models", "xor", "--rows", rows)
    assert code == 0 and len(list(csv.DictReader(open(rows)))) == 4
    assert main(["sweep", "--n", "10"]) == 2
