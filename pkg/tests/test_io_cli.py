import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphlimits.cli import main
from graphlimits.census import census
from graphlimits.errors import BadParams, DegreeExceeded, DuplicateEdge, SelfLoop
from graphlimits.generators import cycle, random_bounded, torus2d
from graphlimits.io import (
    format_coloring,
    format_graph,
    format_spectrum,
    parse_coloring,
    parse_graph,
    parse_spectrum,
    read_census,
    write_census,
    write_coloring,
    write_graph,
)
from graphlimits.spectral import spectrum


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 25), st.integers(2, 5), st.integers(0, 10**6))
def test_graph_and_coloring_roundtrip(n, d, seed):
    g, col = random_bounded(n, d, seed)
    g2, mapping = parse_graph(format_graph(g, "roundtrip\nsecond line"))
    assert g2 == g and mapping is None
    assert parse_coloring(g, format_coloring(g, col)) == col


def test_parse_errors():
    with pytest.raises(BadParams):
        parse_graph("")
    with pytest.raises(BadParams):
        parse_graph("3 2 2\n0 1\n")
    with pytest.raises(BadParams):
        parse_graph("3 1 2\n1 0\n")
    with pytest.raises(SelfLoop):
        parse_graph("3 1 2\nx x\n", remap=True)
    with pytest.raises(DuplicateEdge):
        parse_graph("3 2 2\n0 1\n0 1\n")
    with pytest.raises(DegreeExceeded):
        parse_graph("4 3 2\n0 1\n0 2\n0 3\n")


def test_remap():
    g, mapping = parse_graph("# labels\n3 3 2\na b\nb c\nc a\n", remap=True)
    assert mapping == {"a": 0, "b": 1, "c": 2}
    assert g.edges() == [(0, 1), (0, 2), (1, 2)]


def test_bad_coloring_rejected():
    g, _ = cycle(4)
    with pytest.raises(BadParams):
        parse_coloring(g, "0 1 1\n1 2 1\n2 3 2\n0 3 2\n")


def test_census_and_spectrum_files(tmp_path):
    g, col = torus2d(6)
    c = census(g, col, 2)
    write_census(tmp_path / "c.json", c)
    assert read_census(tmp_path / "c.json") == c
    ev = spectrum(g).eigenvalues
    assert np.array_equal(parse_spectrum(format_spectrum(ev)), ev)


@pytest.fixture
def c6_files(tmp_path):
    g, col = cycle(6)
    gp, cp = tmp_path / "c6.txt", tmp_path / "c6.col"
    write_graph(gp, g)
    write_coloring(cp, g, col)
    return str(gp), str(cp)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cli_census_tv(tmp_path, capsys, c6_files):
    gp, cp = c6_files
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert main(["census", gp, "--coloring", cp, "--r", "2", "--out", a]) == 0
    assert main(["census", gp, "--r", "2", "--out", b]) == 0
    assert sum(e["count"] for e in json.load(open(a))["classes"]) == 6
    code, out = run(capsys, "tv", a, a)
    assert code == 0 and json.loads(out)["tv"] == "0"


def test_cli_spectrum_and_moments(capsys, c6_files):
    gp, _ = c6_files
    code, out = run(capsys, "spectrum", gp, "--format", "csv")
    vals = sorted(float(x) for x in out.split())
    assert code == 0 and np.allclose(vals, [0, 1, 1, 3, 3, 4])
    code, out = run(capsys, "moments", gp, "--p", "4")
    rows = json.loads(out)
    assert code == 0 and [r["global"] for r in rows] == ["1", "2", "6", "20", "70"]
    code, out = run(capsys, "sfrac", gp, "--delta", "1")
    assert json.loads(out)["s_fraction"]["1.0"]["exact"] == "1/2"


def test_cli_cheeger_goodsets_pack(capsys, c6_files):
    gp, _ = c6_files
    code, out = run(capsys, "cheeger", gp)
    assert code == 0 and json.loads(out)["h"] == "2/3"
    code, out = run(capsys, "goodsets", gp, "--eps", "2/3", "--k", "3")
    obj = json.loads(out)
    assert code == 0 and obj["count"] == 6 and obj["status"] == "ok"
    code, out = run(capsys, "pack", gp, "--eps", "2/3", "--k", "3", "--exact")
    assert code == 0 and json.loads(out)["m_count"] == 2


def test_cli_budget_exit_code(capsys, tmp_path):
    g, _ = torus2d(8)
    p = tmp_path / "t.txt"
    write_graph(p, g)
    code, out = run(capsys, "goodsets", str(p), "--eps", "0.8", "--k", "20", "--budget", "500")
    assert code == 3 and json.loads(out)["status"] == "budget_exceeded"


def test_cli_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1 2\n0 0\n")
    assert main(["census", str(bad), "--r", "1"]) == 2
    assert main(["census", str(tmp_path / "missing.txt"), "--r", "1"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["spectrum", str(bad), "--method", "qr"]) == 2
    assert main(["converge", "--r", "1"]) == 2


def test_cli_sequences(capsys):
    code, out = run(capsys, "converge", "--family", "cycle", "--sizes", "10", "20", "--r", "2")
    assert code == 0 and json.loads(out)["tv_consecutive"][0]["tv"]["exact"] == "0"
    code, out = run(capsys, "ids", "--family", "cycle", "--sizes", "16", "32", "--p", "4", "--bins", "4")
    assert code == 0 and json.loads(out)["moments_agree"]
    code, out = run(
        capsys, "thm2", "--family", "torus2d", "--sizes", "6", "--delta", "0.5",
        "--eps", "0.8", "--k", "9", "--budget", "20000", "--format", "csv",
    )
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("n,s,h_cover,m_norm") and lines[1].startswith("36,")


def test_cli_gen(capsys, tmp_path):
    col = tmp_path / "g.col"
    code, out = run(capsys, "gen", "--family", "random_regular", "--size", "20", "--d", "3", "--seed", "4", "--coloring-out", str(col))
    g, _ = parse_graph(out)
    assert code == 0 and g.n == 20 and g.m == 30
    parse_coloring(g, col.read_text())
