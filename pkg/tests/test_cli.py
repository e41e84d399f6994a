import json
from pathlib import Path

import pytest

from clusterbc.cli import main, parse_orbit, read_source

GOLDEN = Path(__file__).parent / "golden"
F_AB = "y1*y2*y3^2 + y1*y3^2 + 2*y1*y3 + y3^2 + y1 + 2*y3 + 1"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_type_b_example(capsys):
    code, out, _ = run(capsys, "expand", "--type", "b", "--n", "3", "--triangulation",
                       "examples/fig-exfpoly.tri", "--orbit", "[3,0]")
    assert code == 0
    assert f"[0,3]\tF\t{F_AB}" in out.splitlines()


def test_expand_type_a_example(capsys):
    code, out, _ = run(capsys, "expand", "--type", "a", "--n", "3", "--triangulation",
                       "examples/hexagon.tri", "--orbit", "(1,4)", "--format", "json")
    assert code == 0
    (res,) = json.loads(out)["results"]
    assert res["F_text"] == "y1*y2*y3 + y1*y3 + y1 + y3 + 1"
    assert res["g"] == [-1, 1, -1] and res["matchings"] == 5


def test_expand_initial_orbit(capsys):
    code, out, _ = run(capsys, "expand", "--type", "c", "--triangulation", "fig-exfpoly", "--orbit", "[3,5]")
    assert code == 0
    assert "[1,7]\tx\tu1" in out  # the orbit of (3,5), named by its smaller member


@pytest.mark.parametrize("t", ["b", "c"])
def test_expand_golden(capsys, t):
    code, out, _ = run(capsys, "expand", "--type", t, "--triangulation", "fig-exfpoly", "--all")
    assert code == 0
    assert out == (GOLDEN / f"fig-exfpoly.{t}.txt").read_text()


def test_enumerate_seeds_golden(capsys):
    code, out, _ = run(capsys, "enumerate-seeds", "--type", "a", "--triangulation", "hexagon")
    assert code == 0
    assert out == (GOLDEN / "hexagon.seeds.txt").read_text()
    code, out, _ = run(capsys, "enumerate-seeds", "--type", "b", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert data["clusters"] == 20 and len(data["variables"]) == 12


def test_verify_counts(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "1", "--n", "3")
    assert code == 0
    assert "20 triangulations × 12 orbits: 240 checks, 0 failures" in out
    code, out, _ = run(capsys, "verify", "--theorem", "2", "--n", "2")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "--cat-interpr", "--n", "3")
    assert code == 0 and "0 failures" in out
    code, out, _ = run(capsys, "verify", "--cc", "--n", "2")
    assert code == 0


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "2", "--n", "3", "--literal")
    assert code == 1
    assert "12 failures" in out and "first counterexample" in out


def test_output_independent_of_threads(capsys, monkeypatch):
    monkeypatch.setenv("CLUSTERBC_THREADS", "2")
    _, a, _ = run(capsys, "verify", "--theorem", "2", "--n", "2", "--format", "json")
    _, b, _ = run(capsys, "verify", "--theorem", "2", "--n", "2", "--threads", "1", "--format", "json")
    assert a == b


def test_snake_graph_plot(capsys, tmp_path):
    png = tmp_path / "g.png"
    code, out, _ = run(capsys, "snake-graph", "--triangulation", "hexagon", "--diagonal", "(1,4)", "--plot", str(png))
    assert code == 0
    assert "matchings\t5" in out
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_cc_map_example(capsys):
    code, out, _ = run(capsys, "cc-map", "--triangulation", "ex-quiver", "--orbit", "[3,0]", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ses"]["middle"] == "2/135/4 ⊕ 3"
    assert data["rhs"]["F"] == F_AB
    code, out, _ = run(capsys, "cc-map", "--triangulation", "hexagon", "--diagonal", "(1,4)")
    assert code == 0 and "module\t2/13" in out


def test_export(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "--type", "b", "--triangulation", "fig-exfpoly", "--out", str(tmp_path))
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    row = next(r for r in report["variables"] if r["orbit"] == "[0,3]")
    assert row["F"] == F_AB
    assert (tmp_path / "report.tsv").read_text().startswith("orbit\trestriction\tF\tg\tx")
    assert (tmp_path / "triangulation.png").exists() and (tmp_path / "tbar.png").exists()


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["expand", "--type", "b", "--triangulation", "missing.tri", "--orbit", "[1,3]"],
    ["expand", "--type", "b", "--n", "3", "--orbit", "[1,3"],
    ["expand", "--type", "b", "--n", "3", "--orbit", "[1,2]"],
    ["expand", "--type", "b", "--triangulation", "fig-exfpoly", "--n", "4"],
    ["verify", "--n", "3"],
    ["cc-map", "--triangulation", "ex-quiver"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_model_error_exit_code(capsys):
    # a diagonal of the triangulation has no string module
    code, _, err = run(capsys, "cc-map", "--triangulation", "fan", "--n", "2", "--diagonal", "(0,2)")
    assert code == 3 and "RepresentationError" in err


def test_rejects_non_symmetric_file(capsys, tmp_path):
    f = tmp_path / "t.tri"
    f.write_text("8; (0,2) (0,3) (0,4) (0,5) (0,6)\n")
    assert run(capsys, "expand", "--type", "b", "--triangulation", str(f))[0] == 2
    assert run(capsys, "expand", "--type", "a", "--triangulation", str(f), "--orbit", "(1,3)")[0] == 0


def test_internal_error_exit_code(capsys, monkeypatch):
    import clusterbc.cli as cli

    def boom(*a, **k):
        raise RuntimeError("model bug")

    monkeypatch.setattr(cli, "expand_type_b", boom)
    code, _, err = run(capsys, "expand", "--type", "b", "--n", "3", "--orbit", "[1,3]")
    assert code == 3 and "model bug" in err


def test_source_resolution():
    assert read_source("examples/hexagon.tri").startswith("#")
    assert read_source("hexagon") == read_source("hexagon.tri")
    assert len(parse_orbit("(0,4)", 3)) == 1
