import json

import pytest

from gridcover.cli import EXIT_BOUNDS, EXIT_DATA, EXIT_NOT_FOUND, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize("argv,want", [
    (("--grid", "5x5", "--family", "closed-convex"), 3),
    (("--grid", "3x3x3", "--family", "line"), 9),
    (("--grid", "5x5", "--family", "orthoconvex", "--max-inner-corners", "1"), 2),
    (("--grid", "4x4", "--family", "monotone"), 4),
    (("--grid", "4x4", "--family", "fixed-shape", "--shape", "smallest-l"), 4),
])
def test_solve(capsys, argv, want):
    code, out = run_json(capsys, "solve", *argv)
    assert code == EXIT_OK
    assert out["exact"] == out["lower"] == out["upper"] == want


def test_solve_json_carries_the_cover(capsys):
    code, out = run_json(capsys, "solve", "--grid", "3x3", "--family", "circle", "--json")
    assert code == EXIT_OK and len(out["cover"]["curves"]) == out["exact"]


def test_solve_budget_falls_back_to_bounds(capsys):
    code, out = run_json(capsys, "solve", "--grid", "10x10", "--family", "orthoconvex", "--time-budget", "2")
    assert code == EXIT_BOUNDS
    assert out["exact"] is None and out["lower"] <= out["upper"]


@pytest.mark.parametrize("argv,want", [
    (("skew", "--n", "6"), 10),
    (("lines", "--grid", "3x4"), 3),
    (("convex-rings", "--grid", "5x5"), 3),
    (("concentric-circles", "--n", "3"), 6),
    (("algebraic-bundles", "--n", "7", "--k", "3"), 3),
    (("monotone", "--grid", "2x2x2x2"), 6),
])
def test_construct(capsys, argv, want):
    code, out = run_json(capsys, "construct", *argv)
    assert code == EXIT_OK and out["verified"] and out["count"] == want


def test_tile(capsys):
    code, out = run_json(capsys, "tile", "unit-circle", "--n", "8")
    assert code == EXIT_OK and out["found"]
    assert out["lower"] == 16 and out["best_count"] <= out["count"]
    assert out["bound"]["holds"]
    code, out = run_json(capsys, "tile", "--shape", "smallest-l", "--n", "8")
    assert code == EXIT_OK and out["points_per_curve"] == "8"


def test_tile_not_found(capsys):
    code, out = run_json(capsys, "tile", "unit-circle", "--max-period", "1")
    assert code == EXIT_NOT_FOUND and out["found"] is False


def test_tile_shape_from_file(tmp_path, capsys):
    f = tmp_path / "shape.json"
    f.write_text(json.dumps({"offsets": [[0, 0], [1, 0]]}))
    code, out = run_json(capsys, "tile", str(f))
    assert code == EXIT_OK and out["points_per_curve"] == "2"


def test_converse(capsys):
    code, out = run_json(capsys, "converse", "--n", "6")
    assert code == EXIT_OK
    assert out["points"] == 36 and out["star_property"] and out["max_collinear"] == 6


@pytest.mark.parametrize("argv", [
    ("solve", "--grid", "5x5", "--family", "parabola"),
    ("solve", "--grid", "5xq", "--family", "line"),
    ("solve", "--family", "line"),
    ("construct", "skew"),
    ("converse", "--n", "0"),
    ("reproduce", "--only", "nonsense"),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    # argparse errors exit directly, validation errors come back as a return code
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_render_round_trip(tmp_path, capsys):
    svg = tmp_path / "a.svg"
    code, out = run_json(capsys, "solve", "--grid", "5x5", "--family", "orthoconvex", "--max-inner-corners", "1",
                         "--json", "--svg", str(svg))
    assert code == EXIT_OK
    scene = tmp_path / "cover.json"
    scene.write_text(json.dumps(out))
    again = tmp_path / "b.svg"
    assert main(["render", str(scene), str(again)]) == EXIT_OK
    assert again.read_text() == svg.read_text()


def test_render_bad_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["render", str(bad)]) == EXIT_DATA
    odd = tmp_path / "odd.json"
    odd.write_text(json.dumps({"hello": 1}))
    assert main(["render", str(odd)]) == EXIT_DATA


def test_reproduce_only(capsys):
    code, out = run_json(capsys, "reproduce", "--only", "lines,small-curves", "--json")
    assert code == EXIT_OK and out["passed"]
    assert [r["key"] for r in out["results"]] == ["lines", "small-curves"]


def test_reproduce_table(capsys):
    code, out = run(capsys, "reproduce", "--only", "lines")
    assert code == EXIT_OK and "1/1 criteria pass" in out


def test_threads_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("GRIDCOVER_THREADS", "2")
    code, out = run_json(capsys, "solve", "--grid", "4x4", "--family", "circle")
    assert code == EXIT_OK and out["exact"] == 3
    monkeypatch.setenv("GRIDCOVER_THREADS", "zero")
    assert main(["solve", "--grid", "4x4", "--family", "circle"]) == EXIT_USAGE
