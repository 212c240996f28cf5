"""Exit codes and output formats of the command-line surface."""

import json

import pytest

from mpmorse.cli import main
from mpmorse.mfcc import parse_mfcc


@pytest.fixture()
def lower_i_file(tmp_path):
    path = tmp_path / "lower_i.mfcc"
    assert main(["example", "lower_i", "-o", str(path)]) == 0
    return path


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_validate_ok(lower_i_file, capsys):
    assert main(["validate", str(lower_i_file)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] and out["cells"] == 14


def test_validate_reports_violation(tmp_path, capsys):
    bad = tmp_path / "bad.mfcc"
    bad.write_text(
        "mfcc version=1 params=1 field=2\n"
        "cell 0 dim=0 grade=1\n"
        "cell 1 dim=0 grade=0\n"
        "cell 2 dim=1 grade=0 bd=0:1,1:1\n"
    )
    assert main(["validate", str(bad)]) == 1
    out = json.loads(capsys.readouterr().out)
    assert not out["ok"] and "entering after" in out["error"] or "monoton" in out["error"]


def test_syntax_error_is_exit_3(tmp_path, capsys):
    f = tmp_path / "junk.mfcc"
    f.write_text("mfcc version=1 params=1 field=2\ncell zero dim=0 grade=0\n")
    assert main(["validate", str(f)]) == 3
    assert main(["check", str(f)]) == 3
    capsys.readouterr()


def test_missing_file_is_usage_error(capsys):
    assert main(["validate", "no/such/file.mfcc"]) == 2
    capsys.readouterr()


def test_check_passes_and_reports(lower_i_file, capsys):
    assert main(["check", str(lower_i_file)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["verdict"] == "PASSED"
    assert rep["aggregates"]["equal"]
    assert len(rep["grades"]) == 27


def test_check_renders_figures(lower_i_file, tmp_path, capsys):
    figdir = tmp_path / "figs"
    assert main(["check", str(lower_i_file), "--figures", str(figdir), "--quiet"]) == 0
    names = sorted(p.name for p in figdir.glob("*.png"))
    assert names == ["betti_tables.png", "bound_slack.png", "critical_counts.png"]
    assert capsys.readouterr().out == ""  # --quiet holds


def test_betti_csv(lower_i_file, capsys):
    assert main(["betti", str(lower_i_file), "--grades", "1,1,1", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "grade,p,q,value"
    # xi_3^0 = 1 at the top corner
    assert '"1,1,1",3,0,1' in lines


def test_betti_json_over_grid(lower_i_file, capsys):
    assert main(["betti", str(lower_i_file)]) == 0
    rows = json.loads(capsys.readouterr().out)
    nonzero = {(r["p"], r["q"], tuple(r["u"])) for r in rows if r["value"]}
    assert (0, 2, (1, 1, 1)) in nonzero
    assert (3, 0, (1, 1, 1)) in nonzero


def test_critical_json(lower_i_file, capsys):
    assert main(["critical", str(lower_i_file)]) == 0
    rows = json.loads(capsys.readouterr().out)
    at_origin = {r["q"]: r["c"] for r in rows if r["u"] == [0, 0, 0]}
    # empty union below the origin: c_q is plain homology, two components
    assert at_origin[0] == 2 and at_origin[1] == 0 and at_origin[2] == 0


def test_pages_json(lower_i_file, capsys):
    assert main(["pages", str(lower_i_file), "--grade", "1,1,1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["u"] == [1, 1, 1]
    dims = {(d["r"], d["p"], d["q"]): d["dim"] for d in out["dims"]}
    assert dims[(1, 0, 0)] >= 1


def test_pages_wrong_arity(lower_i_file, capsys):
    assert main(["pages", str(lower_i_file), "--grade", "1,1"]) == 2
    capsys.readouterr()


def test_example_unknown_name(capsys):
    assert main(["example", "nothere"]) == 2
    assert "valid names" in capsys.readouterr().err


def test_example_field_flag(capsys):
    assert main(["--field", "5", "example", "fig1_2"]) == 0
    f = parse_mfcc(capsys.readouterr().out)
    assert f.p == 5


def test_random_emits_valid_instance(capsys):
    assert main(["random", "--seed", "3", "--params", "2", "--cells", "25"]) == 0
    f = parse_mfcc(capsys.readouterr().out)
    assert f.n == 2 and f.complex.n_cells <= 25
    assert f.validate().ok


def test_random_bad_parameters(capsys):
    assert main(["random", "--seed", "3", "--params", "9"]) == 2
    capsys.readouterr()


def test_random_then_check_pipeline(tmp_path, capsys):
    out = tmp_path / "r.mfcc"
    assert main(["random", "--seed", "11", "--params", "2", "-o", str(out)]) == 0
    assert main(["check", str(out), "--quiet"]) == 0
    capsys.readouterr()
