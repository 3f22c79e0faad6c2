import json

import pytest
from click.testing import CliRunner

from trilift.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, **kw):
        return runner.invoke(main, [str(a) for a in args], catch_exceptions=False, **kw)

    return invoke


def test_census_grid2(run):
    r = run("census", "--grid", 2)
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["n_classes"] == 1
    assert out["n_triangles"] == 4
    assert out["Q"] == 6
    assert out["hypothesis_ok"]


def test_census_from_stdin(run):
    r = run("census", "--input", "-", "--kind", "similarity-direct", input="# tri\n0 0\n1 0\n0 1/2\n")
    assert r.exit_code == 0
    assert json.loads(r.output)["n_classes"] == 1


def test_bad_input_is_usage_error(run):
    assert run("census", "--input", "-", input="0 0\n1 x\n2 2\n").exit_code == 2
    assert run("census", "--input", "-", input="0 0\n0.5 1\n2 2\n").exit_code == 2
    assert run("census", "--grid", 2, "--random", 5).exit_code == 2
    assert run("census").exit_code == 2


def test_strict_hypothesis_failure(run):
    r = run("census", "--input", "-", "--strict", input="0 0\n1 0\n2 0\n0 1\n")
    assert r.exit_code == 1


def test_oracle_check_seed1(run):
    r = run("oracle-check", "--random", 6, "--seed", 1)
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["ok"]
    assert len(out["equivalence"]) == 4
    assert out["lifts"]["motion"]["ok"]


def test_oracle_check_cap(run):
    assert run("oracle-check", "--grid", 4).exit_code == 2


def test_sweep_rows(run):
    r = run("sweep", "--m-stop", 8)
    lines = r.output.strip().split("\n")
    assert lines[0].startswith("m,n_points,n_triangles,n_classes")
    assert [int(l.split(",")[0]) for l in lines[1:]] == [4, 6, 8]


@pytest.mark.slow
def test_sweep_default_range(run):
    r = run("sweep", "--format", "json")
    rows = json.loads(r.output)["rows"]
    assert [row["m"] for row in rows] == [4, 6, 8, 10, 12]


def test_arrangement_json_and_csv(run):
    r = run("arrangement", "--grid", 3, "--coplanarity")
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["identity_lines"] == 9
    assert out["audits"]["coplanarity"]["ok"]
    r = run("arrangement", "--grid", 3, "--lift", "conformal", "--format", "csv")
    assert r.output.startswith("k,count_exact")


def test_arrangement_size_cap(run):
    assert run("arrangement", "--grid", 9).exit_code == 2
    assert run("arrangement", "--grid", 3, "--max-points", 4).exit_code == 2


def test_generate_roundtrip(run, tmp_path):
    f = tmp_path / "pts.txt"
    assert run("generate", "--family", "random", "--n", 7, "--seed", 3, "--out", f).exit_code == 0
    r = run("generate", "--family", "mirror", "--input", f)
    assert r.exit_code == 0
    assert len([l for l in r.output.splitlines() if not l.startswith("#")]) == 7
    assert run("generate", "--family", "mirror").exit_code == 2
    assert run("generate", "--family", "half-line", "--n", 5).exit_code == 2


def test_output_independent_of_threads(run, monkeypatch):
    one = run("census", "--random", 40, "--seed", 2, "--threads", 1).output
    monkeypatch.setenv("TRILIFT_THREADS", "3")
    assert run("census", "--random", 40, "--seed", 2).output == one


def test_report_bundle(run, tmp_path):
    d = tmp_path / "rep"
    r = run("report", "--random", 6, "--seed", 1, "--out-dir", d)
    assert r.exit_code == 0
    bundle = json.loads((d / "report.json").read_text())
    assert bundle["ok"]
    assert sorted(bundle["files"]) == ["arrangement_conformal.csv", "arrangement_motion.csv", "points.txt"]
    assert set(bundle["census"]) == {"congruence-full", "congruence-direct", "similarity-direct", "similarity-full"}
