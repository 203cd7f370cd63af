import json

from click.testing import CliRunner

from ihlab.cli import main


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


def test_space_is_canonical():
    a = run("space", "suspended-torus")
    b = run("space", "suspended-torus")
    assert a.exit_code == 0 and a.output == b.output
    data = json.loads(a.output)
    assert len(data["vertices"]) == 9 and data["n"] == 3


def test_space_unknown():
    r = run("space", "no-such-space")
    assert r.exit_code != 0


def test_compute_subdivides_by_default():
    r = run("compute", "ST", "-p", "2", "--json")
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["subdivisions"] == 1
    assert [h["dim"] for h in out["homology"]] == [0, 1, 2, 1]


def test_compute_relative_and_reps(tmp_path):
    r = run("compute", "cone:torus", "-p", "t", "--subdivide", "0", "--relative", "0,1,2,3,4,5,6",
            "--degrees", "2..3", "--reps", "--json")
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert [h["dim"] for h in out["homology"]] == [2, 1]
    assert len(out["homology"][0]["reps"]) == 2


def test_compute_from_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(run("space", "circle3").output)
    r = run("compute", str(path), "--field", "GF3")
    assert r.exit_code == 0 and "dim" in r.output


def test_fundamental_exit_codes():
    assert run("fundamental", "ST").exit_code == 0
    assert run("fundamental", "klein").exit_code == 1
    assert run("fundamental", "klein", "--field", "2").exit_code == 0


def test_verify_kunneth_table():
    r = run("verify", "kunneth", "S'", "0", "S'", "t", "--json")
    assert r.exit_code == 0
    assert all(d["iso"] for d in json.loads(r.output)["degrees"])


def test_verify_duality_and_lefschetz():
    r = run("verify", "duality", "ST", "-p", "2", "--field", "GF5")
    assert r.exit_code == 0 and "iso" in r.output
    r = run("verify", "duality", "cone:torus", "--lefschetz", "-p", "t", "--json")
    assert r.exit_code == 0
    assert len(json.loads(r.output)["reports"]) == 2


def test_verify_cone_single_space():
    r = run("verify", "cone", "cone:torus", "--json")
    assert r.exit_code == 0
    rows = json.loads(r.output)["results"][0]["checks"]
    assert {row["base"] for row in rows} == {"torus"}


def test_seedless_forbids_sampling():
    r = run("verify", "axioms", "S'", "--sample", "2", env={"IHLAB_SEEDLESS": "1"})
    assert r.exit_code != 0
    assert "IHLAB_SEEDLESS" in r.output


def test_verify_all_restricted():
    r = run("verify", "all", "--suite", "homotopy", "--field", "Q", "--json")
    assert r.exit_code == 0
    report = json.loads(r.output)
    assert report["ok"] and list(report["suites"]) == ["homotopy"]
    assert "seconds" not in report
