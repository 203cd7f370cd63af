import json

import pytest

from ihlab import suites
from ihlab.complex import subdivide
from ihlab.field import GF, Q
from ihlab.perversity import top
from ihlab.spaces import get_space


def test_empty_config_passes_trivially():
    status, report = suites.run_suite(suites.SuiteConfig([]))
    assert status == 0 and report["suites"] == {}


def test_unknown_suite():
    with pytest.raises(KeyError):
        suites.SuiteConfig(["nope"])


def test_reports_are_byte_identical():
    cfg = suites.SuiteConfig(["cone", "homotopy"], ["Q", "GF5"])
    a = json.dumps(suites.run_suite(cfg)[1], sort_keys=True)
    b = json.dumps(suites.run_suite(cfg)[1], sort_keys=True)
    assert a == b


def test_timings_only_on_request():
    _, report = suites.run_suite(suites.SuiteConfig(["homotopy"], timings=True))
    assert "homotopy/Q" in report["seconds"]


def test_cone_rows_over_gf5():
    rows = suites.cone_formula_rows("torus", GF(5))
    assert all(r["ok"] for r in rows)
    by = {r["perversity"]: r for r in rows}
    assert by["apex=-1"]["absolute"] == [1, 2, 1, 0]
    assert by["apex=2"]["relative"] == [0, 1, 2, 1]


def test_lift_through_two_subdivisions():
    x = get_space("S'")
    y = subdivide(x, 2)
    p = suites.lift(top(x.strata), y)
    assert sorted(p.values[z.id] for z in y.strata.singular()) == [-1, -1]
    s = next(iter(y.top_simplices))
    assert suites.root_simplex(y, s) in x.filt


def test_failing_check_sets_status(monkeypatch):
    monkeypatch.setitem(suites.RUNNERS, "cone", lambda f: [{"suite": "cone", "ok": False, "checks": []}])
    status, report = suites.run_suite(suites.SuiteConfig(["cone"]))
    assert status == 1 and not report["ok"]


def test_sampling_is_refused_when_seedless(monkeypatch):
    monkeypatch.setenv("IHLAB_SEEDLESS", "1")
    with pytest.raises(RuntimeError):
        suites.axioms_for("S'", Q, sample=1)
