"""One test per acceptance criterion; each prints a PASS/FAIL line with its time.

Run alone with ``python tests/test_acceptance.py`` for just the summary.
"""

import json
import time

from ihlab import suites
from ihlab.field import GF, Q

LINES = []


def _run(num, title, limit, fn):
    t = time.perf_counter()
    res = fn()
    secs = time.perf_counter() - t
    parts = res if isinstance(res, list) else [res]
    ok = all(r["ok"] for r in parts)
    fast = secs < limit
    status = "PASS" if ok and fast else "FAIL"
    line = f"{status}  criterion {num:>2}  {title:<34} {secs:7.1f} s  (limit {limit} s)"
    if not ok:
        bad = [suites.describe(c) for r in parts for c in r["checks"] if not c["ok"]]
        line += "  failing: " + "; ".join(bad[:5])
    LINES.append(line)
    print(line)
    json.dumps(parts)  # reports stay serialisable
    assert ok, line
    assert fast, line
    return parts


def _checks(parts):
    return [c for r in parts for c in r["checks"]]


def test_criterion_01_cone_formula():
    parts = _run(1, "cone formula", 10, lambda: suites.cone_suite(Q))
    rows = _checks(parts)
    assert len(rows) == 3 * 6
    assert {r["base"] for r in rows} == {"circle3", "torus", "S'"}


def test_criterion_02_suspended_torus():
    parts = _run(2, "suspended torus tables", 30, lambda: suites.st_tables(Q))
    dims = {c["check"]: c.get("dims") for c in _checks(parts)}
    assert dims["I^-1H(ST)"] == [1, 2, 1, 0]
    assert dims["I^2H(ST)"] == [0, 1, 2, 1]
    assert dims["I^2H(ST)"] != [1, 0, 2, 1]


def test_criterion_03_kunneth():
    parts = _run(3, "Kunneth", 180, lambda: suites.kunneth_suite(Q))
    assert len(_checks(parts)) == 9


def test_criterion_04_relative_kunneth():
    _run(4, "relative Kunneth", 120, lambda: suites.relative_kunneth_suite(Q))


def test_criterion_05_product_identities():
    parts = _run(5, "product identities", 300, lambda: suites.axioms_suite(Q))
    names = {c["name"] for c in _checks(parts)}
    assert {"coassociativity", "cocommutativity", "counit", "relative boundary square",
            "cup associativity", "graded commutativity", "cap naturality", "cup-cap",
            "cap evaluation", "boundary formulas", "cross-cap"} <= names
    spaces = {c["space"] for c in _checks(parts)}
    assert {"torus", "ST", "S'"} <= spaces
    # no identity is vacuous on any space
    assert all(c["checked"] > 0 for c in _checks(parts)), [
        (c["space"], c["name"]) for c in _checks(parts) if not c["checked"]]


def test_criterion_06_fundamental_classes():
    _run(6, "fundamental classes", 60, lambda: suites.fundamental_suite(Q))


def test_criterion_07_poincare_duality():
    parts = _run(7, "Poincare duality", 120, lambda: suites.duality_suite((Q, GF(5))))
    fields = {(c.get("space"), c.get("field")) for c in _checks(parts)}
    assert ("klein", "GF(2)") in fields and ("ST", "GF(5)") in fields


def test_criterion_08_mayer_vietoris():
    _run(8, "Mayer-Vietoris ladder", 120, lambda: suites.mayer_vietoris_suite(Q))


def test_criterion_09_lefschetz():
    _run(9, "Lefschetz duality", 120, lambda: suites.lefschetz_suite(Q))


def test_criterion_10_homotopy_invariance():
    _run(10, "stratified homotopy invariance", 60, lambda: suites.homotopy_suite(Q))


def test_criterion_11_subdivision():
    _run(11, "subdivision stability", 600, lambda: suites.subdivision_suite(Q))


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
