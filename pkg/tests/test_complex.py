import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ihlab.complex import (ComplexError, carrier, dumps, from_json, link, subdivide, to_json)
from ihlab.spaces import get_space, library_names


def euler(x):
    return sum((-1) ** (len(s) - 1) for s in x.filt)


def test_library_shapes():
    st_ = get_space("suspended-torus")
    assert st_.num_vertices == 9 and st_.n == 3
    sp = get_space("circle-two-points")
    assert sum(1 for s, f in sp.filt.items() if len(s) == 1 and f == 0) == 2
    assert sp.num_vertices >= 4
    assert get_space("cone:circle3").num_vertices == 4
    assert get_space("circle7-torus").num_vertices == 7


def test_strata_counts():
    assert len(get_space("ST").strata.singular()) == 2
    assert len(get_space("S'").strata.singular()) == 2
    assert len(get_space("S'").strata.regular()) == 2
    assert len(get_space("torus").strata.singular()) == 0
    assert len(get_space("two-spheres").strata.regular()) == 2


@pytest.mark.parametrize("name", ["circle3", "torus", "ST", "S'", "cone:circle3", "klein"])
def test_euler_characteristic_survives_subdivision(name):
    x = get_space(name)
    assert euler(subdivide(x)) == euler(x)


@pytest.mark.parametrize("name", ["ST", "S'", "cone:torus"])
def test_subdivision_keeps_strata(name):
    x = get_space(name)
    y = subdivide(x)
    assert len(y.strata) == len(x.strata)
    for s in y.filt:
        c = carrier(y, s)
        assert y.filt[s] == x.filt[c]


def test_json_round_trip():
    for name in ("ST", "S'", "cone:circle3", "torus-interval"):
        x = get_space(name)
        y = from_json(json.loads(dumps(x)))
        assert dumps(y) == dumps(x)
        assert y.boundary == x.boundary


def test_json_closure_and_explicit_filt():
    data = {"n": 1, "vertices": ["a", "b", "c"],
            "simplices": [{"verts": ["a", "b"], "filt": 1}, {"verts": ["b", "c"], "filt": 1},
                          {"verts": ["a", "c"], "filt": 1}, {"verts": ["a"], "filt": 0}]}
    x = from_json(data)
    assert x.filt[(0,)] == 0 and x.filt[(1,)] == 1
    assert len(x.filt) == 6


def test_bad_input():
    with pytest.raises(ComplexError):
        from_json({"n": 1, "vertices": ["a"], "simplices": [{"verts": ["a", "z"], "filt": 1}]})
    with pytest.raises(KeyError):
        get_space("nonsense")


def test_link_of_suspension_point():
    x = get_space("ST")
    lk = link(x, x.num_vertices - 1)
    assert euler(lk) == 0 and lk.n == 2


def test_products():
    x = get_space("prod:circle3:circle3")
    assert x.n == 2 and x.num_vertices == 9
    assert euler(x) == 0
    y = get_space("torus-interval")
    assert y.boundary


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 9))
def test_circles(k):
    x = get_space(f"circle{k}")
    assert euler(x) == 0
    assert to_json(x)["n"] == 1


def test_names_listed():
    assert "ST" in library_names()
