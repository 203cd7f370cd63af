import pytest

from ihlab.field import GF, Q
from ihlab.fundamental import (NonOrientableError, boundary_of_fundamental, fundamental_class,
                               is_orientation, local_class_check, orient,
                               product_of_classes_check, regular_stratum_decomposition)
from ihlab.spaces import get_space


@pytest.mark.parametrize("name", ["torus", "sphere2", "ST", "S'", "circle3", "two-spheres"])
def test_gamma_is_a_generating_cycle(name, field):
    x = get_space(name)
    o = orient(x, field)
    assert is_orientation(x, field, o.signs)
    g = fundamental_class(x, o, field)
    assert g.degree == x.n
    assert any(g.coords)
    assert not g.complex.project(g.complex.boundary(g.chain))


def test_klein_bottle():
    x = get_space("klein")
    with pytest.raises(NonOrientableError) as err:
        orient(x, Q)
    cyc = err.value.certificate
    assert len(cyc) >= 2 and all(s in x.filt for s in cyc)
    assert any(fundamental_class(x, orient(x, GF(2)), GF(2)).coords)


def test_wedge_of_spheres_decomposes():
    x = get_space("two-spheres")
    d = regular_stratum_decomposition(x, Q)
    assert d["ok"] and d["total_dim"] == 2 and len(d["summands"]) == 2
    g = fundamental_class(x, orient(x, Q), Q)
    lc = local_class_check(x, g, 0)
    assert lc["sheets"] == 2 and lc["local_dim"] == 2 and lc["ok"]


def test_disjoint_union_decomposes():
    d = regular_stratum_decomposition(get_space("disjoint:torus:sphere2"), GF(5))
    assert d["ok"] and d["total_dim"] == 2


def test_boundary_of_gamma():
    for name in ("cone:torus", "torus-interval", "cone:circle3"):
        x = get_space(name)
        g = fundamental_class(x, orient(x, Q), Q)
        assert boundary_of_fundamental(x, g)["ok"]


def test_product_classes():
    r = product_of_classes_check(get_space("circle3"), get_space("ST"), Q)
    assert r["ok"] and r["unit_coefficients"]
