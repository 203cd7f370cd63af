from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ihlab.field import GF, Q
from ihlab.ichain import IChainComplex
from ihlab.kunneth import (KunnethError, convolve, cross_chain, kunneth_invert, kunneth_matrix,
                           kunneth_report, product_complex, relative_kunneth_check, shuffles)
from ihlab.perversity import top, zero
from ihlab.spaces import get_space


@given(st.integers(0, 4), st.integers(0, 4))
def test_shuffle_count_and_signs(p, q):
    sh = shuffles(p, q)
    assert len(sh) == comb(p + q, p)
    assert len({tuple(path) for _, path in sh}) == len(sh)
    # signed count is the Gaussian binomial at -1
    want = 0 if p % 2 and q % 2 else comb((p + q) // 2, p // 2)
    assert sum(s for s, _ in sh) == want


@given(st.lists(st.integers(0, 5), min_size=1, max_size=4),
       st.lists(st.integers(0, 5), min_size=1, max_size=4))
def test_convolution(a, b):
    c = convolve(a, b)
    assert len(c) == len(a) + len(b) - 1
    assert sum(c) == sum(a) * sum(b)


def test_circle_times_circle_is_torus_like(field):
    x = get_space("circle3")
    cx = IChainComplex(x, zero(x.strata), field)
    cxy = product_complex(cx, cx)
    assert cxy.betti_numbers(2) == (1, 2, 1)
    for k in range(3):
        assert kunneth_matrix(cx, cx, k, cxy).invertible


def test_cross_of_fundamental_cycles_is_a_cycle():
    x = get_space("circle3")
    cx = IChainComplex(x, zero(x.strata), Q)
    cxy = product_complex(cx, cx)
    z = cx.degree(1).reps[0]
    w = cross_chain(cxy.x, z, z, Q)
    assert w and cxy.is_relative_cycle(w)
    assert any(cxy.degree(2).class_of(w))


@pytest.mark.parametrize("pa,pb", [("0", "0"), ("0", "t"), ("t", "t")])
def test_singular_factors(pa, pb):
    x = get_space("S'")
    p = zero(x.strata) if pa == "0" else top(x.strata)
    q = zero(x.strata) if pb == "0" else top(x.strata)
    rows = kunneth_report(IChainComplex(x, p, GF(3)), IChainComplex(x, q, GF(3)))
    assert all(r["iso"] for r in rows)


def test_invert_round_trip():
    x = get_space("circle3")
    cx = IChainComplex(x, zero(x.strata), Q)
    m = kunneth_matrix(cx, cx, 1)
    coords = [Q(3), Q(-2)]
    image = m.matrix.matvec(coords)
    assert kunneth_invert(m, image) == coords


def test_relative_pairs():
    c = get_space("cone:circle3")
    base = frozenset(range(c.num_vertices - 1))
    rows = relative_kunneth_check(c, base, zero(c.strata), c, base, zero(c.strata), Q)
    assert all(r["iso"] for r in rows)
    assert [r["rhs"] for r in rows] == [0, 0, 0, 0, 1]


def test_non_invertible_raises():
    x = get_space("circle3")
    cx = IChainComplex(x, zero(x.strata), Q)
    m = kunneth_matrix(cx, cx, 1)
    m.matrix = m.matrix.hstack(m.matrix)
    with pytest.raises(KunnethError):
        kunneth_invert(m, [Q(1), Q(0)])
