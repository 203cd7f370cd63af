import pytest
from hypothesis import given
from hypothesis import strategies as st

from ihlab.perversity import (Perversity, PerversityError, diagonal_condition, dual,
                              from_codim, is_gm_classical, kunneth_perversity, parse_perversity,
                              top, transfer, zero)
from ihlab.spaces import get_space

ST = get_space("ST")
SP = get_space("S'")


def sing(x):
    return [z.id for z in x.strata if z.singular]


def perversities(x):
    ids = sing(x)
    return st.lists(st.integers(-3, 5), min_size=len(ids), max_size=len(ids)).map(
        lambda vs: Perversity(x.strata, dict(zip(ids, vs))))


@given(perversities(ST))
def test_dual_is_involution(p):
    assert dual(dual(p)) == p
    assert p + dual(p) == top(ST.strata)


@given(perversities(SP), perversities(SP))
def test_diagonal_condition_is_dual_inequality(p, q):
    # Dr >= Dp + Dq with r = p + q - t is the boundary case
    r = p + q - top(SP.strata)
    assert diagonal_condition(p, q, r)
    assert diagonal_condition(p, q, r + zero(SP.strata))


def test_values_and_top():
    t = top(ST.strata)
    assert [t[s] for s in sing(ST)] == [1, 1]
    assert [top(SP.strata)[s] for s in sing(SP)] == [-1, -1]
    assert zero(ST.strata) <= t


def test_regular_strata_stay_zero():
    reg = next(z.id for z in ST.strata if not z.singular)
    with pytest.raises(PerversityError):
        Perversity(ST.strata, {reg: 1})


def test_parse():
    assert parse_perversity("0", ST.strata) == zero(ST.strata)
    assert parse_perversity("t", ST.strata) == top(ST.strata)
    assert parse_perversity("dual:t", ST.strata) == zero(ST.strata)
    p = parse_perversity("-1", ST.strata)
    assert [p[s] for s in sing(ST)] == [-1, -1]
    q = parse_perversity('{"codim": {"3": 2}}', ST.strata)
    assert [q[s] for s in sing(ST)] == [2, 2]
    with pytest.raises(PerversityError):
        parse_perversity("wat", ST.strata)


def test_gm_classical():
    assert is_gm_classical(zero(ST.strata))
    assert is_gm_classical(top(ST.strata))
    assert not is_gm_classical(from_codim(ST.strata, {3: 2}))


def test_transfer_to_link():
    c = get_space("cone:torus")
    apex = c.strata.stratum_of((c.num_vertices - 1,))
    p = Perversity(c.strata, {apex: 1})
    link = get_space("torus")
    assert transfer(p, link.strata) == zero(link.strata)


def test_kunneth_perversity_on_products():
    x = get_space("prod:S':S'")
    q = kunneth_perversity(zero(SP.strata), zero(SP.strata), x.strata)
    vals = {sid: q[sid] for sid in q.values}
    # products of two singular points get p + q + 2
    both = [sid for sid in vals if all(SP.strata[k].singular for k in sid)]
    assert both and all(vals[sid] == 2 for sid in both)
