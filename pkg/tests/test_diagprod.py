import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ihlab.diagprod import (Context, cap, check_cap_evaluation, check_coassociativity,
                            check_counit, check_cup_cap, check_graded_commutativity, cup,
                            perversity_family, unit)
from ihlab.field import GF, Q
from ihlab.perversity import PerversityError, top, zero
from ihlab.spaces import get_space

TORUS = get_space("torus")
CTX = Context(TORUS, Q)
P0 = zero(TORUS.strata)


def test_cup_on_torus_is_a_symplectic_form():
    a, b = unit(Q, 2, 0), unit(Q, 2, 1)
    ab = cup(CTX, P0, P0, P0, 1, a, 1, b)
    ba = cup(CTX, P0, P0, P0, 1, b, 1, a)
    aa = cup(CTX, P0, P0, P0, 1, a, 1, a)
    assert any(ab)
    assert ab == [-v for v in ba]
    assert not any(aa)


coeffs = st.lists(st.integers(-4, 4), min_size=2, max_size=2)


@settings(max_examples=30, deadline=None)
@given(coeffs, coeffs)
def test_cup_is_bilinear_and_anticommutes(x, y):
    a, b = [Q(v) for v in x], [Q(v) for v in y]
    ab = cup(CTX, P0, P0, P0, 1, a, 1, b)
    ba = cup(CTX, P0, P0, P0, 1, b, 1, a)
    assert ab == [-v for v in ba]
    e = [cup(CTX, P0, P0, P0, 1, unit(Q, 2, i), 1, unit(Q, 2, j)) for i in range(2) for j in range(2)]
    want = [sum(a[i] * b[j] * e[2 * i + j][0] for i in range(2) for j in range(2))]
    assert ab == want


def test_unit_class_is_a_unit():
    one = [Q(1)]
    for j in range(3):
        h = CTX.complex(P0).degree(j).dim
        for k in range(h):
            beta = unit(Q, h, k)
            assert cup(CTX, P0, P0, P0, 0, one, j, beta) == beta


def test_cap_with_fundamental_class():
    from ihlab.fundamental import fundamental_class, orient

    g = fundamental_class(TORUS, orient(TORUS, Q), Q, ctx=CTX)
    images = [cap(CTX, P0, P0, P0, 1, unit(Q, 2, i), 2, g.coords) for i in range(2)]
    assert all(any(v) for v in images)
    assert images[0] != images[1]


def test_inadmissible_products_are_refused():
    x = get_space("ST")
    ctx = Context(x, Q)
    t = top(x.strata)
    with pytest.raises(PerversityError):
        cup(ctx, zero(x.strata), zero(x.strata), t, 0, [Q(1)], 0, [Q(1)])


def test_family_deduplicates():
    assert [p.label() for p in perversity_family(get_space("ST").strata)] == ["0", "t", "-1", "2"]
    assert [p.label() for p in perversity_family(get_space("S'").strata)] == ["0", "t", "1", "2"]
    assert len(perversity_family(TORUS.strata)) == 1


@pytest.mark.parametrize("fld", [Q, GF(3)], ids=str)
def test_identities_on_circle_with_two_points(fld):
    x = get_space("S'")
    ctx = Context(x, fld)
    fam = perversity_family(x.strata)
    for res in (check_coassociativity(ctx, fam), check_counit(ctx, fam), check_cup_cap(ctx, fam),
                check_cap_evaluation(ctx, fam), check_graded_commutativity(ctx, fam)):
        assert res["ok"], res
        assert res["certificate"] is None


def test_torus_squares_vanish_over_gf2():
    ctx = Context(TORUS, GF(2))
    a = unit(GF(2), 2, 0)
    assert not any(cup(ctx, P0, P0, P0, 1, a, 1, a))
    res = check_graded_commutativity(ctx, [P0])
    assert res["ok"]
