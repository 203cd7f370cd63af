import pytest

from ihlab.diagprod import Context
from ihlab.duality import (collared_st_cover, cup_pairing, lefschetz_ladder, lefschetz_matrices,
                           mayer_vietoris_duality_check, pairing_nondegenerate, square_sign,
                           verify_duality)
from ihlab.field import GF, Q, SparseMatrix
from ihlab.perversity import Perversity, dual, top, zero
from ihlab.spaces import collared_suspension, get_space


def const(x, c):
    return Perversity(x.strata, {z.id: c for z in x.strata if z.singular})


@pytest.mark.parametrize("name", ["torus", "sphere2", "S'"])
def test_poincare(name, field):
    x = get_space(name)
    for p in (zero(x.strata), top(x.strata)):
        rep = verify_duality(x, p, field)
        assert rep.ok, rep.table()


def test_perversity_above_top():
    x = get_space("ST")
    rep = verify_duality(x, const(x, 2), Q)
    assert rep.ok
    assert [d["homology_dim"] for d in rep.degrees] == [0, 1, 2, 1]
    assert rep.q == dual(const(x, 2))


def test_report_is_serialisable():
    import json

    rep = verify_duality(get_space("torus"), zero(get_space("torus").strata), Q)
    d = json.loads(json.dumps(rep.to_dict()))
    assert d["ok"] and len(d["degrees"]) == 3


def test_torus_pairing():
    x = get_space("torus")
    m = cup_pairing(x, zero(x.strata), Q, 1)
    dense = m.to_dense()
    assert pairing_nondegenerate(m)
    assert dense[0][0] == dense[1][1] == 0 and dense[0][1] == -dense[1][0] != 0


def test_lefschetz_on_a_cone():
    x = get_space("cone:torus")
    ctx = Context(x, Q)
    for p in (zero(x.strata), top(x.strata)):
        a, b = lefschetz_matrices(x, p, Q, ctx=ctx)
        assert a.ok and b.ok
        lad = lefschetz_ladder(x, p, Q, ctx=ctx)
        assert lad["ok"]


def test_square_sign():
    f = GF(5)
    assert square_sign(f, [[1, 2]], [[1, 2]]) == 1
    assert square_sign(f, [[1, 2]], [[4, 3]]) == -1
    assert square_sign(f, [[0]], [[0]]) == 0
    assert square_sign(f, [[1, 0]], [[0, 1]]) is None


def test_collared_cover_shape():
    x, n, s = collared_suspension(get_space("circle3"))
    U, V, A, B = collared_st_cover(x, n, s)
    assert not (A & B) and U | V == set(range(x.num_vertices))
    assert n in U and n not in V and s in A


def test_mayer_vietoris_on_suspended_circle():
    x, n, s = collared_suspension(get_space("circle3"))
    U, V, A, B = collared_st_cover(x, n, s)
    r = mayer_vietoris_duality_check(x, U, V, zero(x.strata), Q, A=A, B=B)
    assert r["ok"]


def test_matrix_sizes_match():
    m = SparseMatrix.from_dense(Q, [[1, 0], [0, 1]])
    assert pairing_nondegenerate(m)
    assert not pairing_nondegenerate(SparseMatrix.from_dense(Q, [[1, 1], [1, 1]]))
