from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ihlab.field import (GF, Q, FieldMismatchError, FieldScalar, SparseMatrix, kernel_basis,
                         parse_field, rank, solve)


def rank_oracle(rows, p=None):
    """Plain Gaussian elimination on Fractions (or ints mod p)."""
    m = [[Fraction(v) if p is None else v % p for v in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if p is None else pow(m[r][c], -1, p)
        for i in range(len(m)):
            if i != r and m[i][c]:
                k = m[i][c] * inv
                m[i] = [a - k * b if p is None else (a - k * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=6))


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([None, 2, 3, 5, 7]))
def test_rank_matches_oracle(rows, p):
    f = Q if p is None else GF(p)
    assert rank(SparseMatrix.from_dense(f, rows)) == rank_oracle(rows, p)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_kernel_is_kernel(rows):
    m = SparseMatrix.from_dense(Q, rows)
    ker = kernel_basis(m)
    assert ker.dim == m.ncols - rank(m)
    for v in ker.dense_basis():
        assert not any(m.matvec(v))


@settings(max_examples=80, deadline=None)
@given(matrices, st.sampled_from([Q, GF(5)]))
def test_solve_recovers_image(rows, f):
    m = SparseMatrix.from_dense(f, rows)
    x = [f(i + 1) for i in range(m.ncols)]
    b = m.matvec(x)
    y = solve(m, b)
    assert y is not None
    assert m.matvec(y) == b


def test_parse_field():
    assert parse_field("Q") is Q
    assert parse_field("GF(5)") == GF(5) == parse_field("F5") == parse_field("5")
    with pytest.raises(ValueError):
        parse_field("GF4")
    with pytest.raises(ValueError):
        parse_field("R")


def test_gf_arithmetic():
    f = GF(7)
    assert f(-1) == 6
    assert f(Fraction(1, 3)) == 5
    assert f.inv(3) == 5
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_no_floats():
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(TypeError):
        GF(3)(1.0)


def test_scalars_remember_field():
    a = FieldScalar(GF(5), 3)
    assert a * 2 == 1
    assert (a / 3).value == 1
    with pytest.raises(FieldMismatchError):
        a + FieldScalar(GF(7), 1)
    assert Q.to_python(Q(Fraction(2, 4))) == Fraction(1, 2)


def test_rank_over_gf2_differs():
    rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert rank(SparseMatrix.from_dense(Q, rows)) == 3
    assert rank(SparseMatrix.from_dense(GF(2), rows)) == 2
