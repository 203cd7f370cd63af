"""Exact scalar fields and sparse linear algebra.

Two kinds of field are supported: the rationals ``Q`` (backed by
``gmpy2.mpq``) and prime fields ``GF(p)`` whose elements are plain Python
ints in ``[0, p)``.  Vectors are sparse dicts ``{index: value}`` with no
stored zeros.

Elimination is column oriented.  Columns are processed left to right and a
column's pivot is its largest nonzero row index (the lowest entry, as in
persistence reduction, which keeps fill-in small on boundary matrices).
The set of pivot columns is always the leftmost independent set, so every
derived basis is reproducible.
"""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction
from numbers import Integral, Rational

import gmpy2
import numpy as np


class FieldMismatchError(ValueError):
    pass


class DimensionError(ValueError):
    pass


class NotACycleError(ValueError):
    pass


class Field:
    """Base class; concrete fields are :class:`Rationals` and :class:`PrimeField`."""

    characteristic = 0
    name = "?"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    # the arithmetic helpers are deliberately tiny; hot loops inline them
    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def is_zero(self, a):
        return not a


class Rationals(Field):
    characteristic = 0
    name = "Q"

    def __call__(self, x):
        if isinstance(x, FieldScalar):
            if x.field != self:
                raise FieldMismatchError(f"{x.field} scalar used over {self}")
            return x.value
        if isinstance(x, float):
            raise TypeError("floating point values are not field elements")
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        return gmpy2.mpq(x)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def to_python(self, a):
        a = gmpy2.mpq(a)
        if a.denominator == 1:
            return int(a.numerator)
        return Fraction(int(a.numerator), int(a.denominator))


class PrimeField(Field):
    def __init__(self, p):
        p = int(p)
        if p < 2 or p >= 2**31 or not gmpy2.is_prime(p):
            raise ValueError(f"GF(p) needs a prime p < 2^31, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, FieldScalar):
            if x.field != self:
                raise FieldMismatchError(f"{x.field} scalar used over {self}")
            return x.value
        if isinstance(x, float):
            raise TypeError("floating point values are not field elements")
        if isinstance(x, Rational) and not isinstance(x, Integral):
            return int(x.numerator) * pow(int(x.denominator), -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a):
        if not a % self.p:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.p)

    def to_python(self, a):
        return int(a)


Q = Rationals()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def parse_field(spec):
    """``"Q"``, ``"GF5"``, ``"GF(5)"``, ``"F5"`` or ``"5"`` -> field."""
    if isinstance(spec, Field):
        return spec
    s = str(spec).strip().upper().replace("(", "").replace(")", "")
    if s in ("Q", "QQ"):
        return Q
    for prefix in ("GF", "FP", "F"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return GF(int(s[len(prefix):]))
    if s.isdigit():
        return GF(int(s))
    raise ValueError(f"unknown field {spec!r}")


class FieldScalar:
    """A field element that remembers its field.

    Only used at API boundaries (building matrices from user data); the
    internal algorithms work on raw values.
    """

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = field(value)

    def _check(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def _wrap(self, v):
        return FieldScalar(self.field, v)

    def __add__(self, o):
        return self._wrap(self.value + self._check(o))

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(self.value - self._check(o))

    def __rsub__(self, o):
        return self._wrap(self._check(o) - self.value)

    def __mul__(self, o):
        return self._wrap(self.value * self._check(o))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __truediv__(self, o):
        return self._wrap(self.value * self.field.inv(self._check(o)))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, o):
        try:
            return self.value == self._check(o)
        except FieldMismatchError:
            return False

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return f"{self.field.to_python(self.value)!r}@{self.field}"


# ---------------------------------------------------------------------------
# sparse vectors


def vec_from_list(field, values):
    out = {}
    for i, v in enumerate(values):
        v = field(v)
        if v:
            out[i] = v
    return out


def vec_to_list(field, vec, n):
    out = [field(0)] * n
    for i, v in vec.items():
        out[i] = v
    return out


def vec_axpy(field, y, a, x):
    """y += a*x in place (sparse dicts)."""
    if not a:
        return y
    if field.characteristic:
        p = field.characteristic
        for k, v in x.items():
            nv = (y.get(k, 0) + a * v) % p
            if nv:
                y[k] = nv
            else:
                y.pop(k, None)
    else:
        for k, v in x.items():
            nv = y.get(k, 0) + a * v
            if nv:
                y[k] = nv
            else:
                y.pop(k, None)
    return y


def vec_scale(field, a, x):
    if not a:
        return {}
    if field.characteristic:
        p = field.characteristic
        return {k: a * v % p for k, v in x.items()}
    return {k: a * v for k, v in x.items()}


# ---------------------------------------------------------------------------
# the elimination engine


class ColumnReducer:
    """Incremental column reduction with the lowest-row pivot rule.

    Columns are fed left to right.  A column that survives reduction becomes
    a pivot column, normalised so its pivot entry is 1.  With ``track=True``
    each pivot also carries the combination of original columns it equals,
    which is what :meth:`solve` needs.
    """

    def __init__(self, field, nrows, track=False):
        self.field = field
        self.nrows = nrows
        self.track = track
        self.pivots = {}  # row -> (column dict, combination dict)
        self.pivot_cols = []  # original column indices that became pivots
        self.ncols = 0
        self._p = field.characteristic

    def _reduce(self, col, comb):
        pivots = self.pivots
        p = self._p
        while col:
            r = max(col)
            piv = pivots.get(r)
            if piv is None:
                return r
            f = col[r]
            pcol, pcomb = piv
            if p:
                for k, v in pcol.items():
                    nv = (col.get(k, 0) - f * v) % p
                    if nv:
                        col[k] = nv
                    else:
                        del col[k]
                if comb is not None:
                    for k, v in pcomb.items():
                        nv = (comb.get(k, 0) - f * v) % p
                        if nv:
                            comb[k] = nv
                        else:
                            del comb[k]
            else:
                for k, v in pcol.items():
                    nv = col.get(k, 0) - f * v
                    if nv:
                        col[k] = nv
                    else:
                        del col[k]
                if comb is not None:
                    for k, v in pcomb.items():
                        nv = comb.get(k, 0) - f * v
                        if nv:
                            comb[k] = nv
                        else:
                            del comb[k]
        return None

    def add(self, col, tracked=True):
        """Feed one column (dict row->value, copied).  Returns the pivot row
        or ``None`` if the column was dependent; in that case, when tracking,
        :attr:`last_relation` holds the dependency (a kernel vector).

        ``tracked=False`` leaves the column out of all recorded combinations,
        so :meth:`solve` answers modulo the span of such columns."""
        j = self.ncols
        self.ncols += 1
        col = dict(col)
        if self.track:
            comb = {j: self.field(1)} if tracked else {}
        else:
            comb = None
        r = self._reduce(col, comb)
        if r is None:
            self.last_relation = comb
            return None
        inv = self.field.inv(col[r])
        if inv != 1:
            col = vec_scale(self.field, inv, col)
            if comb is not None:
                comb = vec_scale(self.field, inv, comb)
        self.pivots[r] = (col, comb)
        self.pivot_cols.append(j)
        self.last_relation = None
        return r

    @property
    def rank(self):
        return len(self.pivots)

    def contains(self, vec):
        col = dict(vec)
        return self._reduce(col, None) is None

    def solve(self, vec):
        """Combination of fed columns equal to ``vec`` or ``None``."""
        if not self.track:
            raise RuntimeError("reducer was built without tracking")
        col = dict(vec)
        comb = {}
        r = self._reduce(col, comb)
        if r is not None:
            return None
        # _reduce subtracted f*comb(pivot) while removing vec; negate
        return vec_scale(self.field, self.field(-1), comb)


def _dense_rank_modp(rows, ncols, p):
    """Rank of a dense matrix mod p (numpy int64; needs p < 2^31)."""
    a = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, v in row.items():
            a[i, j] = v
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
    return r


# ---------------------------------------------------------------------------
# public matrix-level API


class SparseMatrix:
    """Immutable sparse matrix over a field, stored by columns."""

    def __init__(self, field, nrows, ncols, entries=()):
        self.field = field
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        cols = [dict() for _ in range(self.ncols)]
        for r, c, v in entries:
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise DimensionError(f"entry ({r},{c}) outside {nrows}x{ncols}")
            if isinstance(v, FieldScalar) and v.field != field:
                raise FieldMismatchError(f"{v.field} entry in a {field} matrix")
            v = field(v)
            nv = cols[c].get(r, 0) + v
            if field.characteristic:
                nv %= field.characteristic
            if nv:
                cols[c][r] = nv
            else:
                cols[c].pop(r, None)
        self.cols = cols

    @classmethod
    def from_columns(cls, field, nrows, cols):
        m = cls(field, nrows, len(cols))
        m.cols = [dict(c) for c in cols]
        return m

    @classmethod
    def from_dense(cls, field, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        ents = [(i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v]
        return cls(field, nrows, ncols, ents)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [(i, i, 1) for i in range(n)])

    @property
    def entries(self):
        return sorted((r, c, v) for c, col in enumerate(self.cols) for r, v in col.items())

    def to_dense(self):
        out = [[self.field(0)] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def matvec(self, x):
        if isinstance(x, dict):
            items = x.items()
        else:
            if len(x) != self.ncols:
                raise DimensionError("vector length does not match columns")
            items = enumerate(x)
        out = {}
        for j, a in items:
            a = self.field(a)
            if a:
                vec_axpy(self.field, out, a, self.cols[j])
        return out

    def transpose(self):
        ents = [(c, r, v) for c, col in enumerate(self.cols) for r, v in col.items()]
        return SparseMatrix(self.field, self.ncols, self.nrows, ents)

    def hstack(self, other):
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if other.nrows != self.nrows:
            raise DimensionError("row counts differ")
        return SparseMatrix.from_columns(self.field, self.nrows, self.cols + other.cols)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.cols == other.cols)

    def __repr__(self):
        return f"SparseMatrix({self.field}, {self.nrows}x{self.ncols}, nnz={sum(map(len, self.cols))})"


DENSE_FILL = 0.25


def rank(m):
    """Exact rank.  Over GF(p) a matrix whose fill exceeds 25% is handed to
    a dense numpy elimination."""
    f = m.field
    nnz = sum(map(len, m.cols))
    if (f.characteristic and m.nrows and m.ncols
            and nnz > DENSE_FILL * m.nrows * m.ncols and m.nrows * m.ncols <= 4_000_000):
        rows = [dict() for _ in range(m.nrows)]
        for c, col in enumerate(m.cols):
            for r, v in col.items():
                rows[r][c] = v
        return _dense_rank_modp(rows, m.ncols, f.characteristic)
    red = ColumnReducer(f, m.nrows)
    for col in m.cols:
        red.add(col)
    return red.rank


class Subspace:
    """Subspace of F^n stored as a reduced row echelon basis."""

    def __init__(self, field, ambient_dim, vectors=()):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis, self.pivots = _rref(field, [dict(v) for v in vectors])

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        return not self.reduce(v)

    def reduce(self, v):
        """Remainder of ``v`` after clearing the pivot columns."""
        v = dict(v) if isinstance(v, dict) else vec_from_list(self.field, v)
        for b, piv in zip(self.basis, self.pivots):
            a = v.get(piv)
            if a:
                vec_axpy(self.field, v, -a, b)
        return v

    def coordinates(self, v):
        """Coordinates of ``v`` in the echelon basis; raises if outside."""
        v = dict(v) if isinstance(v, dict) else vec_from_list(self.field, v)
        coords = [v.get(piv, self.field(0)) for piv in self.pivots]
        rest = dict(v)
        for a, b in zip(coords, self.basis):
            if a:
                vec_axpy(self.field, rest, -a, b)
        if rest:
            raise ValueError("vector not in subspace")
        return coords

    def dense_basis(self):
        return [vec_to_list(self.field, b, self.ambient_dim) for b in self.basis]

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.field}^{self.ambient_dim})"


def _rref(field, vectors):
    rows = []
    for v in vectors:
        v = {k: field(a) for k, a in v.items() if field(a)}
        for b in rows:
            a = v.get(min(b))
            if a:
                vec_axpy(field, v, -a, b)
        if not v:
            continue
        piv = min(v)
        v = vec_scale(field, field.inv(v[piv]), v)
        for b in rows:
            a = b.get(piv)
            if a:
                vec_axpy(field, b, -a, v)
        rows.append(v)
    rows.sort(key=min)
    return rows, [min(r) for r in rows]


def kernel_basis(m):
    """Echelonised basis of ``{v : m v = 0}``."""
    red = ColumnReducer(m.field, m.nrows, track=True)
    rels = []
    for col in m.cols:
        if red.add(col) is None:
            rels.append(red.last_relation)
    return Subspace(m.field, m.ncols, rels)


def solve(m, b):
    """Some ``x`` with ``m x = b`` (a dense list), or ``None``.

    Free variables are zero: ``x`` is supported on the leftmost independent
    columns.
    """
    if isinstance(b, dict):
        bvec = {k: m.field(v) for k, v in b.items() if m.field(v)}
        if any(k >= m.nrows for k in bvec):
            raise DimensionError("right-hand side longer than row count")
    else:
        if len(b) != m.nrows:
            raise DimensionError(f"right-hand side has {len(b)} entries, matrix has {m.nrows} rows")
        bvec = vec_from_list(m.field, b)
    red = ColumnReducer(m.field, m.nrows, track=True)
    for col in m.cols:
        red.add(col)
    x = red.solve(bvec)
    if x is None:
        return None
    return vec_to_list(m.field, x, m.ncols)


def quotient_coords(cycles, boundaries, v):
    """Coordinates of ``v + boundaries`` in the quotient ``cycles/boundaries``.

    The quotient basis is the set of echelon vectors of ``cycles`` whose
    pivots are not already spanned by ``boundaries`` (taken in order).
    """
    field = cycles.field
    if cycles.field != boundaries.field:
        raise FieldMismatchError("cycles and boundaries over different fields")
    v = dict(v) if isinstance(v, dict) else vec_from_list(field, v)
    if not cycles.contains(v):
        raise NotACycleError("vector is not in the cycle space")
    red = ColumnReducer(field, cycles.ambient_dim, track=True)
    for b in boundaries.basis:
        red.add(b)
    nb = red.ncols
    quotient_index = {}
    for b in cycles.basis:
        j = red.ncols
        if red.add(b) is not None:
            quotient_index[j] = len(quotient_index)
    x = red.solve(v)
    coords = [field(0)] * len(quotient_index)
    for j, a in x.items():
        if j >= nb:
            coords[quotient_index[j]] = a
    return coords
