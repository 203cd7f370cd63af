"""Cross products and the Kunneth isomorphism.

The chain cross product is the Eilenberg-Zilber shuffle map on the
staircase triangulation built by :func:`ihlab.complex.product`.  A shuffle
that puts ``m`` Y-steps ahead of X-steps (counted over all pairs) carries
the sign ``(-1)^m``, so ``(a,b) x (c,d) = ((a,c),(b,c),(b,d)) -
((a,c),(a,d),(b,d))``.
"""

from __future__ import annotations

from functools import lru_cache

from .complex import product, staircase_paths
from .field import SparseMatrix, rank
from .ichain import BoundarySolver, IChainComplex, NotAllowableError, offending_face
from .perversity import kunneth_perversity


class KunnethError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def shuffles(p, q):
    """``[(sign, [(i, j), ...])]`` for the (p, q)-shuffles."""
    out = []
    for path in staircase_paths(p, q):
        inv = 0
        ysteps = 0
        for a, b in zip(path, path[1:]):
            if a[0] == b[0]:
                ysteps += 1
            else:
                inv += ysteps
        out.append((-1 if inv % 2 else 1, path))
    return out


def cross_chain(xy, xi, eta, field):
    """``xi x eta`` on the product complex ``xy`` (built by ``product``)."""
    ny = xy.factors[1].num_vertices
    p = field.characteristic
    out = {}
    for s, a in xi.items():
        for t, b in eta.items():
            ab = a * b
            for sign, path in shuffles(len(s) - 1, len(t) - 1):
                u = tuple(s[i] * ny + t[j] for i, j in path)
                v = out.get(u, 0) + (ab if sign > 0 else -ab)
                if p:
                    v %= p
                if v:
                    out[u] = v
                else:
                    out.pop(u, None)
    return out


def check_allowable(c, chain):
    """Raise :class:`NotAllowableError` naming the offending face/stratum."""
    for s in chain:
        if not c.is_allowable(s):
            k, d, b = offending_face(c.x, s, c.p)
            raise NotAllowableError(
                f"{s} not allowable for {c.p.label()}: face of dim {d} in stratum {k!r}, bound {b}")


def cached_product(x, y, max_dim=None):
    """Product complexes are memoised on the first factor (allowability
    profiles live on the complex, so reuse matters)."""
    store = x.__dict__.setdefault("_products", {})
    full = store.get((id(y), None))
    if full is not None:
        return full[1]
    got = store.get((id(y), max_dim))
    if got is None:
        got = store[(id(y), max_dim)] = (y, product(x, y, max_dim=max_dim))
    return got[1]


def product_complex(cx, cy, max_dim=None):
    """``I^Q C_*`` of the product pair ``(X x Y, A x Y u X x B)``."""
    x, y = cx.x, cy.x
    xy = cached_product(x, y, max_dim)
    q = kunneth_perversity(cx.p, cy.p, xy.strata)
    ny = y.num_vertices
    rx, ry = cx.in_rel, cy.in_rel
    sx, sy = cx.in_support, cy.in_support

    def px(s):
        return tuple(sorted({v // ny for v in s}))

    def py(s):
        return tuple(sorted({v % ny for v in s}))

    rel = None
    if rx is not None or ry is not None:
        def rel(s):
            return (rx is not None and rx(px(s))) or (ry is not None and ry(py(s)))
    sup = None
    if sx is not None or sy is not None:
        def sup(s):
            return (sx is None or sx(px(s))) and (sy is None or sy(py(s)))
    return IChainComplex(xy, q, cx.field, rel=rel, support=sup)


def tensor_basis(cx, cy, k):
    """``[(i, a, j, b)]`` in the fixed order: X-degree, then a, then b."""
    out = []
    for i in range(k + 1):
        j = k - i
        if i > cx.x.n or j > cy.x.n:
            continue
        da, db = cx.degree(i).dim, cy.degree(j).dim
        for a in range(da):
            for b in range(db):
                out.append((i, a, j, b))
    return out


def convolve(bx, by):
    out = [0] * (len(bx) + len(by) - 1)
    for i, a in enumerate(bx):
        for j, b in enumerate(by):
            out[i + j] += a * b
    return tuple(out)


class CrossSolver:
    """Cross products of representatives as extra columns over the product
    boundary block in degree ``k``; solves for tensor coordinates."""

    def __init__(self, cx, cy, cxy, k):
        self.k = k
        self.basis = tensor_basis(cx, cy, k)
        f = cx.field
        chains = []
        for i, a, j, b in self.basis:
            z = cross_chain(cxy.x, cx.degree(i).reps[a], cy.degree(j).reps[b], f)
            check_allowable(cxy, z)
            chains.append(cxy.project(z))
        self.chains = chains
        self.solver = BoundarySolver(cxy, k, chains)

    @property
    def rank(self):
        return len(self.solver.independent)

    @property
    def injective(self):
        return self.rank == len(self.basis)

    def invert(self, z):
        """Tensor coordinates of the class of ``z``."""
        if not self.injective:
            raise KunnethError(f"cross product not injective in degree {self.k}")
        out = self.solver.solve(z)
        if out is None:
            raise KunnethError(f"class in degree {self.k} is outside the image of the cross product")
        return out


class CrossProductMatrix:
    def __init__(self, k, matrix, basis):
        self.k = k
        self.matrix = matrix
        self.basis = basis

    @property
    def is_square(self):
        return self.matrix.nrows == self.matrix.ncols

    @property
    def rank(self):
        return rank(self.matrix)

    @property
    def invertible(self):
        return self.is_square and self.rank == self.matrix.ncols

    def __repr__(self):
        return f"CrossProductMatrix(k={self.k}, {self.matrix.nrows}x{self.matrix.ncols})"


def kunneth_matrix(cx, cy, k, cxy=None):
    """Matrix of ``(+) H_i(X) (x) H_j(Y) -> H_k(X x Y)`` in the computed bases."""
    if cxy is None:
        cxy = product_complex(cx, cy)
    basis = tensor_basis(cx, cy, k)
    hk = cxy.degree(k)
    cols = []
    for i, a, j, b in basis:
        z = cross_chain(cxy.x, cx.degree(i).reps[a], cy.degree(j).reps[b], cx.field)
        check_allowable(cxy, z)
        coords = hk.class_of(z)
        cols.append({r: v for r, v in enumerate(coords) if v})
    return CrossProductMatrix(k, SparseMatrix.from_columns(cx.field, hk.dim, cols), basis)


def kunneth_invert(m, z):
    """Unique preimage of product coordinates ``z`` under ``m``."""
    from .field import solve

    if not m.invertible:
        raise KunnethError(f"cross product matrix in degree {m.k} is not invertible")
    x = solve(m.matrix, z if isinstance(z, dict) else list(z))
    if x is None:
        raise KunnethError("no preimage")
    return x


def kunneth_report(cx, cy, cxy=None, top=None):
    """Per-degree ``(k, dim LHS, dim RHS, rank of cross map, iso)``."""
    if cxy is None:
        cxy = product_complex(cx, cy)
    top = cx.x.n + cy.x.n if top is None else top
    rows = []
    for k in range(top + 1):
        lhs = len(tensor_basis(cx, cy, k))
        rhs = cxy.betti(k)
        r = CrossSolver(cx, cy, cxy, k).rank
        rows.append({"degree": k, "lhs": lhs, "rhs": rhs, "rank": r,
                     "iso": lhs == rhs == r})
    return rows


def relative_kunneth_check(x, a, p, y, b, q, field):
    """Relative Kunneth on ``(X, A) x (Y, B)``; ``a``/``b`` are subcomplex
    specs (vertex sets or predicates, or None)."""
    cx = IChainComplex(x, p, field, rel=a)
    cy = IChainComplex(y, q, field, rel=b)
    return kunneth_report(cx, cy)
