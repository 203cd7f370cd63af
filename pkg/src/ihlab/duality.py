"""Poincare and Lefschetz duality as explicit matrices.

The duality map is ``D(alpha) = (-1)^{|alpha| n} (alpha n Gamma)`` from
``I_p H^i(X)`` to ``I^q H_{n-i}(X)`` with ``q = t - p``.  Cohomology classes
are the dual basis of the homology representatives, so the matrix of ``D``
has one column per basis cochain.
"""

from __future__ import annotations

from .diagprod import Context, _apply_cols, _norm, _sign, cap, cup, unit
from .field import SparseMatrix, rank
from .fundamental import boundary_spec, fundamental_class, orient
from .ichain import (augmentation_class, coboundary_map, connecting_map, evaluate,
                     induced_map, pullback, union)
from .perversity import dual, zero


class DualityReport:
    """Per-degree dimensions, matrices and ranks of one duality map."""

    def __init__(self, space, p, q, field, kind="poincare"):
        self.space = space
        self.p = p
        self.q = q
        self.field = field
        self.kind = kind
        self.degrees = []

    def add(self, i, m, dim_h, dim_c):
        r = rank(m) if m.nrows and m.ncols else 0
        self.degrees.append({"degree": i, "cohomology_dim": dim_c, "homology_dim": dim_h,
                             "rank": r, "iso": dim_c == dim_h == r,
                             "matrix": [[self.field.to_python(v) if isinstance(self.field.to_python(v), int)
                                         else str(self.field.to_python(v)) for v in row]
                                        for row in m.to_dense()]})

    @property
    def ok(self):
        return all(d["iso"] for d in self.degrees)

    def table(self):
        return [(d["degree"], d["cohomology_dim"], d["homology_dim"], d["rank"], d["iso"])
                for d in self.degrees]

    def to_dict(self):
        return {"space": self.space, "kind": self.kind, "p": self.p.label(), "q": self.q.label(),
                "field": str(self.field), "degrees": self.degrees, "ok": self.ok}

    def __repr__(self):
        return f"<DualityReport {self.space} p={self.p.label()} ok={self.ok}>"


def _gamma(x, field, ctx, rel=None):
    o = orient(x, field)
    if rel is None and not x.boundary:
        return fundamental_class(x, o, field, ctx=ctx)
    return fundamental_class(x, o, field, relative_to_boundary=True, ctx=ctx)


def _dmap(ctx, p, q, i, gamma_coords, n, A=None, B=None, support=None):
    """Columns of ``alpha -> (-1)^{in} alpha n Gamma``."""
    f = ctx.field
    r = zero(ctx.x.strata)
    src = ctx.complex(p, rel=B, support=support).degree(i).dim
    s = f(_sign(i * n))
    cols = []
    for k in range(src):
        y = cap(ctx, p, r, q, i, unit(f, src, k), n, gamma_coords, A=A, B=B, support=support)
        cols.append([_norm(f, s * v) for v in y])
    return cols


def _matrix(field, nrows, cols):
    return SparseMatrix.from_columns(field, nrows, [{r: v for r, v in enumerate(c) if v} for c in cols])


def duality_matrix(x, p, field, i, ctx=None, gamma=None):
    """Matrix of ``D: I_p H^i(X) -> I^{t-p} H_{n-i}(X)``."""
    ctx = ctx or Context(x, field)
    gamma = gamma or _gamma(x, field, ctx)
    q = dual(p)
    cols = _dmap(ctx, p, q, i, gamma.coords, x.n)
    return _matrix(field, ctx.complex(q).degree(x.n - i).dim, cols)


def verify_duality(x, p, field, ctx=None):
    """:class:`DualityReport` for every degree of a closed oriented complex."""
    ctx = ctx or Context(x, field)
    gamma = _gamma(x, field, ctx)
    q = dual(p)
    rep = DualityReport(x.name, p, q, field)
    for i in range(x.n + 1):
        m = duality_matrix(x, p, field, i, ctx=ctx, gamma=gamma)
        rep.add(i, m, ctx.complex(q).degree(x.n - i).dim, ctx.complex(p).degree(i).dim)
    return rep


def lefschetz_matrices(x, p, field, ctx=None):
    """Both Lefschetz maps as reports: ``I_p H^i(X, dX) -> I^q H_{n-i}(X)``
    and ``I_p H^i(X) -> I^q H_{n-i}(X, dX)``."""
    ctx = ctx or Context(x, field)
    bd = boundary_spec(x)
    gamma = _gamma(x, field, ctx, rel=bd)
    q = dual(p)
    n = x.n
    first = DualityReport(x.name, p, q, field, kind="lefschetz rel->abs")
    second = DualityReport(x.name, p, q, field, kind="lefschetz abs->rel")
    for i in range(n + 1):
        cols = _dmap(ctx, p, q, i, gamma.coords, n, B=bd)
        first.add(i, _matrix(field, ctx.complex(q).degree(n - i).dim, cols),
                  ctx.complex(q).degree(n - i).dim, ctx.complex(p, rel=bd).degree(i).dim)
        cols = _dmap(ctx, p, q, i, gamma.coords, n, A=bd)
        second.add(i, _matrix(field, ctx.complex(q, rel=bd).degree(n - i).dim, cols),
                   ctx.complex(q, rel=bd).degree(n - i).dim, ctx.complex(p).degree(i).dim)
    return first, second


def cup_pairing(x, p, field, i, ctx=None, gamma=None):
    """``(alpha, beta) -> e((alpha u beta) n Gamma)`` on ``I_p H^i x I_q H^{n-i}``.

    Rows index ``alpha``, columns ``beta``.  The value is also compared with
    ``(alpha u beta)(Gamma)``; a mismatch raises ``AssertionError``.
    """
    ctx = ctx or Context(x, field)
    gamma = gamma or _gamma(x, field, ctx)
    n = x.n
    q = dual(p)
    z = zero(x.strata)
    t = dual(z)
    f = field
    da = ctx.complex(p).degree(i).dim
    db = ctx.complex(q).degree(n - i).dim
    eps = augmentation_class(ctx.complex(t))
    rows = []
    for a in range(da):
        row = []
        for b in range(db):
            ab = cup(ctx, p, q, z, i, unit(f, da, a), n - i, unit(f, db, b))
            v = evaluate(f, eps, cap(ctx, z, z, t, n, ab, n, gamma.coords))
            assert v == evaluate(f, ab, gamma.coords), "cap evaluation failed on the pairing"
            row.append(v)
        rows.append(row)
    return SparseMatrix.from_dense(f, rows) if rows else SparseMatrix(f, 0, db)


def pairing_nondegenerate(m):
    return m.nrows == m.ncols and rank(m) == m.nrows if m.nrows else m.ncols == 0


# ---------------------------------------------------------------------------
# ladders


def square_sign(field, lhs, rhs):
    """``1`` or ``-1`` when ``lhs = sign * rhs`` (column lists); ``0`` when
    both vanish; ``None`` when no sign works."""
    a = [field(v) for col in lhs for v in col]
    b = [field(v) for col in rhs for v in col]
    if len(a) != len(b):
        return None
    if not any(a) and not any(b):
        return 0
    if a == b:
        return 1
    if a == [_norm(field, -v) for v in b]:
        return -1
    return None


def mayer_vietoris_duality_check(x, U, V, p, field, A=None, B=None, ctx=None):
    """The duality ladder between the cohomology Mayer-Vietoris sequence of
    ``(X, A u B)`` and the homology sequence of the closed cover ``U u V``.

    ``U``, ``V`` are vertex sets whose full subcomplexes cover ``x``; ``A``
    and ``B`` are the closed complements ``X - int U`` and ``X - int V``
    (vertex sets, disjoint).  Each piece is a compact region with boundary
    ``U n B`` (and so on), and its duality map is the cap with its own
    relative fundamental class.  Returns per degree the sign of each square
    (``0`` when both composites vanish, ``None`` when they differ).
    """
    f = field
    ctx = ctx or Context(x, f)
    n = x.n
    U, V, A, B = frozenset(U), frozenset(V), frozenset(A), frozenset(B)
    if A & B:
        raise ValueError("the complements A and B must be disjoint")
    uv = lambda s: all(v in U for v in s) or all(v in V for v in s)  # noqa: E731
    if not all(uv(s) for s in x.filt):
        raise ValueError("U and V do not cover the complex")
    W = U & V
    q = dual(p)
    o = orient(x, f)
    gamma = o.chain()
    AB = union(A, B)
    # pieces: (support, relative part, cohomology pair part of X)
    pieces = {"U": (U, U & A, A), "V": (V, V & B, B), "W": (W, union(W & A, W & B), AB)}

    def piece_gamma(name):
        sup, rel, _ = pieces[name]
        chain = {s: v for s, v in gamma.items() if all(u in sup for u in s)}
        c = ctx.complex(zero(x.strata), rel=rel, support=sup)
        return c.degree(n).class_of(chain)

    gammas = {k: piece_gamma(k) for k in pieces}

    def D_piece(name, i):
        """``H^i(X, rel_X) -> H_{n-i}(piece)``: restrict, then cap."""
        sup, rel, relx = pieces[name]
        restrict = induced_map(ctx.complex(p, rel=rel, support=sup), ctx.complex(p, rel=relx), i)
        dim_x = ctx.complex(p, rel=relx).degree(i).dim
        dmap = _dmap(ctx, p, q, i, gammas[name], n, B=rel, support=sup)
        out = []
        for k in range(dim_x):
            a = pullback(f, restrict, unit(f, dim_x, k))
            out.append(_apply_cols(f, dmap, a, ctx.complex(q, support=sup).degree(n - i).dim))
        return out

    gx = ctx.complex(zero(x.strata)).degree(n).class_of(gamma)

    def D_X(i):
        return _dmap(ctx, p, q, i, gx, n)

    def hdim(pp, k, rel=None, support=None):
        if k < 0 or k > n:
            return 0
        return ctx.complex(pp, rel=rel, support=support).degree(k).dim

    def incl(pp, k, src, dst=(None, None)):
        if k < 0 or k > n:
            return []
        return induced_map(ctx.complex(pp, rel=src[0], support=src[1]),
                           ctx.complex(pp, rel=dst[0], support=dst[1]), k)

    def mv_boundary(k):
        """``H_k(X) -> H_{k-1}(W)``: split a cycle into its U part and the rest."""
        cx = ctx.complex(q)
        cw = ctx.complex(q, support=W)
        out = []
        for z in cx.degree(k).reps:
            zu = {s: v for s, v in z.items() if all(u in U for u in s)}
            out.append(cw.degree(k - 1).class_of(cx.boundary(zu)))
        return out

    def h_boundary(i):
        """``H_{i+1}(X, A u B) -> H_i(X)``: the B part of the boundary."""
        c = ctx.complex(p, rel=AB)
        cx = ctx.complex(p)
        out = []
        for w in c.degree(i + 1).reps:
            d = c.boundary(w)
            out.append(cx.degree(i).class_of({s: v for s, v in d.items() if all(u in B for u in s)}))
        return out

    report = []
    for i in range(n + 1):
        k = n - i
        d_w, d_u, d_v, d_x = D_piece("W", i), D_piece("U", i), D_piece("V", i), D_X(i)
        nw, nu, nv, nx = hdim(q, k, support=W), hdim(q, k, support=U), hdim(q, k, support=V), hdim(q, k)
        w_to_u, w_to_v = incl(q, k, (None, W), (None, U)), incl(q, k, (None, W), (None, V))
        u_to_x, v_to_x = incl(q, k, (None, U)), incl(q, k, (None, V))
        # top row maps as matrices on dual bases
        dim_ab = hdim(p, i, rel=AB)
        dim_a, dim_b, dim_x = hdim(p, i, rel=A), hdim(p, i, rel=B), hdim(p, i)
        ab_to_a = incl(p, i, (A, None), (AB, None))  # H_i(X,A) -> H_i(X,A u B)
        ab_to_b = incl(p, i, (B, None), (AB, None))
        x_to_a = incl(p, i, (None, None), (A, None))
        x_to_b = incl(p, i, (None, None), (B, None))

        def rest(cols, dim_src):
            return [pullback(f, cols, unit(f, dim_src, j)) for j in range(dim_src)]

        # square 1: alpha in H^i(X, A u B)
        lhs1, rhs1 = [], []
        tau_a, tau_b = rest(ab_to_a, dim_ab), rest(ab_to_b, dim_ab)
        for j in range(dim_ab):
            dw = d_w[j]
            lhs1.append(_apply_cols(f, w_to_u, dw, nu) + [_norm(f, -v) for v in _apply_cols(f, w_to_v, dw, nv)])
            a_u = _apply_cols(f, d_u, tau_a[j], nu)
            a_v = _apply_cols(f, d_v, tau_b[j], nv)
            rhs1.append(a_u + [_norm(f, -v) for v in a_v])
        # square 2: (beta, gamma) in H^i(X,A) + H^i(X,B)
        lhs2, rhs2 = [], []
        for j in range(dim_a):
            col = pullback(f, x_to_a, unit(f, dim_a, j))  # beta restricted to H^i(X)
            lhs2.append(_apply_cols(f, d_x, col, nx))
            rhs2.append(_apply_cols(f, u_to_x, d_u[j], nx))
        for j in range(dim_b):
            col = [_norm(f, -v) for v in pullback(f, x_to_b, unit(f, dim_b, j))]
            lhs2.append(_apply_cols(f, d_x, col, nx))
            rhs2.append([_norm(f, -v) for v in _apply_cols(f, v_to_x, d_v[j], nx)])
        # square 3: alpha in H^i(X) -> H^{i+1}(X, A u B)
        lhs3, rhs3 = [], []
        if i < n:
            hb = h_boundary(i)
            d_w1 = D_piece("W", i + 1)
            nw1 = hdim(q, k - 1, support=W)
            dmv = mv_boundary(k) if k >= 1 else []
            sg = f(-_sign(i))
            for j in range(dim_x):
                delta = [_norm(f, sg * v) for v in pullback(f, hb, unit(f, dim_x, j))]
                lhs3.append(_apply_cols(f, d_w1, delta, nw1))
                rhs3.append(_apply_cols(f, dmv, d_x[j], nw1))
        report.append({"degree": i,
                       "square1": square_sign(f, lhs1, rhs1),
                       "square2": square_sign(f, lhs2, rhs2),
                       "square3": square_sign(f, lhs3, rhs3) if i < n else 0,
                       "dims": {"W": nw, "U": nu, "V": nv, "X": nx}})
    ok = all(r[s] is not None for r in report for s in ("square1", "square2", "square3"))
    return {"space": x.name, "p": p.label(), "field": str(f), "degrees": report, "ok": ok}


def collared_st_cover(x, north, south):
    """``U``, ``V``, ``A``, ``B`` for a collared suspension (see
    :func:`ihlab.spaces.collared_suspension`): ``U`` is the north cone with
    the collar, ``A`` the closed south cone."""
    verts = set(range(x.num_vertices))
    low = {v for v in verts if v not in (north, south) and v % 2 == 0}
    high = {v for v in verts if v not in (north, south) and v % 2 == 1}
    U = verts - {south}
    V = verts - {north}
    A = high | {south}
    B = low | {north}
    return U, V, A, B


def lefschetz_ladder(x, p, field, ctx=None):
    """The long exact sequence of ``(X, dX)`` against its homology sequence
    through the two Lefschetz maps and duality on ``dX``; the sign of each
    square per degree (``None`` when a square fails)."""
    f = field
    ctx = ctx or Context(x, f)
    n = x.n
    bd = boundary_spec(x)
    q = dual(p)
    gamma = _gamma(x, f, ctx, rel=bd)
    z = zero(x.strata)
    # Gamma of the boundary: the connecting map applied to Gamma
    g_bd = connecting_map(ctx.complex(z, rel=bd), ctx.complex(z, support=bd), n)
    g_bd = _apply_cols(f, g_bd, gamma.coords, ctx.complex(z, support=bd).degree(n - 1).dim)

    def hdim(pp, k, rel=None, support=None):
        if k < 0 or k > n:
            return 0
        return ctx.complex(pp, rel=rel, support=support).degree(k).dim

    report = []
    for i in range(n + 1):
        k = n - i
        d_rel = _dmap(ctx, p, q, i, gamma.coords, n, B=bd)          # H^i(X,dX) -> H_k(X)
        d_abs = _dmap(ctx, p, q, i, gamma.coords, n, A=bd)          # H^i(X) -> H_k(X,dX)
        d_bd = _dmap(ctx, p, q, i, g_bd, n - 1, support=bd) if i <= n - 1 else []
        dim_rel, dim_x = hdim(p, i, rel=bd), hdim(p, i)
        x_to_rel = induced_map(ctx.complex(p), ctx.complex(p, rel=bd), i)
        qx_to_rel = induced_map(ctx.complex(q), ctx.complex(q, rel=bd), k)
        # square 1: H^i(X,dX) -> H^i(X) against H_k(X) -> H_k(X,dX)
        lhs1, rhs1 = [], []
        for j in range(dim_rel):
            a = pullback(f, x_to_rel, unit(f, dim_rel, j))
            lhs1.append(_apply_cols(f, d_abs, a, hdim(q, k, rel=bd)))
            rhs1.append(_apply_cols(f, qx_to_rel, d_rel[j], hdim(q, k, rel=bd)))
        # square 2: H^i(X) -> H^i(dX) against d: H_k(X,dX) -> H_{k-1}(dX)
        lhs2, rhs2 = [], []
        if i <= n - 1:
            pb = induced_map(ctx.complex(p, support=bd), ctx.complex(p), i)
            conn = connecting_map(ctx.complex(q, rel=bd), ctx.complex(q, support=bd), k)
            nb = hdim(q, k - 1, support=bd)
            for j in range(dim_x):
                a = pullback(f, pb, unit(f, dim_x, j))
                lhs2.append(_apply_cols(f, d_bd, a, nb))
                rhs2.append(_apply_cols(f, conn, d_abs[j], nb))
        # square 3: delta: H^i(dX) -> H^{i+1}(X,dX) against i_*: H_{k-1}(dX) -> H_{k-1}(X)
        lhs3, rhs3 = [], []
        if i <= n - 1:
            d_rel1 = _dmap(ctx, p, q, i + 1, gamma.coords, n, B=bd)
            push = induced_map(ctx.complex(q, support=bd), ctx.complex(q), k - 1)
            nxq = hdim(q, k - 1)
            for j in range(hdim(p, i, support=bd)):
                a = unit(f, hdim(p, i, support=bd), j)
                da = coboundary_map(f, ctx.complex(p, rel=bd), ctx.complex(p, support=bd), i + 1, a)
                lhs3.append(_apply_cols(f, d_rel1, da, nxq))
                rhs3.append(_apply_cols(f, push, d_bd[j], nxq))
        report.append({"degree": i, "square1": square_sign(f, lhs1, rhs1),
                       "square2": square_sign(f, lhs2, rhs2), "square3": square_sign(f, lhs3, rhs3)})
    ok = all(r[s] is not None for r in report for s in ("square1", "square2", "square3"))
    return {"space": x.name, "p": p.label(), "field": str(f), "degrees": report, "ok": ok}
