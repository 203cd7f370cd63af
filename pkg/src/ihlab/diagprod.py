"""The diagonal, the algebraic diagonal and the cup, cap and cross products.

Everything happens on homology classes.  A homology class is a coordinate
list in the representative basis of a :class:`~ihlab.ichain.DegreeHomology`;
a cohomology class is a list of values on that basis (the dual basis).

Tensor coordinates are dicts ``{(i, a, j, b): c}`` meaning
``c * e_a (x) e_b`` with ``e_a`` in degree ``i`` of the left factor and
``e_b`` in degree ``j`` of the right factor.

Sign conventions (each formula is applied verbatim at one place):

* coboundary ``(d alpha)(x) = -(-1)^{|alpha|} alpha(dx)`` in
  :func:`ihlab.ichain.coboundary_map`;
* cup ``(alpha u beta)(x) = sum (-1)^{|beta||y|} alpha(y) beta(z)`` in
  :func:`cup`;
* cap ``alpha n x = sum (-1)^{|alpha||y|} alpha(z) y`` in :func:`cap`;
* tensor swap ``y (x) z -> (-1)^{|y||z|} z (x) y`` in :func:`swap`;
* cohomology cross ``(alpha x beta)(x x y) = (-1)^{|beta||x|} alpha(x) beta(y)``
  in :func:`cohomology_cross`.
"""

from __future__ import annotations

from .ichain import (IChainComplex, NotAllowableError, as_predicate, augmentation,
                     connecting_map, evaluate, induced_map, pullback, union)
from .kunneth import (CrossSolver, cached_product, check_allowable, cross_chain,
                      product_complex)
from .perversity import PerversityError, require_diagonal, top


class Context:
    """Chain complexes, products and solvers for one complex over one field.

    Subcomplexes are given as vertex sets or unions of them (see
    :func:`ihlab.ichain.union`), which makes them usable as cache keys.
    """

    def __init__(self, x, field):
        self.x = x
        self.field = field
        self._complexes = {}
        self._solvers = {}
        self._diag = {}

    def complex(self, p, rel=None, support=None):
        rel, support = _norm_spec(rel), _norm_spec(support)
        key = (_pkey(p), _skey(rel), _skey(support))
        c = self._complexes.get(key)
        if c is None:
            c = self._complexes[key] = IChainComplex(self.x, p, self.field, rel=rel, support=support)
        return c

    def cross_solver(self, cp, cq, k):
        key = (id(cp), id(cq), k)
        s = self._solvers.get(key)
        if s is None:
            cxy = product_complex(cp, cq, max_dim=self.x.dim + 1)
            s = self._solvers[key] = (CrossSolver(cp, cq, cxy, k), cxy)
        return s

    def diagonal(self, r, p, q, A=None, B=None, support=None):
        """The algebraic diagonal ``I^r H(S, A u B) -> I^p H(S, A) (x) I^q H(S, B)``."""
        A, B, support = _norm_spec(A), _norm_spec(B), _norm_spec(support)
        key = (_pkey(r), _pkey(p), _pkey(q), _skey(A), _skey(B), _skey(support))
        d = self._diag.get(key)
        if d is None:
            d = self._diag[key] = AlgebraicDiagonal(self, r, p, q, A, B, support)
        return d


def _pkey(p):
    return tuple(sorted(p.values.items(), key=repr))


def _norm_spec(s):
    if s is None or callable(s):
        return s
    return union(s)


def _skey(s):
    if s is None:
        return None
    if callable(s):
        return ("fn", id(s))
    return frozenset(s)


def diagonal_chain(xx, chain):
    """Vertex doubling ``(v0..vi) -> ((v0,v0)..(vi,vi))`` into ``xx = X x X``."""
    n = xx.factors[1].num_vertices
    return {tuple(v * n + v for v in s): c for s, c in chain.items()}


class AlgebraicDiagonal:
    def __init__(self, ctx, r, p, q, A=None, B=None, support=None):
        require_diagonal(p, q, r)
        self.ctx = ctx
        self.r, self.p, self.q = r, p, q
        self.source = ctx.complex(r, rel=union(A, B), support=support)
        self.left = ctx.complex(p, rel=A, support=support)
        self.right = ctx.complex(q, rel=B, support=support)
        self._images = {}

    def images(self, k):
        """Tensor coordinates of ``d(e_m)`` for each basis class of degree k."""
        got = self._images.get(k)
        if got is not None:
            return got
        solver, cxy = self.ctx.cross_solver(self.left, self.right, k)
        out = []
        for z in self.source.degree(k).reps:
            dz = diagonal_chain(cxy.x, z)
            check_allowable(cxy, dz)
            coords = solver.invert(cxy.project(dz))
            out.append({key: c for key, c in zip(solver.basis, coords) if c})
        self._images[k] = out
        return out

    def apply(self, k, coords):
        """``d`` of the class with coordinates ``coords`` in degree k."""
        f = self.ctx.field
        out = {}
        for cm, img in zip(coords, self.images(k)):
            if not cm:
                continue
            for key, c in img.items():
                v = out.get(key, 0) + cm * c
                if f.characteristic:
                    v %= f.characteristic
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out


def algebraic_diagonal(x, r, p, q, field, A=None, B=None, ctx=None):
    ctx = ctx or Context(x, field)
    return ctx.diagonal(r, p, q, A, B)


def _sign(e):
    return -1 if e % 2 else 1


def unit(field, n, k):
    out = [field(0)] * n
    out[k] = field(1)
    return out


# ---------------------------------------------------------------------------
# products


def cup(ctx, p, q, s, i, alpha, j, beta):
    """``alpha u beta`` for ``alpha`` in ``I_p H^i``, ``beta`` in ``I_q H^j``;
    the result is a cohomology vector on ``I^s H_{i+j}``."""
    require_diagonal(p, q, s, what="cup product")
    f = ctx.field
    d = ctx.diagonal(s, p, q)
    sgn = f(_sign(j * i))
    out = []
    for img in d.images(i + j):
        v = f(0)
        for (ii, a, jj, b), c in img.items():
            if ii == i and jj == j:
                v = v + c * alpha[a] * beta[b]
        out.append(_norm(f, sgn * v))
    return out


def cap(ctx, q, r, p, i, alpha, j, x, A=None, B=None, support=None):
    """``alpha n x`` for ``alpha`` in ``I_q H^i(S, B)`` and ``x`` in
    ``I^r H_j(S, A u B)``; lands in ``I^p H_{j-i}(S, A)`` (coordinates)."""
    if i > j:
        raise ValueError(f"cap of a degree {i} class with a degree {j} class")
    require_diagonal(p, q, r, what="cap product")
    f = ctx.field
    d = ctx.diagonal(r, p, q, A, B, support)
    k = j - i
    out = [f(0)] * d.left.degree(k).dim
    sgn = f(_sign(i * k))
    for (ii, a, jj, b), c in d.apply(j, x).items():
        if ii == k and jj == i:
            out[a] = _norm(f, out[a] + sgn * c * alpha[b])
    return out


def _norm(f, v):
    if f.characteristic:
        return f(v)
    return v


def swap(field, tensor):
    """``y (x) z -> (-1)^{|y||z|} z (x) y``."""
    out = {}
    for (i, a, j, b), c in tensor.items():
        out[(j, b, i, a)] = field(_sign(i * j)) * c
    return {k: _norm(field, v) for k, v in out.items() if v}


def cohomology_cross(ctx_m, pm, i, alpha, ctx_x, px, j, beta, cmx=None, cache=None):
    """``alpha x beta`` for ``alpha`` in ``H^i(M)`` (trivially filtered) and
    ``beta`` in ``I_p H^j(X)``, as a vector on ``I^Q H_{i+j}(M x X)``.

    ``cache`` (a dict) keeps the Kunneth solvers between calls."""
    m = ctx_m.x
    if any(z.singular for z in m.strata):
        raise PerversityError("the first factor of a cohomology cross product must be trivially filtered")
    cm = ctx_m.complex(pm)
    cx = ctx_x.complex(px)
    if cmx is None:
        cmx = product_complex(cm, cx)
    f = ctx_m.field
    key = (id(cm), id(cx), id(cmx), i + j)
    solver = cache.get(key) if cache is not None else None
    if solver is None:
        solver = CrossSolver(cm, cx, cmx, i + j)
        if cache is not None:
            cache[key] = solver
    out = []
    for w in cmx.degree(i + j).reps:
        coords = solver.invert(w)
        v = f(0)
        for (ii, a, jj, b), c in zip(solver.basis, coords):
            if ii == i and jj == j and c:
                v = v + c * alpha[a] * beta[b]
        out.append(_norm(f, f(_sign(j * i)) * v))
    return out


def homology_cross(cm, cx, cmx, i, u, j, v):
    """Class of ``u x v`` in ``cmx`` from coordinate vectors ``u``, ``v``."""
    f = cm.field
    zu = _combine(f, cm.degree(i).reps, u)
    zv = _combine(f, cx.degree(j).reps, v)
    z = cross_chain(cmx.x, zu, zv, f)
    return cmx.degree(i + j).class_of(z)


def _combine(f, reps, coords):
    out = {}
    p = f.characteristic
    for z, c in zip(reps, coords):
        if not c:
            continue
        for s, v in z.items():
            w = out.get(s, 0) + c * v
            if p:
                w %= p
            if w:
                out[s] = w
            else:
                out.pop(s, None)
    return out


def combine(field, reps, coords):
    """The chain ``sum coords[k] * reps[k]``."""
    return _combine(field, reps, coords)


# ---------------------------------------------------------------------------
# identities, checked on every basis class
#
# Each check returns ``{"name", "ok", "checked", "certificate"}``; the
# certificate of a failure names the perversities, the classes and both
# sides' coordinates.


def perversity_family(table):
    """``0``, ``t`` and the constants -1, 1, 2 on the singular strata, with
    duplicates (equal values) removed."""
    from .perversity import Perversity, zero

    out = [zero(table), top(table)]
    for c in (-1, 1, 2):
        out.append(Perversity(table, {z.id: c for z in table if z.singular}, name=str(c)))
    seen, uniq = set(), []
    for p in out:
        if p not in seen:
            seen.add(p)
            uniq.append(p)
    return uniq


def _adm(p, q, r):
    """``Dr >= Dp + Dq``."""
    from .perversity import diagonal_condition

    return diagonal_condition(p, q, r)


def _py(f, v):
    v = f.to_python(f(v))
    return v if isinstance(v, int) else str(v)


def _pyvec(f, vec):
    return [_py(f, v) for v in vec]


def _pytensor(f, t):
    return {",".join(map(str, k)): _py(f, v) for k, v in sorted(t.items())}


def _names(**ps):
    return {k: p.label() for k, p in ps.items()}


class _Check:
    def __init__(self, name, field):
        self.name = name
        self.field = field
        self.checked = 0
        self.cert = None

    def compare(self, lhs, rhs, **info):
        self.checked += 1
        f = self.field
        if isinstance(lhs, dict):
            same = _clean_tensor(f, lhs) == _clean_tensor(f, rhs)
            show = _pytensor
        else:
            same = [f(v) for v in lhs] == [f(v) for v in rhs]
            show = _pyvec
        if not same and self.cert is None:
            self.cert = dict(info, lhs=show(f, lhs), rhs=show(f, rhs))
        return same

    def result(self, **extra):
        out = {"name": self.name, "ok": self.cert is None, "checked": self.checked,
               "certificate": self.cert}
        out.update(extra)
        return out


def _clean_tensor(f, t):
    return {k: f(v) for k, v in t.items() if f(v)}


def _acc(f, out, key, v):
    w = out.get(key, 0) + v
    if f.characteristic:
        w %= f.characteristic
    if w:
        out[key] = w
    else:
        out.pop(key, None)


def _units(field, n):
    return [unit(field, n, k) for k in range(n)]


def _apply_cols(field, cols, vec, n):
    """Push coordinates ``vec`` through a map given by columns."""
    out = [field(0)] * n
    for c, col in zip(vec, cols):
        if c:
            for r, v in enumerate(col):
                out[r] = _norm(field, out[r] + c * v)
    return out


def _scale(field, c, vec):
    return [_norm(field, field(c) * v) for v in vec]


def check_coassociativity(ctx, perversities):
    """``(d (x) 1) d = (1 (x) d) d`` through ``s -> u(x)r -> p(x)q(x)r`` and
    ``s -> p(x)v -> p(x)q(x)r``."""
    import itertools

    f = ctx.field
    n = ctx.x.n
    chk = _Check("coassociativity", f)
    for s, u, r, p, q, v in itertools.product(perversities, repeat=6):
        if not (_adm(u, r, s) and _adm(p, v, s) and _adm(p, q, u) and _adm(q, r, v)):
            continue
        d_s_ur, d_u_pq = ctx.diagonal(s, u, r), ctx.diagonal(u, p, q)
        d_s_pv, d_v_qr = ctx.diagonal(s, p, v), ctx.diagonal(v, q, r)
        for k in range(n + 1):
            for m, (left, right) in enumerate(zip(d_s_ur.images(k), d_s_pv.images(k))):
                lhs, rhs = {}, {}
                for (i, a, j, b), c in left.items():
                    for (i1, a1, j1, b1), c1 in d_u_pq.images(i)[a].items():
                        _acc(f, lhs, (i1, a1, j1, b1, j, b), c * c1)
                for (i, a, j, b), c in right.items():
                    for (j1, b1, k1, c1_), c1 in d_v_qr.images(j)[b].items():
                        _acc(f, rhs, (i, a, j1, b1, k1, c1_), c * c1)
                chk.compare(lhs, rhs, perversities=_names(s=s, u=u, r=r, p=p, q=q, v=v),
                            degree=k, cls=m)
    return chk.result()


def check_cocommutativity(ctx, perversities):
    """``T d_{r -> q(x)p} = d_{r -> p(x)q}`` with the Koszul swap ``T``."""
    import itertools

    f = ctx.field
    chk = _Check("cocommutativity", f)
    for p, q, r in itertools.product(perversities, repeat=3):
        if not _adm(p, q, r):
            continue
        dqp, dpq = ctx.diagonal(r, q, p), ctx.diagonal(r, p, q)
        for k in range(ctx.x.n + 1):
            for m, (a, b) in enumerate(zip(dqp.images(k), dpq.images(k))):
                chk.compare(swap(f, a), b, perversities=_names(p=p, q=q, r=r), degree=k, cls=m)
    return chk.result()


def check_counit(ctx, perversities, rel=None):
    """``(e (x) 1) d_{p -> t(x)p} = id`` and ``(1 (x) e) d_{p -> p(x)t} = id``
    (relative to ``rel`` when given, the relative factor carrying ``p``)."""
    from .ichain import augmentation_class

    f = ctx.field
    t = top(ctx.x.strata)
    eps = augmentation_class(ctx.complex(t))
    chk = _Check("counit", f)
    for p in perversities:
        dl = ctx.diagonal(p, t, p, B=rel)
        dr = ctx.diagonal(p, p, t, A=rel)
        for k in range(ctx.x.n + 1):
            dim = dl.source.degree(k).dim
            for m in range(dim):
                lhs, rhs = [f(0)] * dim, [f(0)] * dim
                for (i, a, j, b), c in dl.images(k)[m].items():
                    if i == 0:
                        lhs[b] = _norm(f, lhs[b] + c * eps[a])
                for (i, a, j, b), c in dr.images(k)[m].items():
                    if j == 0:
                        rhs[a] = _norm(f, rhs[a] + c * eps[b])
                e = unit(f, dim, m)
                chk.compare(lhs, e, side="left", perversity=p.label(), degree=k, cls=m)
                chk.compare(rhs, e, side="right", perversity=p.label(), degree=k, cls=m)
    return chk.result()


def _conn(ctx, p, A, i):
    """``d: I^p H_i(X, A) -> I^p H_{i-1}(A)`` as columns."""
    from .ichain import connecting_map

    return connecting_map(ctx.complex(p, rel=A), ctx.complex(p, support=A), i)


def _incl(ctx, p, i, src=None, dst=None):
    """Columns of the map induced by the identity on chains between two
    complexes of ``ctx`` given as ``(rel, support)`` pairs."""
    src = src or (None, None)
    dst = dst or (None, None)
    return induced_map(ctx.complex(p, rel=src[0], support=src[1]),
                       ctx.complex(p, rel=dst[0], support=dst[1]), i)


def check_boundary_square(ctx, perversities, A):
    """``(d (x) 1) d_{(X,A)} = (1 (x) i) d_A d`` on ``I^r H_*(X, A)``."""
    import itertools

    f = ctx.field
    chk = _Check("relative boundary square", f)
    n = ctx.x.n
    for p, q, r in itertools.product(perversities, repeat=3):
        if not _adm(p, q, r):
            continue
        drel = ctx.diagonal(r, p, q, A=A)
        dA = ctx.diagonal(r, p, q, support=A)
        for k in range(1, n + 1):
            conn_r = _conn(ctx, r, A, k)
            for m, img in enumerate(drel.images(k)):
                lhs = {}
                for (i, a, j, b), c in img.items():
                    if i == 0:
                        continue
                    for a1, v in enumerate(_conn(ctx, p, A, i)[a]):
                        if v:
                            _acc(f, lhs, (i - 1, a1, j, b), c * v)
                rhs = {}
                for (i, a, j, b), c in dA.apply(k - 1, conn_r[m]).items():
                    for b1, v in enumerate(_incl(ctx, q, j, src=(None, A))[b]):
                        if v:
                            _acc(f, rhs, (i, a, j, b1), c * v)
                chk.compare(lhs, rhs, perversities=_names(p=p, q=q, r=r), degree=k, cls=m)
    return chk.result()


def _dims(ctx, p, **kw):
    c = ctx.complex(p, **kw)
    return [c.degree(i).dim for i in range(ctx.x.n + 1)]


def check_cup_associativity(ctx, perversities):
    """``(a u b) u c = a u (b u c)`` through ``u`` and ``v`` with
    ``Du >= Dp+Dq``, ``Dv >= Dq+Dr``, ``Ds >= Du+Dr``, ``Ds >= Dp+Dv``."""
    import itertools

    f = ctx.field
    n = ctx.x.n
    chk = _Check("cup associativity", f)
    for p, q, r, u, v, s in itertools.product(perversities, repeat=6):
        if not (_adm(p, q, u) and _adm(q, r, v) and _adm(u, r, s) and _adm(p, v, s)):
            continue
        dp, dq, dr = _dims(ctx, p), _dims(ctx, q), _dims(ctx, r)
        for i, j, k in itertools.product(range(n + 1), repeat=3):
            if i + j + k > n:
                continue
            for a, b, c in itertools.product(_units(f, dp[i]), _units(f, dq[j]), _units(f, dr[k])):
                lhs = cup(ctx, u, r, s, i + j, cup(ctx, p, q, u, i, a, j, b), k, c)
                rhs = cup(ctx, p, v, s, i, a, j + k, cup(ctx, q, r, v, j, b, k, c))
                chk.compare(lhs, rhs, perversities=_names(p=p, q=q, r=r, u=u, v=v, s=s),
                            degrees=[i, j, k], alpha=_pyvec(f, a), beta=_pyvec(f, b),
                            gamma=_pyvec(f, c))
    return chk.result()


def check_graded_commutativity(ctx, perversities):
    """``a u b = (-1)^{|a||b|} b u a``; also counts odd-odd products that
    are nonzero (these carry the sign)."""
    import itertools

    f = ctx.field
    n = ctx.x.n
    chk = _Check("graded commutativity", f)
    odd_nonzero = 0
    for p, q, s in itertools.product(perversities, repeat=3):
        if not _adm(p, q, s):
            continue
        dp, dq = _dims(ctx, p), _dims(ctx, q)
        for i, j in itertools.product(range(n + 1), repeat=2):
            if i + j > n:
                continue
            for a, b in itertools.product(_units(f, dp[i]), _units(f, dq[j])):
                lhs = cup(ctx, p, q, s, i, a, j, b)
                rhs = _scale(f, _sign(i * j), cup(ctx, q, p, s, j, b, i, a))
                if i % 2 and j % 2 and any(lhs):
                    odd_nonzero += 1
                chk.compare(lhs, rhs, perversities=_names(p=p, q=q, s=s), degrees=[i, j],
                            alpha=_pyvec(f, a), beta=_pyvec(f, b))
    return chk.result(odd_nonzero=odd_nonzero)


def check_cap_naturality(ctx, perversities, K):
    """``a n i_*x = i_*((i^*a) n x)`` for ``(K;0,0) -> (X;0,0)`` and
    ``(X;0,0) -> (X;K,0)``."""
    import itertools

    f = ctx.field
    n = ctx.x.n
    chk = _Check("cap naturality", f)
    for p, q, r in itertools.product(perversities, repeat=3):
        if not _adm(p, q, r):
            continue
        dq = _dims(ctx, q)
        dr_k = _dims(ctx, r, support=K)
        dr = _dims(ctx, r)
        for j in range(n + 1):
            for i in range(j + 1):
                # subcomplex inclusion
                push_r = _incl(ctx, r, j, src=(None, K))
                pull_q = _incl(ctx, q, i, src=(None, K))
                push_p = _incl(ctx, p, j - i, src=(None, K))
                dim_p = ctx.complex(p).degree(j - i).dim
                for xi, x in enumerate(_units(f, dr_k[j])):
                    ix = push_r[xi]
                    for a in _units(f, dq[i]):
                        lhs = cap(ctx, q, r, p, i, a, j, ix)
                        ia = pullback(f, pull_q, a)
                        y = cap(ctx, q, r, p, i, ia, j, x, support=K)
                        rhs = _apply_cols(f, push_p, y, dim_p)
                        chk.compare(lhs, rhs, map="subcomplex", perversities=_names(p=p, q=q, r=r),
                                    degrees=[i, j], alpha=_pyvec(f, a), x=_pyvec(f, x))
                # enlarging the relative part
                to_rel_r = _incl(ctx, r, j, dst=(K, None))
                to_rel_p = _incl(ctx, p, j - i, dst=(K, None))
                dim_pk = ctx.complex(p, rel=K).degree(j - i).dim
                for xi, x in enumerate(_units(f, dr[j])):
                    for a in _units(f, dq[i]):
                        lhs = cap(ctx, q, r, p, i, a, j, to_rel_r[xi], A=K)
                        rhs = _apply_cols(f, to_rel_p, cap(ctx, q, r, p, i, a, j, x), dim_pk)
                        chk.compare(lhs, rhs, map="relative", perversities=_names(p=p, q=q, r=r),
                                    degrees=[i, j], alpha=_pyvec(f, a), x=_pyvec(f, x))
    return chk.result()


def check_cup_cap(ctx, perversities):
    """``(a u b) n x = a n (b n x)``: the cup lands in ``v``, ``b n x`` in
    ``w``, both sides in ``u``."""
    import itertools

    f = ctx.field
    n = ctx.x.n
    chk = _Check("cup-cap", f)
    for p, q, r, u, v, w in itertools.product(perversities, repeat=6):
        if not (_adm(p, q, v) and _adm(u, v, r) and _adm(w, q, r) and _adm(u, p, w)):
            continue
        dp, dq, dr = _dims(ctx, p), _dims(ctx, q), _dims(ctx, r)
        for i, j, k in itertools.product(range(n + 1), repeat=3):
            if i + j > k:
                continue
            for a, b, x in itertools.product(_units(f, dp[i]), _units(f, dq[j]), _units(f, dr[k])):
                lhs = cap(ctx, v, r, u, i + j, cup(ctx, p, q, v, i, a, j, b), k, x)
                rhs = cap(ctx, p, w, u, i, a, k - j, cap(ctx, q, r, w, j, b, k, x))
                chk.compare(lhs, rhs, perversities=_names(p=p, q=q, r=r, u=u, v=v, w=w),
                            degrees=[i, j, k], alpha=_pyvec(f, a), beta=_pyvec(f, b), x=_pyvec(f, x))
    return chk.result()


def check_cap_evaluation(ctx, perversities, rel=None):
    """``e(a n x) = a(x)`` for ``a`` in ``I_p H^i(X, A)``, ``x`` in
    ``I^p H_i(X, A)``; the cap lands in ``I^t H_0(X)``."""
    from .ichain import augmentation_class

    f = ctx.field
    t = top(ctx.x.strata)
    eps = augmentation_class(ctx.complex(t))
    chk = _Check("cap evaluation", f)
    for p in perversities:
        d = _dims(ctx, p, rel=rel)
        for i in range(ctx.x.n + 1):
            for a in _units(f, d[i]):
                for x in _units(f, d[i]):
                    y = cap(ctx, p, p, t, i, a, i, x, B=rel)
                    chk.compare([evaluate(f, eps, y)], [evaluate(f, a, x)], perversity=p.label(),
                                degree=i, alpha=_pyvec(f, a), x=_pyvec(f, x))
    return chk.result()


def check_boundary_formulas(ctx, perversities, A):
    """``d(a n x) = (-1)^{|a|} (i^*a) n dx`` and
    ``delta(a) n x = -(-1)^{|a|} i_*(a n dx)`` on the pair ``(X, A)``."""
    import itertools

    from .ichain import coboundary_map

    f = ctx.field
    n = ctx.x.n
    chk = _Check("boundary formulas", f)
    for p, q, r in itertools.product(perversities, repeat=3):
        if not _adm(p, q, r):
            continue
        dq, dq_a = _dims(ctx, q), _dims(ctx, q, support=A)
        dr_rel = _dims(ctx, r, rel=A)
        for j in range(1, n + 1):
            conn_r = _conn(ctx, r, A, j)
            for k in range(j):
                conn_p = _conn(ctx, p, A, j - k)
                dim_pa = ctx.complex(p, support=A).degree(j - k - 1).dim
                pull_q = _incl(ctx, q, k, src=(None, A))
                for xi, x in enumerate(_units(f, dr_rel[j])):
                    for a in _units(f, dq[k]):
                        y = cap(ctx, q, r, p, k, a, j, x, A=A)
                        lhs = _apply_cols(f, conn_p, y, dim_pa)
                        ia = pullback(f, pull_q, a)
                        rhs = _scale(f, _sign(k), cap(ctx, q, r, p, k, ia, j - 1, conn_r[xi], support=A))
                        chk.compare(lhs, rhs, part=1, perversities=_names(p=p, q=q, r=r),
                                    degrees=[k, j], alpha=_pyvec(f, a), x=_pyvec(f, x))
                push_p = _incl(ctx, p, j - 1 - k, src=(None, A))
                dim_p = ctx.complex(p).degree(j - 1 - k).dim
                for xi, x in enumerate(_units(f, dr_rel[j])):
                    for a in _units(f, dq_a[k]):
                        da = coboundary_map(f, ctx.complex(q, rel=A), ctx.complex(q, support=A), k + 1, a)
                        lhs = cap(ctx, q, r, p, k + 1, da, j, x, B=A)
                        y = cap(ctx, q, r, p, k, a, j - 1, conn_r[xi], support=A)
                        rhs = _scale(f, -_sign(k), _apply_cols(f, push_p, y, dim_p))
                        chk.compare(lhs, rhs, part=2, perversities=_names(p=p, q=q, r=r),
                                    degrees=[k, j], alpha=_pyvec(f, a), x=_pyvec(f, x))
    return chk.result()


def check_cross_cap(ctx_m, ctx_x, perversities):
    """``(a x b) n (x x y) = (-1)^{|b||x|} (a n x) x (b n y)`` on ``M x X``
    with ``M`` trivially filtered."""
    import itertools

    from .perversity import kunneth_perversity, zero

    f = ctx_x.field
    m, x = ctx_m.x, ctx_x.x
    mx = cached_product(m, x)
    ctx_mx = Context(mx, f)
    pm = zero(m.strata)
    cm = ctx_m.complex(pm)
    dm = _dims(ctx_m, pm)
    chk = _Check("cross-cap", f)
    cache = {}

    def Q(p):
        return kunneth_perversity(pm, p, mx.strata)

    for p, q, r in itertools.product(perversities, repeat=3):
        if not _adm(p, q, r):
            continue
        dq, dr = _dims(ctx_x, q), _dims(ctx_x, r)
        qq, qr, qp = Q(q), Q(r), Q(p)
        cmx_q, cmx_r, cmx_p = ctx_mx.complex(qq), ctx_mx.complex(qr), ctx_mx.complex(qp)
        for a_deg, b_deg, c_deg, d_deg in itertools.product(range(m.n + 1), range(m.n + 1),
                                                            range(x.n + 1), range(x.n + 1)):
            if a_deg > b_deg or c_deg > d_deg:
                continue
            for al, xm, be, y in itertools.product(_units(f, dm[a_deg]), _units(f, dm[b_deg]),
                                                   _units(f, dq[c_deg]), _units(f, dr[d_deg])):
                ab = cohomology_cross(ctx_m, pm, a_deg, al, ctx_x, q, c_deg, be, cmx=cmx_q, cache=cache)
                xy = homology_cross(cm, ctx_x.complex(r), cmx_r, b_deg, xm, d_deg, y)
                lhs = cap(ctx_mx, qq, qr, qp, a_deg + c_deg, ab, b_deg + d_deg, xy)
                ax = cap(ctx_m, pm, pm, pm, a_deg, al, b_deg, xm)
                by = cap(ctx_x, q, r, p, c_deg, be, d_deg, y)
                rhs = homology_cross(cm, ctx_x.complex(p), cmx_p, b_deg - a_deg, ax, d_deg - c_deg, by)
                rhs = _scale(f, _sign(c_deg * b_deg), rhs)
                chk.compare(lhs, rhs, perversities=_names(p=p, q=q, r=r),
                            degrees=[a_deg, b_deg, c_deg, d_deg], alpha=_pyvec(f, al), x=_pyvec(f, xm),
                            beta=_pyvec(f, be), y=_pyvec(f, y))
    return chk.result(factor=m.name)
