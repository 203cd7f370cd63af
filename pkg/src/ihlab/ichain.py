"""Intersection chains, their homology, and the dual cohomology.

Chains are dicts ``{simplex: coefficient}`` with simplices as sorted vertex
tuples of the ambient complex, so inclusions of subcomplexes are the
identity on chains.  Simplices inside the singular set ``X^{n-1}`` carry the
zero group: they never appear in a chain and are dropped from boundaries.

An :class:`IChainComplex` may be restricted to a subcomplex ``support``
(allowability is still measured with the strata of the ambient complex) and
taken relative to a subcomplex ``rel``; the relative complex is the quotient
``I C(S) / I C(K)``, realised by projecting away the coordinates in ``K``.
"""

from __future__ import annotations

from .field import ColumnReducer, NotACycleError, Subspace, SparseMatrix, rank, vec_axpy
from .perversity import Perversity, PerversityError


class NotAllowableError(ValueError):
    pass


# ---------------------------------------------------------------------------
# subcomplex predicates


def as_predicate(spec):
    """``None``, a vertex set (full subcomplex), a set of vertex sets (union
    of full subcomplexes) or a predicate on simplices."""
    if spec is None:
        return None
    if callable(spec):
        return spec
    spec = frozenset(spec)
    if spec and all(isinstance(v, frozenset) for v in spec):
        parts = list(spec)
        return lambda s: any(all(v in vs for v in s) for vs in parts)
    vs = spec
    return lambda s: all(v in vs for v in s)


def union(*subs):
    """Union of subcomplex specs given as vertex sets (or unions of them)."""
    out = set()
    for sub in subs:
        if sub is None:
            continue
        sub = frozenset(sub)
        if sub and all(isinstance(v, frozenset) for v in sub):
            out |= sub
        else:
            out.add(sub)
    return frozenset(out) if out else None


def complement_of_vertex(x, v):
    return frozenset(u for u in range(x.num_vertices) if u != v and (u,) in x.filt)


# ---------------------------------------------------------------------------
# allowability


def profile(x, s):
    """``{singular stratum: largest dimension of a face of s in it}``."""
    cache = x.__dict__.setdefault("_profile", {})
    got = cache.get(s)
    if got is not None:
        return got
    # iterative post-order to avoid deep recursion
    stack = [s]
    table = x.strata
    filt = x.filt
    n = x.n
    while stack:
        t = stack[-1]
        if t in cache:
            stack.pop()
            continue
        faces = [t[:j] + t[j + 1:] for j in range(len(t))] if len(t) > 1 else []
        todo = [f for f in faces if f not in cache]
        if todo:
            stack.extend(todo)
            continue
        stack.pop()
        prof = {}
        for f in faces:
            for k, d in cache[f].items():
                if prof.get(k, -1) < d:
                    prof[k] = d
        if filt[t] < n:
            prof[table.stratum_of(t)] = len(t) - 1
        cache[t] = prof
    return cache[s]


def _check_perversity(x, p):
    if not isinstance(p, Perversity):
        raise PerversityError("expected a Perversity")
    if p.table is not x.strata and p.table.strata.keys() != x.strata.strata.keys():
        raise PerversityError("perversity does not match the complex's strata")


def allowable(x, s, p):
    """Allowability of ``s``: every face in a singular stratum ``Z`` has
    dimension at most ``dim s - codim Z + p(Z)``."""
    _check_perversity(x, p)
    s = tuple(s)
    if s not in x.filt:
        raise KeyError(f"{s} not in complex")
    return _allowable(x, s, p.values)


def _allowable(x, s, values):
    i = len(s) - 1
    strata = x.strata.strata
    for k, d in profile(x, s).items():
        if d > i - strata[k].codim + values[k]:
            return False
    return True


def offending_face(x, s, p):
    """``(stratum, face dim, bound)`` witnessing non-allowability, or None."""
    i = len(s) - 1
    for k, d in profile(x, s).items():
        z = x.strata[k]
        bound = i - z.codim + p.values[k]
        if d > bound:
            return k, d, bound
    return None


# ---------------------------------------------------------------------------
# chains


def boundary(x, chain, field):
    """Simplicial boundary with faces in ``X^{n-1}`` dropped."""
    out = {}
    n = x.n
    filt = x.filt
    p = field.characteristic
    for s, a in chain.items():
        if len(s) == 1:
            continue
        for j in range(len(s)):
            t = s[:j] + s[j + 1:]
            if filt[t] != n:
                continue
            v = out.get(t, 0) + (a if j % 2 == 0 else -a)
            if p:
                v %= p
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


def simplex_boundary(x, s):
    """Live faces of ``s`` with signs ``(-1)^j``."""
    if len(s) == 1:
        return []
    n = x.n
    filt = x.filt
    out = []
    for j in range(len(s)):
        t = s[:j] + s[j + 1:]
        if filt[t] == n:
            out.append((t, 1 if j % 2 == 0 else -1))
    return out


def chain_add(field, a, b, scale=1):
    out = dict(a)
    vec_axpy(field, out, field(scale), b)
    return out


def chain_scale(field, a, c):
    c = field(c)
    if not c:
        return {}
    p = field.characteristic
    return {s: (v * c % p if p else v * c) for s, v in a.items()}


def clean(field, chain):
    out = {}
    for s, v in chain.items():
        v = field(v)
        if v:
            out[tuple(s)] = v
    return out


# ---------------------------------------------------------------------------
# the chain complex


class IChainComplex:
    """``I^p C_*(S, K; F)`` for subcomplexes ``K`` of ``S`` of ``x``."""

    def __init__(self, x, p, field, rel=None, support=None):
        _check_perversity(x, p)
        self.x = x
        self.p = p
        self.field = field
        self.rel_spec = rel
        self.support_spec = support
        self.in_rel = as_predicate(rel)
        self.in_support = as_predicate(support)
        self._cells = {}
        self._homology = {}
        self._allow = {}

    def __repr__(self):
        extra = ""
        if self.support_spec is not None:
            extra += " support"
        if self.rel_spec is not None:
            extra += " rel"
        return f"<IChainComplex {self.x.name or ''} p={self.p.label()} {self.field}{extra}>"

    @property
    def dim(self):
        return self.x.dim

    def is_allowable(self, s):
        r = self._allow.get(s)
        if r is None:
            r = self._allow[s] = _allowable(self.x, s, self.p.values)
        return r

    def _sort(self, i):
        got = self._cells.get(i)
        if got is not None:
            return got
        x = self.x
        sup = self.in_support
        rel = self.in_rel
        good_free, good_rel, bad = [], [], []
        for s in x.simplices(i):
            if x.filt[s] != x.n or (sup is not None and not sup(s)):
                continue
            if not self.is_allowable(s):
                bad.append(s)
            elif rel is not None and rel(s):
                good_rel.append(s)
            else:
                good_free.append(s)
        got = self._cells[i] = (good_free, good_rel, bad)
        return got

    def cells(self, i):
        """Basis simplices of the (relative) chain group: allowable, live,
        in the support and not in ``K``."""
        return self._sort(i)[0]

    def allowable_simplices(self, i):
        """All allowable live simplices of the support, including ``K``."""
        free, inrel, _ = self._sort(i)
        return sorted(free + inrel)

    def nonallowable(self, i):
        return self._sort(i)[2]

    def boundary(self, chain):
        return boundary(self.x, chain, self.field)

    def project(self, chain):
        """Image in the relative chain group (drop coordinates in ``K``)."""
        rel = self.in_rel
        if rel is None:
            return dict(chain)
        return {s: v for s, v in chain.items() if not rel(s)}

    def check_chain(self, chain):
        """Raise unless ``chain`` is an allowable chain of the support with
        allowable boundary."""
        sup = self.in_support
        for s in chain:
            if self.x.filt.get(s) != self.x.n:
                raise NotAllowableError(f"{s} is not a live simplex")
            if sup is not None and not sup(s):
                raise NotAllowableError(f"{s} outside the support")
            if not self.is_allowable(s):
                raise NotAllowableError(_why(self, s))
        for s in self.boundary(chain):
            if not self.is_allowable(s):
                raise NotAllowableError(f"boundary: {_why(self, s)}")

    def is_relative_cycle(self, chain):
        return not self.project(self.boundary(chain))

    # -- the subspace A_i ------------------------------------------------------

    def A_basis(self, i):
        """Basis of ``A_i`` (allowable chains with allowable boundary) as
        chains on the support, before the quotient by ``K``."""
        cols = self.allowable_simplices(i)
        bad = {s: k for k, s in enumerate(self.nonallowable(i - 1))}
        red = ColumnReducer(self.field, len(bad), track=True)
        out = []
        for s in cols:
            col = {}
            for t, e in simplex_boundary(self.x, s):
                r = bad.get(t)
                if r is not None:
                    col[r] = self.field(e)
            if red.add(col) is None:
                out.append({cols[j]: v for j, v in red.last_relation.items()})
        return out

    def check_dd(self, i):
        """``d d = 0`` on a basis of ``A_i`` and ``d(A_i)`` allowable."""
        for z in self.A_basis(i):
            b = self.boundary(z)
            if any(not self.is_allowable(s) for s in b):
                return False
            if self.boundary(b):
                return False
        return True

    # -- homology --------------------------------------------------------------

    def _cycle_matrix(self, i):
        """``E_i``: columns = allowable i-simplices of the support; rows =
        non-allowable live (i-1)-simplices plus allowable ones outside K."""
        cols = self.allowable_simplices(i)
        rows = {}
        for s in self.cells(i - 1):
            rows[s] = len(rows)
        for s in self.nonallowable(i - 1):
            rows[s] = len(rows)
        f = self.field
        mcols = []
        for s in cols:
            col = {}
            for t, e in simplex_boundary(self.x, s):
                r = rows.get(t)
                if r is not None:
                    col[r] = f(e)
            mcols.append(col)
        return cols, rows, mcols

    def _bd_block(self, i):
        """Boundary block from allowable (i+1)-simplices of the support into
        rows ``[cells(i) ; nonallowable(i)]``; ``len(cells(i))`` is returned
        as the split point."""
        rows = {}
        for s in self.cells(i):
            rows[s] = len(rows)
        split = len(rows)
        for s in self.nonallowable(i):
            rows[s] = len(rows)
        f = self.field
        mcols = []
        for s in self.allowable_simplices(i + 1):
            col = {}
            for t, e in simplex_boundary(self.x, s):
                r = rows.get(t)
                if r is not None:
                    col[r] = f(e)
            mcols.append(col)
        return rows, split, mcols

    def betti(self, i):
        """``dim I^p H_i`` from ranks only (no bases)."""
        cols, rows, ecols = self._cycle_matrix(i)
        z = len(cols) - rank(SparseMatrix.from_columns(self.field, len(rows), ecols))
        if self.in_rel is not None:
            # allowable chains of K with allowable boundary vanish in the quotient
            kcols = [c for s, c in zip(cols, ecols) if self.in_rel(s)]
            z -= len(kcols) - rank(SparseMatrix.from_columns(self.field, len(rows), kcols))
        rows, split, mcols = self._bd_block(i)
        rm = rank(SparseMatrix.from_columns(self.field, len(rows), mcols))
        ncols = [{r - split: v for r, v in c.items() if r >= split} for c in mcols]
        rn = rank(SparseMatrix.from_columns(self.field, len(rows) - split, ncols))
        return z - (rm - rn)

    def betti_numbers(self, top=None):
        top = self.x.n if top is None else top
        return tuple(self.betti(i) for i in range(top + 1))

    def degree(self, i):
        """The :class:`DegreeHomology` of degree ``i`` (cached)."""
        h = self._homology.get(i)
        if h is None:
            h = self._homology[i] = DegreeHomology(self, i)
        return h


def _why(c, s):
    w = offending_face(c.x, s, c.p)
    if w is None:
        return f"{s} is allowable"
    k, d, b = w
    return f"{s} not allowable: face of dim {d} in stratum {k!r} exceeds {b}"


class BoundarySolver:
    """Solve ``pi(z) = sum c_k e_k + pi(dw)`` with ``w`` in ``A_{i+1}``.

    ``extras`` are chains (already allowable cycles of degree ``i``); the
    ones independent modulo boundaries and earlier extras are recorded in
    :attr:`independent`.
    """

    def __init__(self, c, i, extras):
        self.c = c
        self.i = i
        rows, split, mcols = c._bd_block(i)
        self.rows = rows
        self.split = split
        f = c.field
        red = ColumnReducer(f, len(rows), track=True)
        for col in mcols:
            red.add(col, tracked=False)
        self.offset = red.ncols
        self.independent = []
        self.extras = list(extras)
        for k, e in enumerate(self.extras):
            if red.add(self._vec(e)) is not None:
                self.independent.append(k)
        self.red = red

    def _vec(self, chain):
        rows = self.rows
        out = {}
        rel = self.c.in_rel
        for s, v in chain.items():
            if rel is not None and rel(s):
                continue
            r = rows.get(s)
            if r is None:
                raise NotAllowableError(f"{s} is not a basis simplex in degree {self.i}")
            out[r] = v
        return out

    def solve(self, chain):
        """Coefficients on the extras (a list), or None when ``chain`` is not
        in their span modulo boundaries."""
        comb = self.red.solve(self._vec(chain))
        if comb is None:
            return None
        f = self.c.field
        out = [f(0)] * len(self.extras)
        for j, a in comb.items():
            if j >= self.offset:
                out[j - self.offset] = a
        return out


class DegreeHomology:
    """Basis of ``I^p H_i`` with a class-coordinate solver."""

    def __init__(self, c, i):
        self.c = c
        self.i = i
        f = c.field
        cols, rows, ecols = c._cycle_matrix(i)
        red = ColumnReducer(f, len(rows), track=True)
        cycles = []
        for j, col in enumerate(ecols):
            if red.add(col) is None:
                cycles.append({cols[k]: v for k, v in red.last_relation.items()})
        self.cycle_dim = len(cycles)
        self.solver = BoundarySolver(c, i, cycles)
        self.reps = [cycles[k] for k in self.solver.independent]

    @property
    def dim(self):
        return len(self.reps)

    def class_of(self, z):
        """Coordinates of the class of ``z`` in the representative basis."""
        c = self.c
        z = clean(c.field, z)
        for s in z:
            if len(s) != self.i + 1:
                raise ValueError(f"{s} has the wrong degree")
        c.check_chain(z)
        if not c.is_relative_cycle(z):
            raise NotACycleError("chain is not a (relative) cycle")
        out = self.solver.solve(z)
        if out is None:
            raise NotACycleError("cycle is not in the span of the basis; internal error")
        # dependent cycles never carry a coefficient
        return [out[k] for k in self.solver.independent]

    def is_boundary(self, z):
        return not any(self.class_of(z))


def homology(c, degrees=None):
    """``{i: DegreeHomology}`` for the requested degrees (default all)."""
    if degrees is None:
        degrees = range(c.x.n + 1)
    return {i: c.degree(i) for i in degrees}


def class_of(c, z, i=None):
    if i is None:
        i = len(next(iter(z))) - 1 if z else 0
    return c.degree(i).class_of(z)


def betti_numbers(x, p, field, rel=None, support=None, top=None):
    return IChainComplex(x, p, field, rel=rel, support=support).betti_numbers(top)


# ---------------------------------------------------------------------------
# maps between homology groups


def induced_map(src, dst, i, chain_map=None):
    """Matrix (list of columns) of the map ``H_i(src) -> H_i(dst)`` induced by
    ``chain_map`` (default: identity on simplices, i.e. inclusions)."""
    hs, hd = src.degree(i), dst.degree(i)
    cols = []
    for z in hs.reps:
        w = chain_map(z) if chain_map else z
        cols.append(hd.class_of(w))
    return cols


def connecting_map(pair, sub, i):
    """``H_i(S, K) -> H_{i-1}(K)``, ``[z] -> [dz]`` (``sub`` is the complex of K)."""
    hs = pair.degree(i)
    hk = sub.degree(i - 1)
    return [hk.class_of(pair.boundary(z)) for z in hs.reps]


# ---------------------------------------------------------------------------
# cohomology


def cohomology_sign(i):
    """Sign in ``(d alpha)(x) = -(-1)^{|alpha|} alpha(dx)``."""
    return -1 if i % 2 == 0 else 1


def evaluate(field, alpha, x):
    """``alpha(x)`` for coordinate vectors in dual bases."""
    out = field(0)
    for a, b in zip(alpha, x):
        out = out + a * b
    if field.characteristic:
        out %= field.characteristic
    return out


def pullback(field, cols, alpha):
    """``f^* alpha`` given the matrix ``cols`` of ``f_*`` (alpha o f_*)."""
    return [evaluate(field, alpha, col) for col in cols]


def coboundary_map(field, pair, sub, i, alpha):
    """``delta: H^{i-1}(K) -> H^i(S, K)``, ``(delta alpha)(x) =
    -(-1)^{|alpha|} alpha(d_* x)``."""
    cols = connecting_map(pair, sub, i)
    sign = cohomology_sign(i - 1)
    return [field(sign) * v for v in pullback(field, cols, alpha)]


class CochainComplex:
    """``Hom(I^p C_*, F)`` on the bases of ``A_i``."""

    def __init__(self, c):
        self.c = c
        self._A = {}

    def A(self, i):
        got = self._A.get(i)
        if got is None:
            got = self._A[i] = [self.c.project(z) for z in self.c.A_basis(i)]
            got = [z for z in got]
        return got

    def _space(self, i):
        basis = self.A(i)
        index = {}
        for z in basis:
            for s in z:
                index.setdefault(s, len(index))
        return basis, index

    def boundary_matrix(self, i):
        """``d: A_i -> A_{i-1}`` in the A-bases (projected to the quotient)."""
        c = self.c
        f = c.field
        src = self.A(i)
        dst, index = self._space(i - 1)
        sub = Subspace(f, len(index), [{index[s]: v for s, v in z.items()} for z in dst])
        # coordinates relative to the chosen basis of A_{i-1}
        red = ColumnReducer(f, len(index), track=True)
        for z in dst:
            red.add({index[s]: v for s, v in z.items()})
        cols = []
        for z in src:
            b = c.project(c.boundary(z))
            vec = {}
            for s, v in b.items():
                if s not in index:
                    raise NotAllowableError(f"boundary leaves A_{i - 1}: {s}")
                vec[index[s]] = v
            comb = red.solve(vec)
            if comb is None or not sub.contains(vec):
                raise NotAllowableError(f"boundary leaves A_{i - 1}")
            cols.append(comb)
        return SparseMatrix.from_columns(f, len(dst), cols)

    def coboundary_matrix(self, i):
        """``delta: C^i -> C^{i+1}`` with ``delta a = -(-1)^i a o d``."""
        d = self.boundary_matrix(i + 1).transpose()
        f = self.c.field
        s = f(cohomology_sign(i))
        return SparseMatrix.from_columns(f, d.nrows, [{r: s * v for r, v in col.items()} for col in d.cols])

    def cohomology_dim(self, i):
        """``dim ker delta_i - rank delta_{i-1}``."""
        di = self.coboundary_matrix(i)
        z = di.ncols - rank(di)
        if i == 0:
            return z
        return z - rank(self.coboundary_matrix(i - 1))


def cochain_complex(c):
    return CochainComplex(c)


def augmentation(field, z):
    """Sum of the coefficients of a 0-chain."""
    total = field(0)
    for s, v in z.items():
        if len(s) != 1:
            raise ValueError("augmentation is defined on 0-chains")
        total = total + field(v)
    if field.characteristic:
        total %= field.characteristic
    return total


def augmentation_class(c):
    """``epsilon`` as a cohomology vector on ``H_0`` (values on the reps)."""
    return [augmentation(c.field, z) for z in c.degree(0).reps]
