"""Filtered simplicial complexes modelling stratified pseudomanifolds.

A complex stores every simplex as a sorted tuple of integer vertex ids
together with ``filt[s]``, the least ``i`` with ``s`` inside the skeleton
``X^i``.  Vertex labels are kept separately and only matter for I/O.

Simplices with ``filt == n`` are *live*; everything else lies in the
singular set ``X^{n-1}`` and carries no chains.

Compact cones stand in for open cones and full subcomplexes stand in for
open subsets (deleted stars, collars); the constructors here build the
collared models the rest of the package relies on.  The cone-like local
structure of a pseudomanifold is not checked by :func:`validate`, and for
``\\partial``-complexes only the boundary subcomplex and its attachment are
checked, not the existence of a collar.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from functools import cached_property


class ComplexError(ValueError):
    pass


class FilteredComplex:
    def __init__(self, n, filt, labels=None, boundary=None, factors=None, name=None):
        self.n = int(n)
        self.filt = dict(filt)
        nverts = 1 + max((s[-1] for s in self.filt), default=-1)
        if labels is None:
            labels = tuple(range(nverts))
        self.labels = tuple(labels)
        if len(self.labels) < nverts:
            raise ComplexError("fewer labels than vertices")
        self.boundary = frozenset(boundary) if boundary else frozenset()
        self.factors = factors
        self.name = name

    # -- basic structure ---------------------------------------------------

    @classmethod
    def from_simplices(cls, n, simplices, labels=None, boundary=None, name=None):
        """Build from ``{simplex: filt}`` (or an iterable of ``(simplex, filt)``).

        Missing faces are added with filt equal to the minimum over their
        cofaces; explicitly listed filts always win.  ``boundary`` lists
        simplices of the boundary; its faces are marked too.
        """
        given = {}
        items = simplices.items() if isinstance(simplices, dict) else simplices
        for s, f in items:
            given[tuple(sorted(s))] = int(f)
        filt = dict(given)
        for s, f in given.items():
            for k in range(1, len(s)):
                for t in itertools.combinations(s, k):
                    if t in given:
                        continue
                    old = filt.get(t)
                    if old is None or f < old:
                        filt[t] = f
        marked = set()
        for s in boundary or ():
            s = tuple(sorted(s))
            for k in range(1, len(s) + 1):
                marked.update(itertools.combinations(s, k))
        return cls(n, filt, labels=labels, boundary=marked, name=name)

    @cached_property
    def by_dim(self):
        out = defaultdict(list)
        for s in self.filt:
            out[len(s) - 1].append(s)
        return {d: sorted(v) for d, v in out.items()}

    def simplices(self, d):
        return self.by_dim.get(d, [])

    @property
    def dim(self):
        return max(self.by_dim, default=-1)

    @property
    def num_vertices(self):
        return len(self.labels)

    def __contains__(self, s):
        return tuple(s) in self.filt

    def __len__(self):
        return len(self.filt)

    def is_live(self, s):
        return self.filt[s] == self.n

    def live(self, d):
        n = self.n
        return [s for s in self.simplices(d) if self.filt[s] == n]

    @cached_property
    def top_simplices(self):
        return [s for s in self.simplices(self.n) if self.filt[s] == self.n]

    def cofaces(self, s):
        """Codimension-one cofaces of ``s``."""
        return self._cofaces.get(s, [])

    @cached_property
    def _cofaces(self):
        out = defaultdict(list)
        for d, ss in self.by_dim.items():
            if d == 0:
                continue
            for s in ss:
                for j in range(len(s)):
                    out[s[:j] + s[j + 1:]].append(s)
        return dict(out)

    @cached_property
    def vertex_index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def vertex(self, label):
        try:
            return self.vertex_index[label]
        except KeyError:
            raise ComplexError(f"vertex {label!r} not in complex") from None

    def __repr__(self):
        counts = [len(self.simplices(d)) for d in range(self.dim + 1)]
        nm = f" {self.name!r}" if self.name else ""
        return f"<FilteredComplex{nm} n={self.n} f={counts}>"

    # -- products -------------------------------------------------------------

    def project(self, s, k):
        """Projection of a product simplex to factor ``k`` (0 or 1)."""
        ny = self.factors[1].num_vertices
        if k == 0:
            return tuple(sorted({v // ny for v in s}))
        return tuple(sorted({v % ny for v in s}))

    # -- strata ---------------------------------------------------------------

    @cached_property
    def strata(self):
        return compute_strata(self)

    def boundary_complex(self):
        """The marked boundary as an ``(n-1)``-complex (filtration shifted down)."""
        if not self.boundary:
            return FilteredComplex(self.n - 1, {}, labels=self.labels, name="empty")
        filt = {s: self.filt[s] - 1 for s in self.boundary}
        return FilteredComplex(self.n - 1, filt, labels=self.labels,
                               name=f"bd({self.name})" if self.name else None)

    def subcomplex(self, vertices):
        """Full subcomplex on a vertex set, keeping ``n`` and the filtration."""
        vs = set(vertices)
        filt = {s: f for s, f in self.filt.items() if all(v in vs for v in s)}
        bd = [s for s in self.boundary if s in filt]
        return FilteredComplex(self.n, filt, labels=self.labels, boundary=bd)


# ---------------------------------------------------------------------------
# strata


class Stratum:
    __slots__ = ("id", "level", "codim", "singular")

    def __init__(self, sid, level, codim):
        self.id = sid
        self.level = level
        self.codim = codim
        self.singular = codim > 0

    def __repr__(self):
        kind = "singular" if self.singular else "regular"
        return f"Stratum({self.id!r}, codim={self.codim}, {kind})"


class StratumTable:
    """Strata of a complex: components of ``X^i - X^{i-1}``.

    ``stratum_of(s)`` gives the stratum containing the open simplex ``s``.
    """

    def __init__(self, complex_, strata, lookup):
        self.complex = complex_
        self.strata = strata  # id -> Stratum
        self._lookup = lookup

    def stratum_of(self, s):
        return self._lookup(s)

    def __getitem__(self, sid):
        return self.strata[sid]

    def __iter__(self):
        return iter(self.strata.values())

    def __len__(self):
        return len(self.strata)

    @property
    def ids(self):
        return list(self.strata)

    def singular(self):
        return [z for z in self if z.singular]

    def regular(self):
        return [z for z in self if not z.singular]

    def members(self, sid):
        return [s for s in self.complex.filt if self.stratum_of(s) == sid]

    def __repr__(self):
        return f"<StratumTable {len(self.regular())} regular, {len(self.singular())} singular>"


def compute_strata(x):
    if x.factors is not None:
        return _product_strata(x)
    return union_find_strata(x)


def union_find_strata(x):
    parent = {}

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for s in x.filt:
        parent[s] = s
    for s, f in x.filt.items():
        if len(s) == 1:
            continue
        for j in range(len(s)):
            t = s[:j] + s[j + 1:]
            if x.filt[t] == f:
                ra, rb = find(s), find(t)
                if ra != rb:
                    if rb < ra:
                        ra, rb = rb, ra
                    parent[rb] = ra
    # number components by their least simplex in (dim, tuple) order
    roots = {}
    for s in sorted(x.filt, key=lambda t: (len(t), t)):
        r = find(s)
        if r not in roots:
            roots[r] = len(roots)
    assign = {s: roots[find(s)] for s in x.filt}
    strata = {}
    for s, sid in assign.items():
        if sid not in strata:
            lvl = x.filt[s]
            strata[sid] = Stratum(sid, lvl, x.n - lvl)
    strata = dict(sorted(strata.items()))
    return StratumTable(x, strata, assign.__getitem__)


def _product_strata(x):
    X, Y = x.factors
    tx, ty = X.strata, Y.strata
    strata = {}
    for a in tx:
        for b in ty:
            sid = (a.id, b.id)
            strata[sid] = Stratum(sid, a.level + b.level, a.codim + b.codim)
    cache = {}
    ny = Y.num_vertices

    def lookup(s):
        r = cache.get(s)
        if r is None:
            sx = tuple(sorted({v // ny for v in s}))
            sy = tuple(sorted({v % ny for v in s}))
            r = cache[s] = (tx.stratum_of(sx), ty.stratum_of(sy))
        return r

    return StratumTable(x, strata, lookup)


def strata(x):
    return x.strata


# ---------------------------------------------------------------------------
# validation


def validate(x):
    """List of violated invariants; empty means the complex is accepted."""
    report = []
    filt = x.filt
    n = x.n
    for s, f in filt.items():
        if len(s) != len(set(s)) or list(s) != sorted(s):
            report.append(f"simplex {s} is not a sorted vertex tuple")
            continue
        if len(s) - 1 > f:
            report.append(f"simplex {s} of dim {len(s) - 1} has filt {f}")
        if not 0 <= f <= n:
            report.append(f"simplex {s} has filt {f} outside [0, {n}]")
        if len(s) > 1:
            for j in range(len(s)):
                t = s[:j] + s[j + 1:]
                if t not in filt:
                    report.append(f"face {t} of {s} missing")
                elif filt[t] > f:
                    report.append(f"face {t} has larger filt than {s}")
    if report:
        return report
    if not filt:
        return report
    for s in filt:
        if not x.cofaces(s) and (len(s) - 1 != n or filt[s] != n):
            report.append(f"maximal simplex {s} has dim {len(s) - 1} and filt {filt[s]}")
    tops = set(x.top_simplices)
    marked = x.boundary
    for t in x.simplices(n - 1):
        if filt[t] != n:
            continue
        k = sum(1 for c in x.cofaces(t) if c in tops)
        want = 1 if t in marked else 2
        if k != want:
            where = " (boundary)" if t in marked else ""
            report.append(f"(n-1)-face {t}{where} has {k} top cofaces, expected {want}")
    # density: every simplex lies in the closure of a live top simplex
    covered = set()
    for s in tops:
        for k in range(1, len(s) + 1):
            covered.update(itertools.combinations(s, k))
    for s in filt:
        if s not in covered:
            report.append(f"simplex {s} is not a face of any live top simplex")
    if marked:
        for s in marked:
            if s not in filt:
                report.append(f"boundary simplex {s} not in complex")
                continue
            for j in range(len(s)):
                t = s[:j] + s[j + 1:]
                if t and t not in marked:
                    report.append(f"boundary not closed: face {t} of {s}")
            if all(c in marked for c in _star(x, s)):
                report.append(f"boundary simplex {s} has no interior coface")
        sub = x.boundary_complex()
        for msg in validate(sub):
            report.append(f"boundary: {msg}")
    return report


def _star(x, s):
    out = []
    todo = list(x.cofaces(s))
    seen = set()
    while todo:
        c = todo.pop()
        if c in seen:
            continue
        seen.add(c)
        out.append(c)
        todo.extend(x.cofaces(c))
    return out


# ---------------------------------------------------------------------------
# constructors


def cone(w, apex_label=None):
    """Compact cone on ``w``; the base is marked as boundary.

    The apex gets the largest vertex id and filt 0; every other simplex has
    its filtration raised by one.
    """
    if not w.filt:
        return FilteredComplex(0, {(0,): 0}, labels=(apex_label or "c",), name="point")
    a = w.num_vertices
    lab = apex_label if apex_label is not None else _fresh_label(w.labels, "c")
    filt = {}
    for s, f in w.filt.items():
        filt[s] = f + 1
        filt[s + (a,)] = f + 1
    filt[(a,)] = 0
    name = f"cone({w.name})" if w.name else None
    return FilteredComplex(w.n + 1, filt, labels=w.labels + (lab,),
                           boundary=w.filt.keys(), name=name)


def suspension(w):
    """Two cones on ``w`` glued along ``w``."""
    a = w.num_vertices
    la = _fresh_label(w.labels, "n")
    lb = _fresh_label(w.labels + (la,), "s")
    filt = {}
    for s, f in w.filt.items():
        filt[s] = f + 1
        filt[s + (a,)] = f + 1
        filt[s + (a + 1,)] = f + 1
    filt[(a,)] = 0
    filt[(a + 1,)] = 0
    name = f"susp({w.name})" if w.name else None
    return FilteredComplex(w.n + 1, filt, labels=w.labels + (la, lb), name=name)


def _fresh_label(labels, base):
    taken = set(labels)
    lab = base
    k = 0
    while lab in taken:
        k += 1
        lab = f"{base}{k}"
    return lab


def product(x, y, max_dim=None):
    """Staircase triangulation of ``|x| x |y|``.

    Vertex ``(i, j)`` gets id ``i * |V(y)| + j`` (lexicographic order), and a
    chain of vertices monotone in both coordinates is a simplex whose
    filtration is the sum of the filtrations of its two projections.
    ``max_dim`` truncates the simplices generated (used for chain-level
    work that never needs the top of the product).
    """
    ny = y.num_vertices
    tops = set()
    maxd = x.dim + y.dim if max_dim is None else max_dim
    for s in _maximal(x):
        for t in _maximal(y):
            for path in staircase_paths(len(s) - 1, len(t) - 1):
                tops.add(tuple(s[i] * ny + t[j] for i, j in path))
    simp = set()
    for top in tops:
        for k in range(1, min(len(top), maxd + 1) + 1):
            simp.update(itertools.combinations(top, k))
    fx, fy = x.filt, y.filt
    filt = {}
    for s in simp:
        sx = tuple(sorted({v // ny for v in s}))
        sy = tuple(sorted({v % ny for v in s}))
        filt[s] = fx[sx] + fy[sy]
    labels = tuple((a, b) for a in x.labels for b in y.labels)
    boundary = None
    if x.boundary or y.boundary:
        boundary = [s for s in filt
                    if tuple(sorted({v // ny for v in s})) in x.boundary
                    or tuple(sorted({v % ny for v in s})) in y.boundary]
    name = f"{x.name}x{y.name}" if x.name and y.name else None
    return FilteredComplex(x.n + y.n, filt, labels=labels, boundary=boundary,
                           factors=(x, y), name=name)


def _maximal(x):
    return [s for s in x.filt if not x.cofaces(s)]


def staircase_paths(p, q):
    """Lattice paths from (0,0) to (p,q) as vertex-index sequences."""
    out = []
    for xs in itertools.combinations(range(p + q), p):
        xs = set(xs)
        i = j = 0
        path = [(0, 0)]
        for step in range(p + q):
            if step in xs:
                i += 1
            else:
                j += 1
            path.append((i, j))
        out.append(path)
    return out


def disjoint_union(x, y):
    if x.n != y.n:
        raise ComplexError("disjoint union needs equal formal dimension")
    off = x.num_vertices
    filt = dict(x.filt)
    for s, f in y.filt.items():
        filt[tuple(v + off for v in s)] = f
    bd = set(x.boundary) | {tuple(v + off for v in s) for s in y.boundary}
    labels = tuple(("a", l) for l in x.labels) + tuple(("b", l) for l in y.labels)
    name = f"{x.name}+{y.name}" if x.name and y.name else None
    return FilteredComplex(x.n, filt, labels=labels, boundary=bd, name=name)


def link(x, v):
    """Simplicial link of a vertex with filtration ``filt(v*t) - 1``."""
    if isinstance(v, int) and 0 <= v < x.num_vertices:
        vid = v
    else:
        vid = x.vertex(v)
    if (vid,) not in x.filt:
        raise ComplexError(f"vertex {v!r} not in complex")
    filt = {}
    for s, f in x.filt.items():
        if vid in s and len(s) > 1:
            t = tuple(u for u in s if u != vid)
            filt[t] = f - 1
    # compress vertex ids
    used = sorted({u for s in filt for u in s})
    rename = {u: i for i, u in enumerate(used)}
    filt = {tuple(rename[u] for u in s): f for s, f in filt.items()}
    labels = tuple(x.labels[u] for u in used)
    return FilteredComplex(x.n - 1, filt, labels=labels)


def deleted_star_pair(x, v):
    """``(x, K)`` with ``K`` the vertex set of the full subcomplex away from ``v``."""
    vid = v if isinstance(v, int) and 0 <= v < x.num_vertices else x.vertex(v)
    if (vid,) not in x.filt:
        raise ComplexError(f"vertex {v!r} not in complex")
    return x, frozenset(u for u in range(x.num_vertices) if u != vid and (u,) in x.filt)


def barycentric_subdivide(x):
    """Barycentric subdivision; barycentre ids are ordered by (dim, simplex)."""
    order = sorted(x.filt, key=lambda s: (len(s), s))
    bid = {s: i for i, s in enumerate(order)}
    filt = {}
    bd = set()
    # flags of faces, built from maximal flags of each top simplex
    for top in _maximal(x):
        for perm in itertools.permutations(top):
            flag = [tuple(sorted(perm[:k])) for k in range(1, len(perm) + 1)]
            ids = [bid[s] for s in flag]
            for k in range(1, len(ids) + 1):
                for sub in itertools.combinations(range(len(ids)), k):
                    s = tuple(ids[i] for i in sub)
                    if s not in filt:
                        filt[s] = x.filt[flag[sub[-1]]]
                        if all(flag[i] in x.boundary for i in sub):
                            bd.add(s)
    labels = tuple(tuple(x.labels[v] for v in s) for s in order)
    name = f"sd({x.name})" if x.name else None
    out = FilteredComplex(x.n, filt, labels=labels, boundary=bd, name=name)
    out.parent = x
    out.carriers = order
    return out


def carrier(sd, s):
    """The simplex of ``sd.parent`` whose interior contains ``s``."""
    return sd.carriers[max(s)]


def subdivide(x, times=1):
    for _ in range(times):
        x = barycentric_subdivide(x)
    return x


# ---------------------------------------------------------------------------
# JSON


def _label_json(lab):
    if isinstance(lab, (int, str)):
        return lab
    return str(lab).replace(" ", "").replace("'", "")


def to_json(x):
    simplices = []
    for s in sorted(x.filt, key=lambda t: (len(t), t)):
        entry = {"verts": [_label_json(x.labels[v]) for v in s], "filt": x.filt[s]}
        if s in x.boundary:
            entry["boundary"] = True
        simplices.append(entry)
    return {
        "n": x.n,
        "vertices": [_label_json(l) for l in x.labels],
        "simplices": simplices,
    }


def from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    labels = list(data["vertices"])
    index = {l: i for i, l in enumerate(labels)}
    simp = {}
    bd = []
    for e in data["simplices"]:
        try:
            s = tuple(sorted(index[v] for v in e["verts"]))
        except KeyError as err:
            raise ComplexError(f"unknown vertex {err.args[0]!r}") from None
        if "filt" in e:
            simp[s] = e["filt"]
        else:
            simp.setdefault(s, None)
        if e.get("boundary"):
            bd.append(s)
    explicit = {s: f for s, f in simp.items() if f is not None}
    x = FilteredComplex.from_simplices(data["n"], explicit, labels=labels, boundary=bd)
    missing = [s for s, f in simp.items() if f is None and s not in x.filt]
    if missing:
        raise ComplexError(f"simplices without filt and without cofaces: {missing}")
    return x


def dumps(x):
    return json.dumps(to_json(x), sort_keys=True, separators=(",", ":"))
