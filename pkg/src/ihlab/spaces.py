"""Library of small filtered complexes, addressed by name.

Names compose in prefix form: ``cone:<space>``, ``susp:<space>``,
``sd:<space>`` (barycentric subdivision), ``prod:<a>:<b>`` and
``disjoint:<a>:<b>``; for example ``prod:circle3:cone:circle3``.
"""

from __future__ import annotations

import re

from .complex import (ComplexError, FilteredComplex, barycentric_subdivide, cone,
                      disjoint_union, product, suspension)


def point():
    return FilteredComplex(0, {(0,): 0}, name="point")


def circle(k=3):
    if k < 3:
        raise ComplexError("a simplicial circle needs at least 3 vertices")
    simp = {tuple(sorted((i, (i + 1) % k))): 1 for i in range(k)}
    return FilteredComplex.from_simplices(1, simp, name=f"circle{k}")


def sphere(n):
    """Boundary of the (n+1)-simplex, trivially filtered."""
    import itertools

    simp = {s: n for s in itertools.combinations(range(n + 2), n + 1)}
    return FilteredComplex.from_simplices(n, simp, name=f"sphere{n}")


def torus():
    """The 7-vertex torus."""
    tris = set()
    for i in range(7):
        tris.add(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        tris.add(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return FilteredComplex.from_simplices(2, {t: 2 for t in tris}, name="torus")


def suspended_torus():
    x = suspension(torus())
    x.name = "ST"
    return x


def circle_two_points(k=4):
    """``S'``: a k-gon with two non-adjacent vertices (0 and k//2) in filt 0."""
    simp = {}
    for i in range(k):
        simp[tuple(sorted((i, (i + 1) % k)))] = 1
    for i in range(k):
        simp[(i,)] = 0 if i in (0, k // 2) else 1
    return FilteredComplex(1, simp, labels=tuple(range(k)), name="S'")


def _grid_surface(m, n, twist):
    """Square grid on an m x n torus or Klein bottle (``twist``), each square cut
    along a diagonal."""

    def vid(i, j):
        if twist and i // m % 2:
            j = -j
        return (i % m) * n + (j % n)

    tris = set()
    for i in range(m):
        for j in range(n):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            tris.add(tuple(sorted((a, b, d))))
            tris.add(tuple(sorted((a, c, d))))
    if len(tris) != 2 * m * n:
        raise ComplexError("grid too small to be simplicial")
    return {t: 2 for t in tris}


def klein_bottle():
    simp = _grid_surface(4, 4, twist=True)
    return FilteredComplex.from_simplices(2, simp, name="klein")


def two_spheres():
    """Two tetrahedron boundaries sharing vertex 0, which sits in filt 0."""
    import itertools

    simp = {}
    for verts in ((0, 1, 2, 3), (0, 4, 5, 6)):
        for t in itertools.combinations(verts, 3):
            simp[t] = 2
    x = FilteredComplex.from_simplices(2, simp, name="two-spheres")
    x.filt[(0,)] = 0
    return x


def interval():
    return FilteredComplex(1, {(0,): 1, (1,): 1, (0, 1): 1},
                           boundary=[(0,), (1,)], name="I")


def torus_interval():
    x = product(torus(), interval())
    x.name = "torusxI"
    return x


def collared_suspension(w):
    """``c(w) u w x [0,1] u c(w)``: the suspension with a product collar.

    Returns ``(x, north, south)`` with the two apex vertex ids.  Vertex ``v``
    of ``w`` at height ``k`` gets id ``2v + k``; the apexes come last.
    """
    cyl = product(w, interval())
    nv = cyl.num_vertices
    north, south = nv, nv + 1
    filt = dict(cyl.filt)
    for s, f in w.filt.items():
        for k, apex in ((0, north), (1, south)):
            face = tuple(2 * v + k for v in s)
            filt[face + (apex,)] = f + 1
    filt[(north,)] = 0
    filt[(south,)] = 0
    labels = cyl.labels + ("N", "S")
    return FilteredComplex(w.n + 1, filt, labels=labels), north, south


def collared_st():
    x, _, _ = collared_suspension(torus())
    x.name = "ST-collared"
    return x


BASE = {
    "point": point,
    "circle3": lambda: circle(3),
    "circle7-torus": torus,
    "torus": torus,
    "T2": torus,
    "suspended-torus": suspended_torus,
    "ST": suspended_torus,
    "circle-two-points": circle_two_points,
    "S'": circle_two_points,
    "klein": klein_bottle,
    "two-spheres": two_spheres,
    "interval": interval,
    "torus-interval": torus_interval,
    "st-collared": collared_st,
}

UNARY = {"cone": cone, "susp": suspension, "sd": barycentric_subdivide}
BINARY = {"prod": product, "disjoint": disjoint_union}


def library_names():
    return sorted(BASE) + ["circle<k>", "sphere<n>", "sphere(<n>)"]


def _base(name):
    if name in BASE:
        return BASE[name]()
    m = re.fullmatch(r"circle(\d+)", name)
    if m:
        return circle(int(m.group(1)))
    m = re.fullmatch(r"sphere\(?(\d+)\)?", name)
    if m:
        return sphere(int(m.group(1)))
    raise KeyError(f"unknown space {name!r}")


def _split(name):
    # keep parenthesised groups together
    out, depth, cur = [], 0, ""
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == ":" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def get_space(name):
    tokens = _split(name)
    x, rest = _parse(tokens)
    if rest:
        raise KeyError(f"trailing tokens in space name {name!r}")
    x.name = x.name or name
    return x


def _parse(tokens):
    if not tokens:
        raise KeyError("empty space name")
    head, rest = tokens[0], tokens[1:]
    if head in UNARY:
        a, rest = _parse(rest)
        return UNARY[head](a), rest
    if head in BINARY:
        a, rest = _parse(rest)
        b, rest = _parse(rest)
        return BINARY[head](a, b), rest
    return _base(head), rest
