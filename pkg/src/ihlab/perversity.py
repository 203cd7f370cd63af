"""General perversities on the strata of a filtered complex."""

from __future__ import annotations

import json


class PerversityError(ValueError):
    pass


class Perversity:
    """Integer values on strata, zero on regular strata.

    ``values`` maps every stratum id of ``table`` to an int.  Values are
    never clamped; negative values and values above the top perversity are
    allowed.
    """

    def __init__(self, table, values, name=None):
        self.table = table
        vals = {}
        for z in table:
            v = int(values.get(z.id, 0))
            if not z.singular and v != 0:
                raise PerversityError(f"nonzero value {v} on regular stratum {z.id!r}")
            vals[z.id] = v
        extra = set(values) - set(vals)
        if extra:
            raise PerversityError(f"unknown strata {sorted(map(repr, extra))}")
        self.values = vals
        self.name = name

    def __getitem__(self, sid):
        return self.values[sid]

    def of_simplex(self, s):
        return self.values[self.table.stratum_of(s)]

    def _same_table(self, other):
        if other.table is not self.table and other.table.strata.keys() != self.table.strata.keys():
            raise PerversityError("perversities live on different stratum tables")

    def __eq__(self, other):
        if not isinstance(other, Perversity):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(tuple(sorted(self.values.items(), key=repr)))

    def __le__(self, other):
        self._same_table(other)
        return all(v <= other.values[k] for k, v in self.values.items())

    def __add__(self, other):
        self._same_table(other)
        return Perversity(self.table, {k: v + other.values[k] for k, v in self.values.items()})

    def __sub__(self, other):
        self._same_table(other)
        return Perversity(self.table, {k: v - other.values[k] for k, v in self.values.items()})

    def __repr__(self):
        if self.name:
            return f"Perversity({self.name})"
        sing = {k: v for k, v in self.values.items() if self.table[k].singular}
        return f"Perversity({sing})"

    def label(self):
        if self.name:
            return self.name
        return ",".join(f"{k}:{v}" for k, v in self.values.items() if self.table[k].singular)


def zero(table):
    return Perversity(table, {}, name="0")


def top(table):
    return Perversity(table, {z.id: z.codim - 2 for z in table if z.singular}, name="t")


top_perversity = top


def dual(p):
    t = top(p.table)
    name = None
    if p.name == "0":
        name = "t"
    elif p.name == "t":
        name = "0"
    elif p.name:
        name = p.name[5:] if p.name.startswith("dual:") else f"dual:{p.name}"
    return Perversity(p.table, {k: t.values[k] - v for k, v in p.values.items()}, name=name)


def from_codim(table, values, name=None):
    """Perversity depending only on codimension; ``values`` is a dict or callable."""
    f = values if callable(values) else (lambda c: values.get(c, 0))
    return Perversity(table, {z.id: f(z.codim) for z in table if z.singular}, name=name)


def with_values(table, values, name=None):
    """Zero perversity overridden on the given strata."""
    return Perversity(table, values, name=name)


def transfer(p, table, simplex_map=None):
    """Pull ``p`` back to ``table`` along a simplicial inclusion.

    Each stratum of ``table`` takes the value of the stratum of ``p`` that
    contains the image of one of its simplices.  The default map is the
    identity on simplex tuples (subcomplexes, cone bases).
    """
    vals = {}
    reps = {}
    cx = table.complex
    for s in cx.filt:
        sid = table.stratum_of(s)
        if sid not in reps:
            reps[sid] = s
    for sid, s in reps.items():
        if not table[sid].singular:
            continue
        t = simplex_map(s) if simplex_map else s
        vals[sid] = p.of_simplex(t)
    return Perversity(table, vals, name=p.name)


def kunneth_perversity(p, q, table):
    """The product perversity ``Q_{p,q}`` on the strata ``Z x S`` of ``table``."""
    out = {}
    for z in table:
        if not isinstance(z.id, tuple) or len(z.id) != 2:
            raise PerversityError("table is not a product stratum table")
        a, b = z.id
        if a not in p.values or b not in q.values:
            raise PerversityError(f"stratum {z.id!r} does not match the factor tables")
        za, zb = p.table[a], q.table[b]
        if za.singular and zb.singular:
            out[z.id] = p.values[a] + q.values[b] + 2
        elif za.singular:
            out[z.id] = p.values[a]
        elif zb.singular:
            out[z.id] = q.values[b]
    return Perversity(table, out)


def diagonal_condition(p, q, r):
    """True iff ``Dr >= Dp + Dq`` on every stratum."""
    return not diagonal_failures(p, q, r)


def diagonal_failures(p, q, r):
    p._same_table(q)
    p._same_table(r)
    t = top(p.table)
    bad = []
    for k in p.values:
        dp = t.values[k] - p.values[k]
        dq = t.values[k] - q.values[k]
        dr = t.values[k] - r.values[k]
        if dr < dp + dq:
            bad.append((k, dr, dp, dq))
    return bad


def require_diagonal(p, q, r, what="diagonal"):
    bad = diagonal_failures(p, q, r)
    if bad:
        k, dr, dp, dq = bad[0]
        raise PerversityError(
            f"{what} needs D{_nm(r)} >= D{_nm(p)} + D{_nm(q)} on every stratum; "
            f"fails on stratum {k!r}: {dr} < {dp} + {dq}")


def _nm(p):
    return p.name or "p"


def is_gm_classical(p):
    by_codim = {}
    for z in p.table:
        if not z.singular:
            continue
        v = p.values[z.id]
        if by_codim.setdefault(z.codim, v) != v:
            return False
    if not by_codim:
        return True
    if 1 in by_codim:
        return False
    if by_codim.get(2, 0) != 0:
        return False
    # a classical perversity is a function on all codimensions >= 2;
    # check that some monotone step-by-one extension exists
    known = sorted(by_codim.items())
    prev_c, prev_v = 2, 0
    for c, v in known:
        if not prev_v <= v <= prev_v + (c - prev_c):
            return False
        prev_c, prev_v = c, v
    return True


def parse_perversity(spec, table):
    """``zero``/``0``, ``top``/``t``, ``dual:<spec>``, an integer (that
    constant on every singular stratum), or a JSON object
    ``{"codim": {...}}`` / ``{"strata": {...}}``."""
    if isinstance(spec, Perversity):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s in ("zero", "0"):
            return zero(table)
        if s in ("top", "t"):
            return top(table)
        if s.startswith("dual:"):
            return dual(parse_perversity(s[5:], table))
        if s.lstrip("-").isdigit():
            return Perversity(table, {z.id: int(s) for z in table if z.singular}, name=s)
        try:
            spec = json.loads(s)
        except json.JSONDecodeError:
            raise PerversityError(f"cannot parse perversity {spec!r}") from None
    if not isinstance(spec, dict):
        raise PerversityError(f"cannot parse perversity {spec!r}")
    if "codim" in spec:
        vals = {int(k): int(v) for k, v in spec["codim"].items()}
        label = ",".join(f"c{k}={v}" for k, v in sorted(vals.items()))
        return from_codim(table, vals, name=label)
    if "strata" in spec:
        ids = {str(z.id): z.id for z in table}
        vals = {}
        for k, v in spec["strata"].items():
            if str(k) not in ids:
                raise PerversityError(f"unknown stratum {k!r}")
            vals[ids[str(k)]] = int(v)
        return Perversity(table, vals)
    raise PerversityError(f"cannot parse perversity {spec!r}")
