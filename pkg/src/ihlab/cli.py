"""The ``ihlab`` command."""

from __future__ import annotations

import json
import os
import sys

import click

from . import suites
from .complex import dumps, from_json, subdivide
from .duality import lefschetz_matrices, verify_duality
from .field import parse_field
from .fundamental import (NonOrientableError, boundary_of_fundamental, fundamental_class,
                          local_class_check, orient, regular_stratum_decomposition)
from .ichain import IChainComplex
from .kunneth import kunneth_report
from .perversity import dual, parse_perversity
from .spaces import get_space


def load_space(name):
    """A library name or a path to a JSON complex."""
    if os.path.exists(name) and name.endswith(".json"):
        with open(name) as fh:
            x = from_json(json.load(fh))
        x.name = os.path.basename(name)[:-5]
        return x
    try:
        return get_space(name)
    except KeyError as e:
        raise click.BadParameter(str(e.args[0]), param_hint="SPACE") from None


def _field(spec):
    try:
        return parse_field(spec)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--field") from None


def _perv(spec, x):
    try:
        return parse_perversity(spec, x.strata)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--perversity") from None


def _degrees(spec, n):
    if not spec:
        return range(n + 1)
    a, _, b = spec.partition("..")
    lo = int(a)
    hi = int(b) if b else lo
    return range(lo, hi + 1)


def _relative(spec, x, sd):
    """``boundary`` or comma-separated vertex labels of the unsubdivided space."""
    if spec is None:
        return None
    if spec == "boundary":
        bd = sd.boundary
        return lambda s: s in bd
    labels = {str(l): i for i, l in enumerate(x.labels)}
    try:
        verts = frozenset(labels[v.strip()] for v in spec.split(",") if v.strip())
    except KeyError as e:
        raise click.BadParameter(f"unknown vertex {e.args[0]!r}", param_hint="--relative") from None
    if sd is x:
        return verts
    return lambda s: all(v in verts for v in suites.root_simplex(sd, s))


def _emit(obj, as_json, lines):
    if as_json:
        click.echo(json.dumps(obj, sort_keys=True, indent=1))
    else:
        for line in lines:
            click.echo(line)


def _finish(ok):
    sys.exit(0 if ok else 1)


field_opt = click.option("--field", "field_spec", default="Q", show_default=True, help="Q or a prime (GF5, 5).")
json_opt = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")


@click.group()
def main():
    """Intersection homology with general perversities."""


@main.command()
@click.argument("name")
def space(name):
    """Print a library space as canonical JSON."""
    click.echo(dumps(load_space(name)))


@main.command()
@click.argument("space_name", metavar="SPACE")
@click.option("--perversity", "-p", "pspec", default="0", show_default=True)
@field_opt
@click.option("--degrees", default=None, help="Range a..b (default 0..n).")
@click.option("--relative", default=None, help="'boundary' or comma-separated vertex labels.")
@click.option("--subdivide", "times", default=1, show_default=True, type=int,
              help="Barycentric subdivisions before computing.")
@click.option("--reps", is_flag=True, help="Include cycle representatives.")
@json_opt
def compute(space_name, pspec, field_spec, degrees, relative, times, reps, as_json):
    """Betti numbers of I^p H_*(X) or I^p H_*(X, K)."""
    x = load_space(space_name)
    f = _field(field_spec)
    p = _perv(pspec, x)
    y = subdivide(x, times) if times > 0 else x
    c = IChainComplex(y, suites.lift(p, y), f, rel=_relative(relative, x, y))
    rows = []
    for i in _degrees(degrees, x.n):
        h = c.degree(i) if reps else None
        row = {"degree": i, "dim": h.dim if h else c.betti(i)}
        if reps:
            row["reps"] = [[[[suites.label_json(y.labels[v]) for v in s], suites.py(f, a)]
                            for s, a in sorted(z.items())] for z in h.reps]
        rows.append(row)
    out = {"space": x.name, "perversity": p.label(), "field": str(f), "subdivisions": times,
           "relative": relative, "homology": rows}
    lines = [f"{x.name}  p={p.label()}  {f}  subdivisions={times}" + (f"  rel {relative}" if relative else ""),
             "  i  dim"] + [f"{r['degree']:>3}  {r['dim']}" for r in rows]
    if reps:
        lines.append(json.dumps({r["degree"]: r["reps"] for r in rows}))
    _emit(out, as_json, lines)


@main.command()
@click.argument("space_name", metavar="SPACE")
@field_opt
@json_opt
def fundamental(space_name, field_spec, as_json):
    """Orientation, fundamental class and local checks."""
    x = load_space(space_name)
    f = _field(field_spec)
    try:
        o = orient(x, f)
    except NonOrientableError as e:
        out = {"space": x.name, "field": str(f), "orientable": False,
               "certificate": [list(s) for s in e.certificate]}
        _emit(out, as_json, [f"{x.name}: not orientable over {f}", f"  cycle of top simplices: {e.certificate}"])
        _finish(False)
    g = fundamental_class(x, o, f)
    out = {"space": x.name, "field": str(f), "orientable": True, "support": len(g.chain),
           "gamma": [suites.py(f, a) for a in g.coords]}
    if x.boundary:
        out["boundary"] = boundary_of_fundamental(x, g)
        ok = out["boundary"]["ok"]
    else:
        out["decomposition"] = regular_stratum_decomposition(x, f)
        ok = out["decomposition"]["ok"]
        locs = []
        for z in x.strata.singular():
            v = next(s for s in x.strata.members(z.id) if len(s) == 1)[0] if z.level == 0 else None
            if v is not None:
                locs.append(local_class_check(x, g, v))
        out["local"] = locs
        ok = ok and all(r["ok"] for r in locs)
    out["ok"] = ok
    lines = [f"{x.name} over {f}: orientable, Gamma on {len(g.chain)} simplices, coords {out['gamma']}"]
    if "decomposition" in out:
        d = out["decomposition"]
        lines.append(f"  regular strata decomposition: {len(d['summands'])} summands, dim {d['total_dim']}, ok={d['ok']}")
        for r in out["local"]:
            lines.append(f"  local class at vertex {r['vertex']}: dim {r['local_dim']}, sheets {r['sheets']}, ok={r['ok']}")
    else:
        lines.append(f"  boundary of Gamma = Gamma of the boundary: {out['boundary']['ok']}")
    _emit(out, as_json, lines)
    _finish(ok)


# ---------------------------------------------------------------------------
# verify


def _report(res, as_json):
    """Print one or more suite results and exit with their status."""
    parts = res if isinstance(res, list) else [res]
    ok = all(r["ok"] for r in parts)
    lines = []
    for r in parts:
        lines.append(f"{r['suite']}: {'pass' if r['ok'] else 'FAIL'} ({len(r['checks'])} checks)")
        for c in r["checks"]:
            if not c["ok"] or not as_json:
                lines.append("  " + ("ok   " if c["ok"] else "FAIL ") + suites.describe(c))
    _emit({"ok": ok, "results": parts}, as_json, lines)
    _finish(ok)


@main.group()
def verify():
    """Run theorem checks; nonzero exit on any failure."""


@verify.command("cone")
@click.argument("bases", nargs=-1)
@field_opt
@click.option("--subdivide", "times", default=0, show_default=True, type=int)
@json_opt
def verify_cone(bases, field_spec, times, as_json):
    """Cone formula on cone(L) for each base L, plus the suspended-torus tables."""
    f = _field(field_spec)
    if bases:
        names = [b[5:] if b.startswith("cone:") else b for b in bases]
        rows = [r for b in names for r in suites.cone_formula_rows(b, f, times)]
        _report(suites._result("cone", rows), as_json)
    _report([suites.cone_suite(f, times), suites.st_tables(f, times)], as_json)


@verify.command("kunneth")
@click.argument("args", nargs=-1)
@field_opt
@json_opt
def verify_kunneth(args, field_spec, as_json):
    """``X pX Y pY``: per-degree table; no arguments: the full suite."""
    f = _field(field_spec)
    if not args:
        _report([suites.kunneth_suite(f), suites.relative_kunneth_suite(f)], as_json)
    if len(args) != 4:
        raise click.UsageError("expected X pX Y pY")
    x, y = load_space(args[0]), load_space(args[2])
    cx = IChainComplex(x, _perv(args[1], x), f)
    cy = IChainComplex(y, _perv(args[3], y), f)
    rows = kunneth_report(cx, cy)
    ok = all(r["iso"] for r in rows)
    lines = [f"{x.name} x {y.name}  {f}", "  k  lhs  rhs  rank  iso"]
    lines += [f"{r['degree']:>3}  {r['lhs']:>3}  {r['rhs']:>3}  {r['rank']:>4}  {r['iso']}" for r in rows]
    _emit({"ok": ok, "degrees": rows}, as_json, lines)
    _finish(ok)


@verify.command("axioms")
@click.argument("spaces", nargs=-1)
@field_opt
@click.option("--sample", default=0, type=int, help="Random subset of perversities (disabled by IHLAB_SEEDLESS).")
@json_opt
def verify_axioms(spaces, field_spec, sample, as_json):
    """The product identities on each space (default: torus, ST, S')."""
    f = _field(field_spec)
    if sample and suites.seedless():
        raise click.UsageError("--sample is disabled when IHLAB_SEEDLESS is set")
    if not spaces:
        _report(suites.axioms_suite(f, sample=sample), as_json)
    checks = [c for s in spaces for c in suites.axioms_for(s, f, sample=sample)]
    _report(suites._result("axioms", checks), as_json)


@verify.command("duality")
@click.argument("spaces", nargs=-1)
@click.option("--perversity", "-p", "pspec", default=None)
@field_opt
@click.option("--lefschetz", is_flag=True, help="Both Lefschetz maps for spaces with boundary.")
@json_opt
def verify_duality_cmd(spaces, pspec, field_spec, lefschetz, as_json):
    """Duality maps as matrices with ranks (default: the full suite)."""
    f = _field(field_spec)
    if not spaces:
        _report([suites.duality_suite((f,)), suites.mayer_vietoris_suite(f)], as_json)
    reports = []
    for name in spaces:
        x = load_space(name)
        p = _perv(pspec or "0", x)
        if lefschetz:
            reports.extend(lefschetz_matrices(x, p, f))
        else:
            reports.append(verify_duality(x, p, f))
    ok = all(r.ok for r in reports)
    lines = []
    for r in reports:
        lines.append(f"{r.space} {r.kind}  p={r.p.label()} q={r.q.label()}  {r.field}: {'iso' if r.ok else 'FAIL'}")
        lines.append("  i  dim H^i  dim H_(n-i)  rank")
        lines += [f"{i:>3}  {c:>7}  {h:>11}  {k:>4}" for i, c, h, k, _ in r.table()]
    _emit({"ok": ok, "reports": [r.to_dict() for r in reports]}, as_json, lines)
    _finish(ok)


@verify.command("lefschetz")
@click.argument("spaces", nargs=-1)
@field_opt
@json_opt
def verify_lefschetz(spaces, field_spec, as_json):
    """Lefschetz maps, the ladder of (X, dX) and the boundary of Gamma."""
    f = _field(field_spec)
    _report(suites.lefschetz_suite(f, spaces or ("cone:torus", "torus-interval")), as_json)


@verify.command("homotopy")
@click.argument("spaces", nargs=-1)
@field_opt
@json_opt
def verify_homotopy(spaces, field_spec, as_json):
    """Inclusion X -> X x I at one end induces isomorphisms."""
    f = _field(field_spec)
    _report(suites.homotopy_suite(f, spaces or ("ST", "S'")), as_json)


@verify.command("fundamental")
@field_opt
@json_opt
def verify_fundamental(field_spec, as_json):
    """Fundamental classes on every compact library space."""
    _report(suites.fundamental_suite(_field(field_spec)), as_json)


@verify.command("all")
@click.option("--field", "fields", multiple=True, default=("Q", "GF5"), show_default=True)
@click.option("--suite", "names", multiple=True, type=click.Choice(suites.SUITES),
              help="Restrict to these suites (repeatable).")
@click.option("--jobs", default=1, show_default=True, type=int)
@click.option("--timings", is_flag=True, help="Add per-suite seconds (the report is then not reproducible).")
@json_opt
def verify_all(fields, names, jobs, timings, as_json):
    """Every suite over every field."""
    for fs in fields:
        _field(fs)
    cfg = suites.SuiteConfig(names or suites.SUITES, fields, jobs=jobs, timings=timings)
    status, report = suites.run_suite(cfg)
    if as_json:
        click.echo(json.dumps(report, sort_keys=True, indent=1))
    else:
        for name, by_field in sorted(report["suites"].items()):
            for fname, parts in sorted(by_field.items()):
                for r in parts:
                    click.echo(f"{name:<12} {fname:<6} {r['suite']:<17} {'pass' if r['ok'] else 'FAIL'}"
                               f"  {sum(c['ok'] for c in r['checks'])}/{len(r['checks'])}")
                    for c in r["checks"]:
                        if not c["ok"]:
                            click.echo("    FAIL " + suites.describe(c))
        if timings:
            for k, v in sorted(report["seconds"].items()):
                click.echo(f"  {k}: {v} s")
        click.echo("all checks pass" if status == 0 else "some checks FAILED")
    sys.exit(status)


if __name__ == "__main__":
    main()
