"""JSON encodings.  Rationals always travel as ``"p/q"`` strings (integers as ``"p"``)."""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Any

from lctpoly.chainlab import ChainRow, ParametricChain
from lctpoly.coeffsets import DecompWitness, Family, FnFamily, ParametricAtom, SetExpr
from lctpoly.errors import SchemaError
from lctpoly.exactgeom import HalfSpace, HPolytope
from lctpoly.exactgeom.linalg import fmt_q
from lctpoly.lctcore import DatumRow, ResolutionDatum, SegmentProblem
from lctpoly.linfun import AffineFn, PLFunction


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


# -- scalars ----------------------------------------------------------------


def q_out(x) -> str:
    if x is math.inf:
        return "inf"
    return fmt_q(Fraction(x))


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def q_in(x, what: str = "rational") -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise SchemaError(f"{what}: expected a \"p/q\" string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL.match(x.strip()):
            raise SchemaError(f"{what}: {x!r} is not of the form \"p\" or \"p/q\"")
        try:
            return Fraction(x.strip())
        except ZeroDivisionError as exc:
            raise SchemaError(f"{what}: zero denominator in {x!r}") from exc
    raise SchemaError(f"{what}: expected a \"p/q\" string, got {type(x).__name__}")


def vec_out(v) -> list[str]:
    return [q_out(x) for x in v]


def vec_in(v, what: str = "vector") -> tuple[Fraction, ...]:
    if isinstance(v, str):
        v = [p for p in v.split(",") if p.strip()]
    if not isinstance(v, list):
        raise SchemaError(f"{what}: expected a list")
    return tuple(q_in(x, what) for x in v)


def _req(obj: dict, key: str, kind=None):
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object")
    if key not in obj:
        raise SchemaError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"field {key!r} has the wrong type")
    return val


# -- polytopes ----------------------------------------------------------------


def halfspace_out(h: HalfSpace) -> list[str]:
    return vec_out(h.normal) + [q_out(h.bound)]


def polytope_out(p: HPolytope, with_vertices: bool = True) -> dict:
    out: dict[str, Any] = {"dim": p.dim, "empty": p.is_empty}
    if p.is_empty:
        out["ineqs"] = [halfspace_out(h) for h in p.halfspaces]
        return out
    c = p.canonical()
    out["ineqs"] = [halfspace_out(h) for h in c.halfspaces]
    if with_vertices:
        out["vertices"] = [vec_out(v) for v in c.vrep.vertices]
        out["rays"] = [vec_out(r) for r in c.vrep.rays]
        out["lines"] = [vec_out(r) for r in c.vrep.lines]
    return out


def polytope_in(obj: dict) -> HPolytope:
    dim = _req(obj, "dim", int)
    rows = _req(obj, "ineqs", list)
    parsed = []
    for r in rows:
        v = vec_in(r, "inequality row")
        if len(v) != dim + 1:
            raise SchemaError(f"inequality row has {len(v)} entries, expected {dim + 1}")
        parsed.append(v)
    if dim < 1:
        raise SchemaError("dim must be >= 1")
    return HPolytope.from_inequalities(dim, parsed)


# -- lctcore --------------------------------------------------------------------


def datum_out(d: ResolutionDatum) -> dict:
    return {"s": d.s, "rows": [{"a": vec_out(r.a), "b": q_out(r.b), "label": r.label, "kind": r.kind} for r in d.rows]}


def datum_in(obj: dict) -> ResolutionDatum:
    s = _req(obj, "s", int)
    rows = []
    for k, r in enumerate(_req(obj, "rows", list)):
        a = vec_in(_req(r, "a"), "row a")
        b = q_in(r.get("b", "0"), "row b")
        kind = r.get("kind", "exceptional")
        if kind == "strict-transform":
            kind = "strict"
        if kind not in ("exceptional", "strict"):
            raise SchemaError(f"row kind {kind!r} is not exceptional|strict")
        if len(a) != s:
            raise SchemaError(f"row {k} has {len(a)} entries, expected {s}")
        rows.append(DatumRow(a, b, str(r.get("label", f"E{k + 1}")), kind))
    return ResolutionDatum(s, tuple(rows))


def fn_out(f: AffineFn) -> dict:
    return {"slope": q_out(f.slope), "intercept": q_out(f.intercept)}


def fn_in(obj) -> AffineFn:
    if isinstance(obj, (str, int)):
        return AffineFn.const(q_in(obj))
    return AffineFn(q_in(_req(obj, "slope"), "slope"), q_in(_req(obj, "intercept"), "intercept"))


def pl_out(z: PLFunction) -> dict:
    return {"knots": vec_out(z.knots), "pieces": [fn_out(p) for p in z.pieces]}


def segment_in(obj: dict) -> SegmentProblem:
    datum = datum_in(_req(obj, "datum", dict))
    base = [fn_in(f) for f in _req(obj, "base_coeffs", list)]
    j = _req(obj, "test_column", int)  # 1-based, like every index on the command line
    if j < 1:
        raise SchemaError("test_column is 1-based")
    interval = vec_in(_req(obj, "interval", list), "interval")
    if len(interval) != 2:
        raise SchemaError("interval needs two endpoints")
    return SegmentProblem(datum, tuple(base), j - 1, *interval)


# -- coeffsets ------------------------------------------------------------------


def setexpr_out(e: SetExpr) -> dict:
    return {"finite": vec_out(e.finite),
            "families": [{"kind": f.kind, "a": q_out(f.a), "b": q_out(f.b)} for f in e.families]}


def setexpr_in(obj: dict) -> SetExpr:
    if not isinstance(obj, dict):
        raise SchemaError("set expression must be an object")
    finite = vec_in(obj.get("finite", []), "finite")
    fams = []
    for f in obj.get("families", []):
        kind = _req(f, "kind", str)
        if kind not in ("asc", "desc"):
            raise SchemaError(f"family kind {kind!r} is not asc|desc")
        fams.append(Family(kind, q_in(_req(f, "a")), q_in(_req(f, "b"))))
    return SetExpr(finite, tuple(fams))


def family_out(F: FnFamily) -> dict:
    return {"interval": [q_out(F.lo), q_out(F.hi)], "fns": [fn_out(f) for f in F.fns],
            "parametric": [{"alpha": fn_out(p.alpha), "beta": fn_out(p.beta)} for p in F.parametric]}


def family_in(obj: dict) -> FnFamily:
    interval = vec_in(_req(obj, "interval", list), "interval")
    if len(interval) != 2:
        raise SchemaError("interval needs two endpoints")
    lo, hi = interval
    fns = tuple(fn_in(f) for f in obj.get("fns", []))
    par = tuple(ParametricAtom(fn_in(_req(p, "alpha")), fn_in(_req(p, "beta"))) for p in obj.get("parametric", []))
    return FnFamily(lo, hi, fns, par)


def witness_out(w: DecompWitness) -> dict:
    return {"m": w.m, "terms": [{"n": n, "f": fn_out(f)} for n, f in w.terms], "interval": [q_out(w.lo), q_out(w.c)]}


# -- chains -----------------------------------------------------------------------


def chain_out(c: ParametricChain) -> dict:
    return {"s": c.s, "rows": [{"alpha": vec_out(r.alpha), "beta": vec_out(r.beta), "bound_alpha": q_out(r.bound_alpha),
                                "bound_beta": q_out(r.bound_beta), "label": r.label} for r in c.rows]}


def chain_in(obj: dict) -> ParametricChain:
    rows_in = _req(obj, "rows", list)
    if not rows_in:
        raise SchemaError("a chain needs at least one row")
    rows = []
    for k, r in enumerate(rows_in):
        alpha = vec_in(_req(r, "alpha"), "alpha")
        beta = vec_in(r.get("beta", ["0"] * len(alpha)), "beta")
        if len(beta) != len(alpha):
            raise SchemaError(f"row {k}: alpha and beta differ in length")
        rows.append(ChainRow(alpha, beta, q_in(_req(r, "bound_alpha")), q_in(r.get("bound_beta", "0")),
                             str(r.get("label", f"r{k + 1}"))))
    s = obj.get("s", len(rows[0].alpha))
    if any(len(r.alpha) != s for r in rows):
        raise SchemaError("row lengths disagree with s")
    return ParametricChain(s, tuple(rows))
