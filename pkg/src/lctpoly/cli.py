"""Command-line front end: JSON in, JSON or SVG out.

Exit codes: 0 success, 2 malformed input, 3 a precondition of the requested
operation does not hold.  Output bytes depend only on (input, seed, caps).
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from lctpoly import chainlab, coeffsets, lctcore, randinst, toricgen
from lctpoly import serialize as ser
from lctpoly.errors import PreconditionError, SchemaError
from lctpoly.exactgeom import HPolytope, project, vertex_enumerate
from lctpoly.plot import plot2d


def threads() -> int:
    try:
        return max(1, int(os.environ.get("LCTPOLY_THREADS", "1")))
    except ValueError:
        return 1


def _parallel_map(fn: Callable, items: list) -> list:
    n = threads()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _read_json(path: str | None) -> Any:
    if path is None:
        raise SchemaError("this command needs --input")
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return ser.loads(text)


def _q_arg(text: str) -> Fraction:
    return ser.q_in(text, "argument")


def _vec_arg(text: str) -> tuple[Fraction, ...]:
    return ser.vec_in(text, "vector argument")


def _need_seed(args) -> int:
    if args.seed is None:
        raise SchemaError("this command is randomized and needs an explicit --seed")
    return args.seed


def _polytope_or_datum(obj) -> HPolytope:
    if isinstance(obj, dict) and "rows" in obj and "s" in obj:
        return lctcore.build_lct_polytope(ser.datum_in(obj))
    return ser.polytope_in(obj)


# -- polytope -------------------------------------------------------------------


def cmd_polytope_build(args) -> dict:
    datum = ser.datum_in(_read_json(args.input))
    return {"datum": ser.datum_out(datum), "polytope": ser.polytope_out(lctcore.build_lct_polytope(datum))}


def cmd_polytope_facets(args) -> dict:
    p = _polytope_or_datum(_read_json(args.input))
    labels = lctcore.classify_facets(p)
    return {"facets": [{"ineq": ser.halfspace_out(f.facet), "lct": f.is_lct,
                        "coordinate": None if f.coordinate is None else f.coordinate + 1} for f in labels]}


def cmd_polytope_project(args) -> dict:
    p = _polytope_or_datum(_read_json(args.input))
    return {"drop_axis": args.drop, "polytope": ser.polytope_out(project(p, args.drop - 1))}


def cmd_polytope_vertices(args) -> dict:
    p = _polytope_or_datum(_read_json(args.input))
    verts, rays = vertex_enumerate(p)
    return {"vertices": [ser.vec_out(v) for v in verts], "rays": [ser.vec_out(r) for r in rays]}


# -- lct ----------------------------------------------------------------------------


def cmd_lct_ray(args) -> dict:
    datum = ser.datum_in(_read_json(args.input))
    d = _vec_arg(args.direction)
    base = _vec_arg(args.base) if args.base else None
    val = lctcore.lct_along_ray(datum, d, base)
    return {"direction": ser.vec_out(d), "lct": ser.q_out(val)}


def _segment_out(res: lctcore.SegmentResult) -> dict:
    return {"zeta": ser.pl_out(res.zeta),
            "places": [{"interval": ser.vec_out(iv), "rows": sorted(rows)} for iv, rows in res.places]}


def cmd_lct_segment(args) -> dict:
    prob = ser.segment_in(_read_json(args.input))
    return _segment_out(lctcore.lct_segment(prob))


def cmd_lct_local(args) -> dict:
    prob = ser.segment_in(_read_json(args.input))
    f, c = lctcore.local_vertex_function(prob, _q_arg(args.lambda0))
    return {"t": ser.fn_out(f), "c": ser.q_out(c)}


# -- sets -------------------------------------------------------------------------------


def _verdict(key: str, v: coeffsets.ChainVerdict) -> dict:
    if v.holds:
        return {key: True, "certificate": v.certificate}
    return {key: False, "witness": ser.vec_out(v.witness)}


def cmd_sets_dcc(args) -> dict:
    return _verdict("dcc", coeffsets.is_dcc(ser.setexpr_in(_read_json(args.input))))


def cmd_sets_acc(args) -> dict:
    return _verdict("acc", coeffsets.is_acc(ser.setexpr_in(_read_json(args.input))))


def cmd_sets_min(args) -> dict:
    return {"min": ser.q_out(coeffsets.min_element(ser.setexpr_in(_read_json(args.input))))}


def cmd_sets_sum(args) -> dict:
    e = ser.setexpr_in(_read_json(args.input))
    probe = coeffsets.sum_closure_probe(e, _q_arg(args.bound), args.terms, args.m_cap)
    return {"sums": ser.vec_out(probe.values), "complete": probe.complete, "note": probe.note}


def _enum_out(en: coeffsets.FnEnumeration) -> dict:
    return {"complete": en.complete, "note": en.note,
            "members": [{"w": ser.fn_out(w), "witness": ser.witness_out(wit)} for w, wit in en.items]}


def cmd_sets_derived(args) -> dict:
    F = ser.family_in(_read_json(args.input))
    if args.grid:
        grid = [_q_arg(x) for x in args.grid.split(",") if x.strip()]
        return _enum_out(coeffsets.script_d(F, grid, args.m_cap, args.param_cap))
    c = _q_arg(args.c) if args.c else F.hi
    return _enum_out(coeffsets.derived_set(F, c, args.m_cap, args.param_cap))


def cmd_sets_dinv(args) -> dict:
    obj = _read_json(args.input)
    F = ser.family_in(ser._req(obj, "family", dict))
    D0 = [ser.fn_in(f) for f in ser._req(obj, "D0", list)]
    caps = coeffsets.Caps(m_cap=args.m_cap, param_cap=args.param_cap)
    res = coeffsets.script_d_inverse(D0, F, caps)
    return {"complete": False, "note": f"witnesses searched with m <= {args.m_cap}",
            "members": [{"f": ser.fn_out(w.f), "m": w.m, "n": w.n, "target": ser.fn_out(w.target),
                         "rest": [{"n": n, "f": ser.fn_out(g)} for n, g in w.rest]} for w in res]}


def cmd_sets_decompose(args) -> dict:
    F = ser.family_in(_read_json(args.input))
    caps = coeffsets.Caps(m_cap=args.m_cap, term_cap=args.term_cap, param_cap=args.param_cap)
    res = coeffsets.trivial_decompositions(_q_arg(args.K), F, caps)
    return {"K": args.K, "complete": False, "note": f"m <= {args.m_cap}, at most {args.term_cap} terms",
            "decompositions": [{"values": [ser.fn_out(w) for w in d.values],
                                "terms": [{"r": r, "witness": ser.witness_out(w)} for r, w in d.terms]}
                               for d in res]}


def cmd_sets_idem(args) -> dict:
    F = ser.family_in(_read_json(args.input))
    caps = coeffsets.Caps(m_cap=args.m_cap, n_cap=args.n_cap, term_cap=args.term_cap, param_cap=args.param_cap)
    rep = coeffsets.check_idempotence(F, caps)
    return {"passed": rep.passed, "complete": False, "sums_checked": rep.sums_checked,
            "nested_checked": rep.nested_checked, "violations": rep.violations,
            "truncation_flags": rep.truncation_flags,
            "collapses": [{"m": m, "n": n, "r": r} for m, n, r in sorted(set(rep.collapses))]}


# -- toric ------------------------------------------------------------------------


def cmd_toric(args) -> dict:
    mds = toricgen.MonomialDivisorSet.parse(args.exponents)
    datum = toricgen.toric_datum(mds, args.bound)
    out = ser.datum_out(datum)
    if args.stability:
        rep = toricgen.oracle_stability(mds, list(range(1, args.bound + 1)))
        out = {"datum": out, "stable_from": rep.stable_from, "monotone": rep.monotone}
    return out


# -- chains -------------------------------------------------------------------------


def _verdict_out(v: chainlab.LineVerdict) -> dict:
    return {"verdict": v.kind, "m0": v.m0, "value": None if v.value is None else ser.q_out(v.value),
            "exit_value": None if v.exit_formula is None else str(v.exit_formula),
            "binding_row": v.binding_row, "threshold": v.threshold}


def cmd_chain_analyze(args) -> dict:
    c = ser.chain_in(_read_json(args.input))
    rep = chainlab.is_increasing(c, 1, args.m_max)
    limit = c.limit()
    return {"increasing": rep.increasing, "strict": rep.strict, "first_violation": rep.first_violation,
            "first_non_strict": rep.first_non_strict, "m_max": args.m_max,
            "limit": ser.polytope_out(limit),
            "hausdorff_sq_to_limit": {str(m): ser.q_out(chainlab.hausdorff_to_limit(c, m))
                                      for m in (1, 2, 5) if m <= args.m_max}}


def cmd_chain_stabilize(args) -> dict:
    c = ser.chain_in(_read_json(args.input))
    q = chainlab.LineQuery(_vec_arg(args.base), _vec_arg(args.direction))
    out = _verdict_out(chainlab.line_stabilization(c, q))
    out.update(base=ser.vec_out(q.base), direction=ser.vec_out(q.direction))
    return out


def cmd_chain_unstable(args) -> dict:
    c = ser.chain_in(_read_json(args.input))
    res = chainlab.unstable_points(c)
    return {"unstable_points": [{"point": ser.vec_out(u.point), "certificate": u.certificate, "rows": list(u.rows),
                                 "box_entry": [{"k": k, "m": m} for k, m in u.box_entry]} for u in res]}


def cmd_chain_union_check(args) -> dict:
    seed = _need_seed(args)
    c = ser.chain_in(_read_json(args.input))
    rep = chainlab.union_closedness_check(c, args.rays, seed)
    return {"hypothesis_holds": rep.hypothesis_holds, "rays_checked": rep.rays_checked, "seed": seed,
            "witness_ray": None if rep.witness_ray is None else ser.vec_out(rep.witness_ray),
            "witness_verdict": None if rep.witness_verdict is None else _verdict_out(rep.witness_verdict),
            "boundary_points_checked": rep.boundary_points_checked,
            "all_in_some_member": rep.all_in_some_member}


# -- verify -------------------------------------------------------------------------


def _cone_lemma_trial(arg: tuple[int, int]) -> dict:
    seed, k = arg
    rng = random.Random(seed * 1_000_003 + k)
    s = 2 + k % 3
    Ts, T = randinst.random_decreasing_chain(rng, s)
    ray = chainlab.escaping_ray(Ts, T, seed=seed + k)
    ok = chainlab.verify_escaping_ray(Ts, T, ray)
    return {"trial": k, "s": s, "length": len(Ts), "ok": ok, "alpha": ser.vec_out(ray.alpha), "e": ser.vec_out(ray.e)}


def _facet_cone_trial(arg: tuple[int, int]) -> dict:
    seed, k = arg
    rng = random.Random(seed * 1_000_003 + k)
    s = 2 + k % 3
    datum = randinst.random_datum(rng, s)
    beta = randinst.random_boundary_vertex(rng, lctcore.build_lct_polytope(datum))
    rep = chainlab.facet_cone_check(datum, beta)
    return {"trial": k, "s": s, "hypothesis": rep.hypothesis_holds, "counterexample": rep.equal is False}


def cmd_verify_cone_lemma(args) -> dict:
    seed = _need_seed(args)
    res = _parallel_map(_cone_lemma_trial, [(seed, k) for k in range(args.trials)])
    return {"trials": args.trials, "seed": seed, "verified": sum(r["ok"] for r in res),
            "failures": [r["trial"] for r in res if not r["ok"]]}


def cmd_verify_facet_cone(args) -> dict:
    seed = _need_seed(args)
    res = _parallel_map(_facet_cone_trial, [(seed, k) for k in range(args.trials)])
    return {"trials": args.trials, "seed": seed, "hypothesis_held": sum(r["hypothesis"] for r in res),
            "counterexamples": [r["trial"] for r in res if r["counterexample"]]}


# -- plot -------------------------------------------------------------------------------


def cmd_plot(args) -> str:
    obj = _read_json(args.input)
    if isinstance(obj, dict) and "rows" in obj and obj["rows"] and "alpha" in obj["rows"][0]:
        c = ser.chain_in(obj)
        ms = []
        for tok in (args.m or "1,2,5,inf").split(","):
            tok = tok.strip()
            ms.append(math.inf if tok == "inf" else int(tok))
        layers = [(f"m={'inf' if m is math.inf else m}", c.instantiate(m)) for m in ms]
        markers = [u.point for u in chainlab.unstable_points(c)] if c.s == 2 else []
        return plot2d(layers, markers, title=args.title or "chain")
    p = _polytope_or_datum(obj)
    return plot2d([("P", p)], title=args.title or "polytope")


# -- parser -----------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are schema errors: exit 2
        self.print_usage(sys.stderr)
        raise SchemaError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lctpoly", description="Exact LCT polytopes, coefficient sets and polytope chains.")
    p.add_argument("--output", "-o", help="write the result here instead of stdout")
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def add(parent, name, fn, help_text, inp=True):
        sp = parent.add_parser(name, help=help_text)
        if inp:
            sp.add_argument("--input", "-i", required=True, help="JSON input file ('-' for stdin)")
        sp.set_defaults(fn=fn)
        return sp

    g = sub.add_parser("polytope", help="build and inspect polytopes").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(g, "build", cmd_polytope_build, "LCT polytope of a resolution datum")
    add(g, "facets", cmd_polytope_facets, "facets with LCT labels")
    add(g, "project", cmd_polytope_project, "drop one coordinate").add_argument("--drop", type=int, required=True, help="1-based axis")
    add(g, "vertices", cmd_polytope_vertices, "vertex enumeration")

    g = sub.add_parser("lct", help="thresholds").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sp = add(g, "ray", cmd_lct_ray, "threshold along a ray")
    sp.add_argument("--direction", required=True)
    sp.add_argument("--base")
    add(g, "segment", cmd_lct_segment, "piecewise-linear threshold on a segment")
    add(g, "local", cmd_lct_local, "first linear piece").add_argument("--lambda0", required=True)

    g = sub.add_parser("sets", help="coefficient sets").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(g, "dcc", cmd_sets_dcc, "descending chain condition")
    add(g, "acc", cmd_sets_acc, "ascending chain condition")
    add(g, "min", cmd_sets_min, "least element of a DCC set")
    sp = add(g, "sum", cmd_sets_sum, "bounded sum closure")
    sp.add_argument("--bound", required=True)
    sp.add_argument("--terms", type=int, required=True)
    sp.add_argument("--m-cap", type=int, default=64)
    sp = add(g, "derived", cmd_sets_derived, "derived function set")
    sp.add_argument("--c")
    sp.add_argument("--grid", help="comma-separated c values: union over the grid")
    sp.add_argument("--m-cap", type=int, default=6)
    sp.add_argument("--param-cap", type=int, default=20)
    sp = add(g, "dinv", cmd_sets_dinv, "inverse image of a finite set")
    sp.add_argument("--m-cap", type=int, default=4)
    sp.add_argument("--param-cap", type=int, default=20)
    sp = add(g, "decompose", cmd_sets_decompose, "decompositions K = sum r_j w_j")
    sp.add_argument("--K", required=True)
    sp.add_argument("--m-cap", type=int, default=4)
    sp.add_argument("--term-cap", type=int, default=4)
    sp.add_argument("--param-cap", type=int, default=20)
    sp = add(g, "idem", cmd_sets_idem, "idempotence check")
    for name, default in (("--m-cap", 6), ("--n-cap", 6), ("--term-cap", 6), ("--param-cap", 20)):
        sp.add_argument(name, type=int, default=default)

    sp = add(sub, "toric", cmd_toric, "resolution datum of a monomial divisor set", inp=False)
    sp.add_argument("--exponents", required=True, help='e.g. "2,0;0,3"')
    sp.add_argument("--bound", type=int, default=10)
    sp.add_argument("--stability", action="store_true", help="also report the stabilizing bound")

    g = sub.add_parser("chain", help="parametric chains").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(g, "analyze", cmd_chain_analyze, "monotonicity and limit").add_argument("--m-max", type=int, default=50)
    sp = add(g, "stabilize", cmd_chain_stabilize, "stabilization along a line")
    sp.add_argument("--base", required=True)
    sp.add_argument("--direction", required=True)
    add(g, "unstable", cmd_chain_unstable, "unstable points")
    sp = add(g, "union-check", cmd_chain_union_check, "closedness of the union along sampled rays")
    sp.add_argument("--rays", type=int, default=8)
    sp.add_argument("--seed", type=int)

    g = sub.add_parser("verify", help="randomized lemma verifiers").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, fn in (("cone-lemma", cmd_verify_cone_lemma), ("facet-cone", cmd_verify_facet_cone)):
        sp = add(g, name, fn, f"{name} verifier", inp=False)
        sp.add_argument("--trials", type=int, default=100)
        sp.add_argument("--seed", type=int)

    sp = add(sub, "plot", cmd_plot, "SVG of a planar polytope, datum or chain")
    sp.add_argument("--m", help="comma-separated chain indices, 'inf' for the limit")
    sp.add_argument("--title")
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        result = args.fn(args)
        text = result if isinstance(result, str) else ser.dumps(result)
        if args.output:
            Path(args.output).write_text(text)
        else:
            stdout.write(text)
        return 0
    except SchemaError as exc:
        stderr.write(f"lctpoly: input error: {exc}\n")
        return 2
    except PreconditionError as exc:
        stderr.write(f"lctpoly: precondition violated: {exc}\n")
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
