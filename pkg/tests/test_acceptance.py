"""Acceptance criteria, one test each, each printing a single PASS/FAIL line with its runtime.

The checks are plain functions so ``scripts/run_acceptance.py`` can run them
outside pytest.  A check raises ``AssertionError`` on failure and returns a
short detail string on success.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction as Q
from pathlib import Path

import pytest

from lctpoly import chainlab, coeffsets, lctcore, randinst, toricgen
from lctpoly.cli import run
from lctpoly.exactgeom import HPolytope, contains, project, project_vrep
from lctpoly.linfun import AffineFn

ROOT = Path(__file__).resolve().parent.parent
ONE = AffineFn.const(1)
T = AffineFn(Q(1), Q(0))


def criterion_1() -> str:
    F = coeffsets.FnFamily(Q(0), Q(1), (ONE, T))
    values = []
    for m in range(1, 21):
        c = Q(1, m + 2)
        v = T.scale(m + 2)
        assert v in coeffsets.f_plus(F, c), f"(m+2)t missing from F+ at c=1/{m + 2}"
        w = AffineFn(Q(m + 2, m), Q(m - 1, m))
        en = coeffsets.derived_set(F, c, m)
        assert w in en and en.witness(w).check(), f"(m-1+(m+2)t)/m missing for m={m}"
        values.append(w(1))
    assert values == [Q(2 * m + 1, m) for m in range(1, 21)]
    assert all(a > b for a, b in zip(values, values[1:])), "chain is not strictly decreasing"
    verdict = coeffsets.is_dcc(coeffsets.SetExpr.from_sequence(values))
    assert not verdict.holds
    return f"3, 5/2, 7/3, ..., {values[-1]}; is_dcc false, witness {[str(x) for x in verdict.witness]}"


def criterion_2() -> str:
    en = coeffsets.derived_set(coeffsets.FnFamily.constants([1]), 1, 50)
    got = set(en.functions)
    want = {AffineFn.const(0), ONE} | {AffineFn.const(Q(m - 1, m)) for m in range(1, 51)}
    assert got == want, f"{len(got ^ want)} differences"
    return f"{len(got)} members, exactly {{0}} u {{(m-1)/m}} u {{1}}"


def criterion_3() -> str:
    fams = {"{1}": coeffsets.FnFamily.constants([1]), "{1,1/2}": coeffsets.FnFamily.constants([1, Q(1, 2)]),
            "{1,t}": coeffsets.FnFamily(Q(0), Q(1), (ONE, T))}
    parts = []
    collapsed = False
    for name, F in fams.items():
        rep = coeffsets.check_idempotence(F, coeffsets.Caps(m_cap=6, n_cap=6))
        assert rep.passed and not rep.violations, f"{name}: {rep.violations[:3]}"
        collapsed |= any(m * n == r for m, n, r in rep.collapses) and bool(rep.collapses)
        parts.append(f"{name}: {rep.sums_checked} sums, {rep.nested_checked} nested")
    assert collapsed, "no r = mn collapse recorded"
    return "; ".join(parts)


def criterion_4() -> str:
    decs = coeffsets.trivial_decompositions(2, coeffsets.FnFamily.constants([1]), coeffsets.Caps(m_cap=4, term_cap=4))
    got = sorted([str(w.intercept) for w in d.values] for d in decs)
    proc = subprocess.run([sys.executable, str(ROOT / "scripts" / "brute_force_decompositions.py"),
                           "--K", "2", "--m-cap", "4", "--terms", "4"], capture_output=True, text=True, check=True)
    brute = sorted(json.loads(proc.stdout))
    listed = sorted([["1", "1"], ["1/2", "1/2", "1"], ["1/2", "1/2", "1/2", "1/2"], ["2/3", "2/3", "2/3"],
                     ["1/2", "3/4", "3/4"]])
    assert got == brute == listed, f"library {got} vs brute force {brute}"
    return f"{len(got)} multisets, identical to the brute-force script"


def criterion_5() -> str:
    rng = random.Random(5)
    mismatches = checked = 0
    for _ in range(100):
        mds = randinst.random_monomial(rng, n_max=3, s_max=3, e_max=4)
        rep = toricgen.oracle_stability(mds, range(1, 9))
        assert rep.stable_from is not None, f"{mds} did not stabilize by weight bound 8"
        datum = toricgen.toric_datum(mds, 8)
        for _ in range(20):
            d = randinst.random_direction(rng, mds.s)
            got = lctcore.lct_along_ray_polytope(datum, d)
            want = toricgen.brute_force_lct(mds, 12, d)
            checked += 1
            mismatches += got != want
    assert mismatches == 0, f"{mismatches} mismatches"
    return f"{checked} ray thresholds, 0 mismatches (brute force over weights |w| <= 12)"


def criterion_6() -> str:
    rng = random.Random(6)
    bad = 0
    for _ in range(50):
        prob = randinst.random_segment_problem(rng)
        res = lctcore.lct_segment(prob)
        for _ in range(20):
            t = prob.lo + (prob.hi - prob.lo) * Q(rng.randint(0, 10**6), 10**6)
            bad += res.zeta(t) != lctcore.lct_at(prob, t)
        taus = prob.taus()
        for (a, b), arg in res.places:
            for k in (1, 2, 3):
                t = a + (b - a) * Q(k, 4)
                best = min(f(t) for _, f in taus)
                bad += frozenset(lbl for lbl, f in taus if f(t) == best) != arg
    assert bad == 0, f"{bad} mismatches"
    return "1000 abscissae and all piece interiors, 0 mismatches"


def criterion_7() -> str:
    rng = random.Random(7)
    for k in range(100):
        Ts, Tt = randinst.random_decreasing_chain(rng, 2 + k % 3)
        ray = chainlab.escaping_ray(Ts, Tt, seed=k)
        assert chainlab.verify_escaping_ray(Ts, Tt, ray), f"escaping ray {k} failed verification"
    held = 0
    for k in range(500):
        datum = randinst.random_datum(rng, 2 + k % 3)
        beta = randinst.random_boundary_vertex(rng, lctcore.build_lct_polytope(datum))
        rep = chainlab.facet_cone_check(datum, beta)
        assert rep.equal is not False, f"facet-cone counterexample on datum {k}: {rep.counterexample}"
        held += rep.hypothesis_holds
    return f"100 escaping rays verified; 500 facet-cone checks, hypothesis held in {held}, 0 counterexamples"


def criterion_8() -> str:
    c = chainlab.corner_cut_chain()
    rep = chainlab.is_increasing(c, 1, 50)
    assert rep.increasing
    v1 = chainlab.line_stabilization(c, chainlab.LineQuery((1, 0), (0, 1)))
    assert v1.kind == "never" and all(v1.exit_value(m) == 2 - Q(1, 2 * m) for m in range(1, 51))
    v2 = chainlab.line_stabilization(c, chainlab.LineQuery((Q(1, 2), 0), (0, 1)))
    assert v2.kind == "stabilizes" and v2.m0 == 2 and v2.value == 2
    pts = [u.point for u in chainlab.unstable_points(c)]
    assert pts == [(Q(1), Q(2))], pts
    return f"increasing; x1=1 never ({v1.exit_formula}); x1=1/2 stabilizes at m0=2; unstable {{(1, 2)}}"


def criterion_9() -> str:
    rng = random.Random(9)
    for k in range(200):
        dim = rng.randint(1, 4)
        p = randinst.random_lowdim_polytope(rng, dim) if k % 4 == 0 else randinst.random_polytope(rng, dim, rng.randint(0, 5))
        back = HPolytope.from_vrep(p.vrep, p.dim)
        assert contains(p, back) and contains(back, p), f"round trip {k}"
        if dim >= 2:
            axis = rng.randrange(dim)
            fm, shadow = project(p, axis), project_vrep(p, axis)
            assert contains(fm, shadow) and contains(shadow, fm), f"projection {k}"
    return "200 polytopes, round trip and projection equal by mutual containment"


def _fixture_digest(threads: str) -> str:
    cases = json.loads((ROOT / "fixtures" / "manifest.json").read_text())
    h = hashlib.sha256()
    old_env, old_cwd = os.environ.get("LCTPOLY_THREADS"), os.getcwd()
    os.environ["LCTPOLY_THREADS"] = threads
    os.chdir(ROOT)
    try:
        for case in cases:
            out = io.StringIO()
            code = run(case["args"], stdout=out, stderr=io.StringIO())
            text = out.getvalue()
            assert code == case["exit"], case["name"]
            assert text == (ROOT / "fixtures" / case["expected"]).read_text(), f"{case['name']} drifted"
            h.update(case["name"].encode() + b"\0" + text.encode() + b"\0")
    finally:
        os.chdir(old_cwd)
        if old_env is None:
            os.environ.pop("LCTPOLY_THREADS", None)
        else:
            os.environ["LCTPOLY_THREADS"] = old_env
    return h.hexdigest()


def criterion_10() -> str:
    a, b, c = _fixture_digest("1"), _fixture_digest("1"), _fixture_digest("2")
    assert a == b == c, "fixture outputs differ between runs"
    return f"sha256 {a[:16]}... identical across 3 runs (1 and 2 threads)"


CRITERIA = [
    (1, "non-DCC witness chain (2m+1)/m", 1, criterion_1),
    (2, "standard set recovery", 1, criterion_2),
    (3, "idempotence at caps", 30, criterion_3),
    (4, "decomposition enumeration", 5, criterion_4),
    (5, "toric oracle equivalence", 120, criterion_5),
    (6, "segment threshold oracle", 60, criterion_6),
    (7, "cone lemma and facet-cone verification", 300, criterion_7),
    (8, "chain diagnostics", 10, criterion_8),
    (9, "H/V round trip and projection", 120, criterion_9),
    (10, "CLI byte-determinism", 60, criterion_10),
]


def evaluate(number: int, title: str, limit: float, fn) -> tuple[bool, str]:
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except AssertionError as exc:
        detail, ok = f"assertion failed: {exc}", False
    elapsed = time.perf_counter() - start
    if ok and elapsed > limit:
        ok, detail = False, f"{detail}; too slow"
    line = f"criterion {number:>2} [{title}]: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, limit {limit}s) {detail}"
    return ok, line


@pytest.mark.parametrize("number, title, limit, fn", CRITERIA, ids=[f"criterion_{n}" for n, *_ in CRITERIA])
def test_criterion(number, title, limit, fn, capsys):
    ok, line = evaluate(number, title, limit, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line
