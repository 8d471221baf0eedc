"""Parametric chains: monotonicity, line stabilization, unstable points and the two lemma verifiers."""

from __future__ import annotations

import math
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lctpoly.chainlab import (
    ChainRow,
    LineQuery,
    ParametricChain,
    corner_cut_chain,
    count_distinct_local_sections,
    escaping_ray,
    facet_cone_check,
    facet_cone_check_polytope,
    hausdorff_to_limit,
    is_increasing,
    line_stabilization,
    product_chain,
    union_closedness_check,
    unstable_points,
    verify_escaping_ray,
)
from lctpoly.errors import PreconditionError
from lctpoly.exactgeom import HPolytope, ray_exit
from lctpoly.lctcore import ResolutionDatum, build_lct_polytope
from lctpoly.randinst import random_datum, random_decreasing_chain

CORNER = corner_cut_chain()
CONSTANT = ParametricChain.of(2, [((-1, 0), None, 0), ((0, -1), None, 0), ((1, 0), None, 1), ((0, 1), None, 1)])
SLIDING = ParametricChain.of(2, [((-1, 0), None, 0), ((0, -1), None, 0), ((1, 0), None, 1, -1), ((0, 1), None, 1)])
REVERSED = ParametricChain.of(2, [((-1, 0), None, 0), ((0, -1), None, 0), ((1, 0), None, 1, 1), ((0, 1), None, 1)])


def pts(*xs):
    return {tuple(Q(c) for c in x) for x in xs}


def P(dim, *rows):
    return HPolytope.from_inequalities(dim, rows)


# -- members and monotonicity ------------------------------------------------------------


def test_corner_cut_members():
    base = [(-1, 0, 0), (0, -1, 0), (0, 1, 2), (1, 1, 3), (1, 0, 3)]
    assert CORNER.instantiate(1).same_set(P(2, *base, (1, 2, 4)))
    assert CORNER.instantiate(2).same_set(P(2, *base, (1, 2, Q(9, 2))))
    assert CORNER.limit().same_set(P(2, *base))
    assert set(CORNER.instantiate(1).vrep.vertices) == pts((0, 0), (0, 2), (2, 1), (3, 0))


def test_increasing_examples():
    rep = is_increasing(CORNER, 1, 50)
    assert rep.increasing and rep.strict
    rep = is_increasing(CONSTANT, 1, 50)
    assert rep.increasing and not rep.strict
    rep = is_increasing(REVERSED, 1, 50)
    assert not rep.increasing and rep.first_violation == 1


def test_hausdorff_to_limit_at_five():
    assert hausdorff_to_limit(CORNER, 5) == Q(1, 125)
    assert all(hausdorff_to_limit(CORNER, m) == Q(1, 5 * m * m) for m in (1, 2, 3, 10))


def test_instantiate_rejects_bad_index():
    with pytest.raises(PreconditionError):
        CORNER.instantiate(0)


# -- line stabilization --------------------------------------------------------------------


def test_line_examples():
    v = line_stabilization(CORNER, LineQuery((1, 0), (0, 1)))
    assert v.kind == "never" and str(v.exit_formula) == "2 - 1/(2m)"
    assert all(v.exit_value(m) == 2 - Q(1, 2 * m) for m in range(1, 30))
    v = line_stabilization(CORNER, LineQuery((Q(1, 2), 0), (0, 1)))
    assert v.kind == "stabilizes" and v.m0 == 2 and v.value == 2
    v = line_stabilization(CORNER, LineQuery((0, 0), (1, 2)))
    assert v.kind == "never" and str(v.exit_formula) == "1 - 1/(5m)"


def _brute_exits(chain, q, m_max=200):
    return [ray_exit(chain.instantiate(m), q.base, q.direction) for m in range(1, m_max + 1)]


def _check_against_brute_force(chain, q):
    v = line_stabilization(chain, q)
    t = _brute_exits(chain, q)
    if v.kind == "stabilizes":
        assert all(x == v.value for x in t[v.m0 - 1:])
        if v.m0 > 1:
            assert t[v.m0 - 2] != v.value
    elif v.kind == "never":
        assert t[-1] > t[-2] and len(set(t[-50:])) == 50
    else:
        assert v.kind == "non-monotone" and t[-1] < t[-2]
    return v


@pytest.mark.parametrize("base, d", [((1, 0), (0, 1)), ((Q(1, 2), 0), (0, 1)), ((0, 0), (1, 2)), ((0, 0), (1, 0)),
                                     ((0, 0), (0, 1)), ((0, 0), (3, 1)), ((Q(1, 3), Q(1, 3)), (1, 1))])
def test_line_verdicts_match_brute_force_on_corner_cut(base, d):
    _check_against_brute_force(CORNER, LineQuery(base, d))


def _random_chain(rng: random.Random) -> ParametricChain:
    s = rng.randint(2, 3)
    rows = []
    for i in range(s):
        e = tuple(1 if j == i else 0 for j in range(s))
        rows.append(ChainRow(e, (0,) * s, Q(3)))
        rows.append(ChainRow(tuple(-x for x in e), (0,) * s, Q(3)))
    for _ in range(rng.randint(1, 3)):
        alpha = tuple(Q(rng.randint(-2, 3)) for _ in range(s))
        beta = tuple(Q(rng.randint(-2, 2)) for _ in range(s))
        ba = Q(rng.randint(1, 6), rng.randint(1, 2))
        bb = Q(rng.randint(-2, 2), rng.randint(1, 3))
        if ba + bb <= 0:
            bb = Q(0)
        rows.append(ChainRow(alpha, beta, ba, bb))
    return ParametricChain(s, tuple(rows))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_line_verdicts_match_brute_force_on_random_chains(seed):
    rng = random.Random(seed)
    chain = _random_chain(rng)
    d = tuple(rng.randint(-2, 3) for _ in range(chain.s))
    if not any(d):
        d = (1,) + (0,) * (chain.s - 1)
    _check_against_brute_force(chain, LineQuery((0,) * chain.s, d))


# -- unstable points ---------------------------------------------------------------------


def test_unstable_points_corner_cut():
    res = unstable_points(CORNER)
    assert [u.point for u in res] == [(Q(1), Q(2))]
    assert res[0].certificate == "moving-vertex"
    assert [k for k, _ in res[0].box_entry] == [2, 4, 8]


def test_unstable_points_constant_chain():
    assert unstable_points(CONSTANT) == []


def test_local_section_growth_matches_exact_answer():
    """Growing counts of distinct local sections single out exactly the exact unstable points."""
    exact = {u.point for u in unstable_points(CORNER)}
    probes = set(CORNER.limit().vrep.vertices) | exact | pts((Q(1, 2), 2), (2, 1))
    for x in sorted(probes):
        growing = all(count_distinct_local_sections(CORNER, x, k, 200) > count_distinct_local_sections(CORNER, x, k, 100)
                      for k in (2, 4, 8))
        assert growing == (x in exact), x


def test_product_chain_reports_both_limit_vertices():
    prod = product_chain(CORNER, CORNER)
    res = unstable_points(prod)
    corner = (Q(1), Q(2))
    assert res
    assert all(u.point[:2] == corner or u.point[2:] == corner for u in res)
    firsts = {u.point[:2] for u in res}
    seconds = {u.point[2:] for u in res}
    limit_vertices = set(CORNER.limit().vrep.vertices)
    assert firsts == seconds == limit_vertices
    assert (Q(1), Q(2), Q(1), Q(2)) in {u.point for u in res}


# -- union closedness ---------------------------------------------------------------------


def test_union_check_examples():
    rep = union_closedness_check(CORNER, 8, seed=3)
    assert not rep.hypothesis_holds and rep.witness_ray == (1, 2)
    rep = union_closedness_check(CONSTANT, 8, seed=3)
    assert rep.hypothesis_holds and rep.all_in_some_member and rep.boundary_points_checked > 0
    rep = union_closedness_check(SLIDING, 8, seed=3)
    assert not rep.hypothesis_holds and rep.witness_ray == (1, 0)


def test_union_check_is_seed_deterministic():
    a = union_closedness_check(CONSTANT, 12, seed=42)
    b = union_closedness_check(CONSTANT, 12, seed=42)
    assert a == b


# -- escaping ray -------------------------------------------------------------------------


def test_escaping_ray_box_example():
    T = HPolytope.from_points([(-1, 0), (1, 0)])
    Ts = [HPolytope.box((-1, -Q(1, i)), (1, Q(1, i))) for i in range(1, 5)]
    ray = escaping_ray(Ts, T, seed=0)
    assert T.contains_point(ray.alpha)
    assert ray.e[0] == 0 and ray.e[1] != 0
    assert verify_escaping_ray(Ts, T, ray)


def test_escaping_ray_single_member():
    T = HPolytope.from_points([(0, 0)])
    Ts = [HPolytope.box((-1, -1), (1, 1))]
    ray = escaping_ray(Ts, T, seed=1)
    assert verify_escaping_ray(Ts, T, ray)


def test_escaping_ray_on_random_chains():
    rng = random.Random(13)
    for k in range(30):
        Ts, T = random_decreasing_chain(rng, 2 + k % 3)
        ray = escaping_ray(Ts, T, seed=k)
        assert verify_escaping_ray(Ts, T, ray)
        for q, Ti in zip(ray.witnesses, Ts):
            assert Ti.contains_point(q) and not T.contains_point(q)


def test_escaping_ray_rejects_full_dimensional_target():
    sq = HPolytope.box((0, 0), (1, 1))
    with pytest.raises(PreconditionError):
        escaping_ray([sq], sq)


# -- facet cones --------------------------------------------------------------------------


SQUARE_DATUM = ResolutionDatum.of(2, [((1, 0), 0, "C1", "strict"), ((0, 1), 0, "C2", "strict")])


def test_facet_cone_unit_square_corner():
    rep = facet_cone_check(SQUARE_DATUM, (1, 1))
    assert len(rep.facets) == 2 and rep.hypothesis_holds and rep.equal


def test_facet_cone_unit_square_edge_point():
    rep = facet_cone_check(SQUARE_DATUM, (1, 0))
    assert len(rep.facets) == 1 and rep.hypothesis_dim == 0 and not rep.hypothesis_holds


def test_facet_cone_detects_a_violation_outside_the_sign_condition():
    """Negative control: a polytope whose slanted facet has a negative coefficient."""
    p = HPolytope.from_points([(0, 0), (2, 0), (3, 1), (0, 1)])
    rep = facet_cone_check_polytope(p, (2, 0))
    assert rep.equal is False and rep.counterexample is not None


def test_facet_cone_random_datums_have_no_counterexamples():
    rng = random.Random(21)
    held = 0
    for k in range(60):
        datum = random_datum(rng, 2 + k % 3)
        verts = build_lct_polytope(datum).vrep.vertices
        beta = verts[rng.randrange(len(verts))]
        rep = facet_cone_check(datum, beta)
        assert rep.equal is not False
        held += rep.hypothesis_holds
    assert held > 0


def test_inf_sentinel_when_no_row_sees_the_direction():
    chain = ParametricChain.of(2, [((-1, 0), None, 0), ((1, 0), None, 1, -1)])
    v = line_stabilization(chain, LineQuery((0, 0), (0, 1)))
    assert v.kind == "stabilizes" and v.value is math.inf
