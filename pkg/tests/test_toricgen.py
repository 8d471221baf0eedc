"""Monomial divisor sets: weight rows, brute-force thresholds, stability in the weight bound."""

from __future__ import annotations

import random
from fractions import Fraction as Q

import pytest

from lctpoly.errors import PreconditionError
from lctpoly.exactgeom import HPolytope, contains
from lctpoly.lctcore import build_lct_polytope, lct_along_ray
from lctpoly.randinst import random_direction, random_monomial
from lctpoly.toricgen import (
    MonomialDivisorSet,
    all_weight_rows,
    brute_force_lct,
    oracle_stability,
    primitive_weights,
    toric_datum,
)


def test_parse_and_validate():
    mds = MonomialDivisorSet.parse("2,0;0,3")
    assert mds.n == 2 and mds.divisors == ((2, 0), (0, 3))
    with pytest.raises(PreconditionError):
        MonomialDivisorSet.parse("1,a")
    with pytest.raises(PreconditionError):
        MonomialDivisorSet.parse("0,0")


def test_primitive_weights_small():
    assert primitive_weights(2, 2) == [(0, 1), (1, 0), (1, 1)]
    assert (2, 2) not in primitive_weights(2, 4)


def test_x2_y3_rows_and_polytope():
    mds = MonomialDivisorSet.parse("2,0;0,3")
    datum = toric_datum(mds, 10)
    assert {r.a for r in datum.rows} == {(Q(2), Q(0)), (Q(0), Q(3))}
    weight_11 = next(r for r in all_weight_rows(mds, 10) if r.label == "w=(1,1)")
    assert weight_11.a == (Q(1), Q(3, 2))  # the 2t1 + 3t2 <= 2 row, tight only at the corner
    p = build_lct_polytope(datum)
    assert p.same_set(HPolytope.box((0, 0), (Q(1, 2), Q(1, 3))))


@pytest.mark.parametrize("text", ["1,1", "1,1,1"])
def test_reduced_snc_single_divisor_has_threshold_one(text):
    datum = toric_datum(MonomialDivisorSet.parse(text), 10)
    assert [r.a for r in datum.rows] == [(Q(1),)]


def test_stability_examples():
    assert oracle_stability(MonomialDivisorSet.parse("1,1"), range(1, 5)).stable_from == 1
    rep = oracle_stability(MonomialDivisorSet.parse("2,0;0,3"), range(1, 5))
    assert rep.monotone and rep.stable_from == 1


def test_snc_reduced_gives_unit_box():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 4)
        coords = list(range(n))
        rng.shuffle(coords)
        s = rng.randint(1, n)
        cuts = sorted(rng.sample(range(1, n), s - 1)) if s > 1 else []
        blocks = [coords[i:j] for i, j in zip([0] + cuts, cuts + [n])]
        divs = tuple(tuple(int(k in b) for k in range(n)) for b in blocks)
        p = build_lct_polytope(toric_datum(MonomialDivisorSet(n, divs), 6))
        assert p.same_set(HPolytope.box((0,) * s, (1,) * s))


def test_permutation_invariance():
    rng = random.Random(6)
    for _ in range(30):
        mds = random_monomial(rng)
        perm = list(range(mds.n))
        rng.shuffle(perm)
        other = mds.permuted(perm)
        for _ in range(5):
            d = random_direction(rng, mds.s)
            assert lct_along_ray(toric_datum(mds, 6), d) == lct_along_ray(toric_datum(other, 6), d)


def test_monotone_in_weight_bound_and_stable_by_eight():
    rng = random.Random(8)
    for _ in range(40):
        mds = random_monomial(rng, n_max=3, s_max=2)
        rep = oracle_stability(mds, range(1, 9))
        assert rep.monotone
        assert rep.stable_from is not None and rep.stable_from <= 8
        for p, q in zip(rep.polytopes, rep.polytopes[1:]):
            assert contains(p, q)


def test_built_polytope_matches_brute_force_weights():
    rng = random.Random(9)
    for _ in range(20):
        mds = random_monomial(rng)
        datum = toric_datum(mds, 6)
        for _ in range(10):
            d = random_direction(rng, mds.s)
            assert lct_along_ray(datum, d) == brute_force_lct(mds, 10, d)


def test_every_weight_row_holds_on_the_polytope():
    mds = MonomialDivisorSet.parse("1,2,0;0,1,3")
    p = build_lct_polytope(toric_datum(mds, 3))
    verts = p.vrep.vertices
    for r in all_weight_rows(mds, 7):
        assert all(sum(a * x for a, x in zip(r.a, v)) <= 1 for v in verts)
