"""Coefficient sets: chain conditions, sum closures, derived sets and decompositions."""

from __future__ import annotations

import random
import time
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lctpoly.coeffsets import (
    AscFamily,
    Caps,
    DecompWitness,
    DescFamily,
    FnFamily,
    ParametricAtom,
    SetExpr,
    check_idempotence,
    derived_set,
    f_plus,
    in_derived_set,
    in_script_d,
    is_acc,
    is_dcc,
    min_element,
    nested_collapse,
    script_d,
    script_d_inverse,
    sum_closure_probe,
    surface_relation_monotone,
    surface_relation_solve,
    trivial_decompositions,
)
from lctpoly.errors import PreconditionError
from lctpoly.linfun import AffineFn

ONE = AffineFn.const(1)
T = AffineFn(Q(1), Q(0))
F1 = FnFamily.constants([1])
F1T = FnFamily(Q(0), Q(1), (ONE, T))


def const(v):
    return AffineFn.const(Q(v))


# -- chain conditions ----------------------------------------------------------------


def test_dcc_examples():
    assert is_dcc(SetExpr.of(DescFamily(1, 1))).holds
    v = is_dcc(SetExpr.of(AscFamily(0, 1)))
    assert not v.holds and v.witness == (1, Q(1, 2), Q(1, 3))
    assert is_dcc(SetExpr.of([1, 2, 3], DescFamily(5, 1))).holds


def test_acc_examples():
    assert is_acc(SetExpr.of(AscFamily(1, 1))).holds
    v = is_acc(SetExpr.of(DescFamily(1, 1)))
    assert not v.holds and list(v.witness) == sorted(v.witness) and len(set(v.witness)) == len(v.witness)
    assert is_acc(SetExpr.of([Q(1, 2), 7, -3])).holds


def test_min_examples():
    assert min_element(SetExpr.of(DescFamily(1, 1))) == 0
    assert min_element(SetExpr.of([Q(1, 2), Q(1, 3)])) == Q(1, 3)
    assert min_element(SetExpr.of([2], DescFamily(1, Q(1, 2)))) == Q(1, 2)
    with pytest.raises(PreconditionError):
        min_element(SetExpr.of(AscFamily(0, 1)))


def _longest_strict_run(seq, decreasing: bool) -> int:
    """Longest strictly monotone subsequence, quadratic on purpose (independent of the library)."""
    best = [1] * len(seq)
    for i in range(len(seq)):
        for j in range(i):
            if (seq[j] > seq[i]) if decreasing else (seq[j] < seq[i]):
                best[i] = max(best[i], best[j] + 1)
    return max(best, default=0)


def _random_setexpr(rng: random.Random) -> SetExpr:
    finite = [Q(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rng.randint(0, 4))]
    fams = []
    for _ in range(rng.randint(0, 3)):
        a, b = Q(rng.randint(-4, 4), rng.randint(1, 3)), Q(rng.randint(1, 5), rng.randint(1, 3))
        fams.append(DescFamily(a, b) if rng.random() < 0.5 else AscFamily(a, b))
    return SetExpr.of(finite, *fams)


def test_chain_conditions_agree_with_brute_force_on_100_sets():
    """A DCC union of k atoms has no strictly decreasing run longer than k in enumeration order."""
    rng = random.Random(11)
    for _ in range(100):
        e = _random_setexpr(rng)
        atoms = len(e.finite) + len(e.families)
        seq = e.sequence(atoms + 40)
        for verdict, decreasing in ((is_dcc(e), True), (is_acc(e), False)):
            brute_fails = _longest_strict_run(seq, decreasing) > atoms
            assert verdict.holds == (not brute_fails)
            if not verdict.holds:
                w = verdict.witness
                assert all(x in set(e.enumerate(50)) for x in w)
                assert all((a > b) if decreasing else (a < b) for a, b in zip(w, w[1:]))


def test_from_sequence_fits_affine_in_one_over_m():
    e = SetExpr.from_sequence([Q(2 * m + 1, m) for m in range(1, 21)])
    assert e.families == (AscFamily(2, 1),)
    with pytest.raises(PreconditionError):
        SetExpr.from_sequence([1, 2, 4])


# -- sum closure ------------------------------------------------------------------------


def test_sum_probe_examples():
    p = sum_closure_probe(SetExpr.of([1]), 3, 3)
    assert p.values == (1, 2, 3) and p.complete
    p = sum_closure_probe(SetExpr.of([Q(1, 2), Q(1, 3)]), 1, 3)
    assert p.values == (Q(1, 3), Q(1, 2), Q(2, 3), Q(5, 6), 1) and p.complete
    p = sum_closure_probe(SetExpr.of(DescFamily(1, Q(1, 2))), 1, 2, m_cap=8)
    assert not p.complete and Q(1, 2) in p.values and 1 in p.values and Q(7, 8) in p.values


# -- derived sets ---------------------------------------------------------------------------


def test_f_plus_examples():
    assert set(f_plus(F1, 1).functions) == {const(0), ONE}
    assert set(f_plus(F1T, Q(1, 2)).functions) == {const(0), T, T.scale(2), ONE}
    for m in range(1, 6):
        assert T.scale(m + 2) in f_plus(F1T, Q(1, m + 2))


def test_f_plus_closed_under_partial_sums():
    en = f_plus(F1T, Q(1, 3))
    fs = en.functions
    for f in fs:
        for g in fs:
            h = f + g
            if h(0) <= 1 and h(Q(1, 3)) <= 1:
                assert h in en


def test_derived_set_standard_small():
    en = derived_set(F1, 1, 4)
    assert sorted(f.intercept for f in en.functions) == [0, Q(1, 2), Q(2, 3), Q(3, 4), 1]
    assert all(f.slope == 0 for f in en.functions)
    assert all(en.witness(f).check() for f in en.functions)


def test_derived_set_m_one_slice_is_f_plus():
    en = derived_set(F1T, Q(1, 3), 3)
    m1 = {f for f, w in en.items if w.m == 1}
    assert m1 <= set(f_plus(F1T, Q(1, 3)).functions)
    assert set(f_plus(F1T, Q(1, 3)).functions) <= set(en.functions)


def test_derived_set_accumulates_toward_one_at_cap_50():
    en = derived_set(F1, 1, 50)
    below = sorted(f.intercept for f in en.functions if f.intercept < 1)
    assert below == [Q(m - 1, m) for m in range(1, 51)]
    assert all(a < b for a, b in zip(below, below[1:]))


def test_script_d_grid_independent_for_constant_families():
    for fam in (F1, FnFamily.constants([1, Q(1, 2)])):
        sets = [set(script_d(fam, grid, 5).functions) for grid in ([1], [Q(1, 3), Q(1, 2), 1], [Q(1, 7), Q(5, 6)])]
        assert sets[0] == sets[1] == sets[2] == set(derived_set(fam, 1, 5).functions)


def test_script_d_grid_hits_moving_members():
    en = script_d(F1T, [Q(1, k) for k in range(1, 7)], 4)
    for m in range(1, 5):
        assert AffineFn(Q(m + 2, m), Q(m - 1, m)) in en


def test_script_d_empty_grid_is_zero_slice_only():
    en = script_d(F1T, [], 3)
    assert set(en.functions) == {const(Q(m - 1, m)) for m in range(1, 4)}


def test_non_dcc_chain_end_to_end():
    values = []
    for m in range(1, 21):
        c = Q(1, m + 2)
        v = T.scale(m + 2)
        assert v in f_plus(F1T, c)
        w = AffineFn(Q(m + 2, m), Q(m - 1, m))
        assert w in derived_set(F1T, c, m)
        assert in_script_d(w, F1T, m) is not None
        values.append(w(1))
    assert values == [Q(2 * m + 1, m) for m in range(1, 21)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert not is_dcc(SetExpr.from_sequence(values)).holds


def test_membership_solves_for_c():
    w = AffineFn(Q(5, 3), Q(2, 3))  # m = 3, v = 5t, needs c <= 1/5
    wit = in_script_d(w, F1T, 3)
    assert wit is not None and wit.m == 3 and wit.c == Q(1, 5) and wit.check()
    assert in_derived_set(w, F1T, Q(1, 4), 3) is None
    assert in_derived_set(w, F1T, Q(1, 5), 3) is not None


# -- inverse and idempotence -----------------------------------------------------------------


def test_dinv_examples():
    assert [w.f for w in script_d_inverse([ONE], F1, Caps(m_cap=4))] == [ONE]
    assert [w.f for w in script_d_inverse([T], F1T, Caps(m_cap=4))] == [T]
    assert script_d_inverse([], F1, Caps(m_cap=4)) == []


@pytest.mark.parametrize("fam", [F1, FnFamily.constants([1, Q(1, 2)]), F1T], ids=["one", "one-half", "one-t"])
def test_idempotence_passes(fam):
    start = time.perf_counter()
    rep = check_idempotence(fam, Caps(m_cap=6, n_cap=6))
    assert rep.passed and not rep.violations
    assert rep.sums_checked > 0 and rep.nested_checked > 0
    assert time.perf_counter() - start < 30


def test_nested_collapse_gives_product_denominator():
    inner = DecompWitness(3, ((1, ONE),), Q(0), Q(1))
    outer = nested_collapse(2, inner)
    assert outer.m == 6
    assert outer.w == AffineFn.const((2 - 1 + inner.w.intercept) / 2)


# -- decompositions ----------------------------------------------------------------------------


def _values(decs):
    return sorted(tuple(sorted(w.intercept for w in d.values)) for d in decs)


def _brute_decompositions(K, m_cap, term_cap):
    """Independent search over multisets of standard values (m-1)/m and 1 summing to K."""
    vals = sorted({Q(m - 1, m) for m in range(2, m_cap + 1)} | {Q(1)})
    out = set()

    def go(start, left, acc):
        if left == 0:
            out.add(tuple(acc))
            return
        if len(acc) == term_cap:
            return
        for i in range(start, len(vals)):
            if vals[i] <= left:
                go(i, left - vals[i], acc + [vals[i]])

    go(0, Q(K), [])
    return sorted(out)


def test_decompositions_of_two():
    got = _values(trivial_decompositions(2, F1, Caps(m_cap=4, term_cap=4)))
    expected = sorted([(1, 1), (Q(1, 2), Q(1, 2), 1), (Q(1, 2),) * 4, (Q(2, 3),) * 3, (Q(1, 2), Q(3, 4), Q(3, 4))])
    assert got == expected == _brute_decompositions(2, 4, 4)


def test_decompositions_of_one_and_small_k():
    assert _values(trivial_decompositions(1, F1, Caps(m_cap=4, term_cap=4))) == [(Q(1, 2), Q(1, 2)), (1,)]
    assert trivial_decompositions(Q(1, 3), F1, Caps(m_cap=4, term_cap=4)) == []


def test_decomposition_perturbation_breaks_the_sum():
    for K in (1, 2, Q(3, 2)):
        for d in trivial_decompositions(K, F1, Caps(m_cap=5, term_cap=4)):
            assert sum((r * w.w(0) for r, w in d.terms), Q(0)) == K
            for j, (r, w) in enumerate(d.terms):
                if w.v == ONE:  # (m + 1 - 1 + 1)/(m + 1) = 1: value unchanged by design
                    continue
                bumped = DecompWitness(w.m + 1, w.terms, w.lo, w.c)
                total = sum((rr * (bumped if k == j else ww).w(0) for k, (rr, ww) in enumerate(d.terms)), Q(0))
                assert total != K


def test_pair_example_through_parametric_atoms():
    """Values (1 - 1/m^2) and 1/m from atoms t and 1 - t/m: only finitely many m keep K = 1 + 1/2 exact."""
    fam = FnFamily(Q(0), Q(1), (T,), (ParametricAtom(const(1), AffineFn(Q(-1), Q(0))),))
    decs = trivial_decompositions(Q(3, 2), fam, Caps(m_cap=3, term_cap=3, param_cap=6))
    assert decs and all(len(d.terms) <= 3 for d in decs)
    assert all(sum((r * w.w(Q(1)) for r, w in d.terms), Q(0)) == Q(3, 2) for d in decs)


# -- surface relation --------------------------------------------------------------------------


def test_surface_relation_examples():
    assert surface_relation_solve([(0, 1), (0, 1)], Q(1, 3)) == 1
    assert surface_relation_solve([(1, 1)], Q(1, 2)) == Q(3, 2)
    small, big, ok = surface_relation_monotone([(1, 1)], [(1, 2)], 1)
    assert (small, big) == (1, Q(1, 2)) and ok


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=Q(1, 6), max_value=1, max_denominator=6), min_size=1, max_size=3))
def test_derived_members_carry_valid_witnesses(vals):
    fam = FnFamily.constants(vals)
    en = derived_set(fam, 1, 4)
    assert const(0) in en
    for w, wit in en.items:
        assert wit.check() and wit.w == w and w.intercept <= 1
        assert in_derived_set(w, fam, 1, 4) is not None
