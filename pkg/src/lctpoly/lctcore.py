"""LCT polytopes from resolution data, thresholds along rays and segments, adjunction coefficients.

A resolution datum is a list of rows ``(a, b)``.  Each row says the pair
stays log canonical along one divisor on a resolution, in the normalised
form ``sum_i a_i x_i + b <= 1``.  Exceptional divisors and strict transforms
of boundary components are both rows; they differ only in their label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from lctpoly.coeffsets import DecompWitness, FnFamily, in_derived_set
from lctpoly.errors import PreconditionError
from lctpoly.exactgeom import HalfSpace, HPolytope, dimension, ray_exit
from lctpoly.exactgeom.linalg import qvec
from lctpoly.linfun import AffineFn, PLFunction, crossing, merge_pieces

KINDS = ("exceptional", "strict")
INF = math.inf


@dataclass(frozen=True)
class DatumRow:
    a: tuple[Fraction, ...]
    b: Fraction
    label: str
    kind: str = "exceptional"

    def __post_init__(self):
        object.__setattr__(self, "a", qvec(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.kind not in KINDS:
            raise PreconditionError(f"row kind must be one of {KINDS}, got {self.kind!r}")
        if any(x < 0 for x in self.a):
            raise PreconditionError(f"row {self.label!r} has a negative entry")
        if not 0 <= self.b <= 1:
            raise PreconditionError(f"row {self.label!r} needs 0 <= b <= 1, got {self.b}")

    def value(self, x: Sequence) -> Fraction:
        return sum((ai * Fraction(xi) for ai, xi in zip(self.a, x)), Fraction(0)) + self.b


@dataclass(frozen=True)
class ResolutionDatum:
    s: int
    rows: tuple[DatumRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.s < 1:
            raise PreconditionError("a datum needs s >= 1 testing divisors")
        for r in self.rows:
            if len(r.a) != self.s:
                raise PreconditionError(f"row {r.label!r} has length {len(r.a)}, expected {self.s}")

    @classmethod
    def of(cls, s: int, rows: Sequence) -> "ResolutionDatum":
        """Build from tuples ``(a, b)``, ``(a, b, label)`` or ``(a, b, label, kind)``."""
        out = []
        for k, r in enumerate(rows):
            a, b = r[0], r[1]
            label = r[2] if len(r) > 2 else f"E{k + 1}"
            kind = r[3] if len(r) > 3 else "exceptional"
            out.append(DatumRow(qvec(a), Fraction(b), label, kind))
        return cls(s, tuple(out))

    def min_positive_entry(self) -> Fraction | None:
        vals = [x for r in self.rows for x in r.a if x > 0]
        return min(vals) if vals else None


def build_lct_polytope(datum: ResolutionDatum) -> HPolytope:
    """``R^s_{>=0}`` cut by ``a . x <= 1 - b`` for every row, in canonical form."""
    s = datum.s
    hs = [HalfSpace(tuple(Fraction(-1 if i == j else 0) for j in range(s)), Fraction(0)) for i in range(s)]
    for r in datum.rows:
        if any(r.a):
            hs.append(HalfSpace(r.a, 1 - r.b))
        elif r.b > 1:  # unreachable after validation, kept for clarity
            return HPolytope.empty(s)
    return HPolytope(s, tuple(hs)).canonical()


@dataclass(frozen=True)
class FacetLabel:
    facet: HalfSpace
    is_lct: bool
    coordinate: int | None  # i when the facet lies in {x_i = 0}


def classify_facets(p: HPolytope) -> list[FacetLabel]:
    """Label each facet; it is an LCT facet unless it lies inside a coordinate hyperplane."""
    if p.is_empty or dimension(p) != p.dim:
        raise PreconditionError("classify_facets needs a full-dimensional polytope")
    if not p.is_bounded:
        raise PreconditionError("classify_facets needs a bounded polytope")
    verts = p.vrep.vertices
    out = []
    for f in p.facets:
        tight = [v for v in verts if f.is_tight(v)]
        coord = next((i for i in range(p.dim) if all(v[i] == 0 for v in tight)), None)
        out.append(FacetLabel(f, coord is None, coord))
    return out


def lct_along_ray(datum: ResolutionDatum, direction: Sequence, base: Sequence | None = None):
    """``sup{t >= 0 : base + t d in P}`` computed row by row; ``math.inf`` when no row bounds it."""
    d = qvec(direction)
    s = datum.s
    if len(d) != s or not any(d):
        raise PreconditionError("direction must be a nonzero vector of length s")
    if any(x < 0 for x in d):
        raise PreconditionError("direction must be non-negative")
    x0 = qvec(base) if base is not None else tuple(Fraction(0) for _ in range(s))
    if len(x0) != s or any(x < 0 for x in x0):
        raise PreconditionError("base must be a non-negative vector of length s")
    best = INF
    for r in datum.rows:
        val = r.value(x0)
        if val > 1:
            raise PreconditionError(f"base violates row {r.label!r}")
        rate = sum((ai * di for ai, di in zip(r.a, d)), Fraction(0))
        if rate > 0:
            t = (1 - val) / rate
            if best is INF or t < best:
                best = t
    return best


def lct_along_ray_polytope(datum: ResolutionDatum, direction: Sequence, base: Sequence | None = None):
    """Same quantity via the built polytope's exit parameter."""
    p = build_lct_polytope(datum)
    x0 = qvec(base) if base is not None else tuple(Fraction(0) for _ in range(datum.s))
    return ray_exit(p, x0, qvec(direction))


# --------------------------------------------------------------------------
# Segments
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SegmentProblem:
    """Threshold of ``tau * D_j`` added to the moving boundary ``sum_i base_i(t) D_i`` for t in [lo, hi]."""

    datum: ResolutionDatum
    base_coeffs: tuple[AffineFn, ...]
    test_column: int
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "base_coeffs", tuple(self.base_coeffs))
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo >= self.hi:
            raise PreconditionError("segment needs lo < hi")
        if len(self.base_coeffs) != self.datum.s:
            raise PreconditionError("one base coefficient per testing divisor is required")
        if not 0 <= self.test_column < self.datum.s:
            raise PreconditionError("test column out of range")
        for i, f in enumerate(self.base_coeffs):
            if f(self.lo) < 0 or f(self.hi) < 0:
                raise PreconditionError(f"base coefficient {i} is negative on the interval")
        if not any(r.a[self.test_column] > 0 for r in self.datum.rows):
            raise PreconditionError("test column has no positive entry: the threshold is +infinity")

    def row_value(self, row: DatumRow) -> AffineFn:
        """``b + sum_i a_i base_i(t)`` as an affine function of t."""
        acc = AffineFn.const(row.b)
        for ai, f in zip(row.a, self.base_coeffs):
            acc = acc + f.scale(ai)
        return acc

    def taus(self) -> list[tuple[str, AffineFn]]:
        """``tau_k(t) = (1 - value_k(t)) / q_k`` for rows with positive test entry q_k."""
        out = []
        for r in self.datum.rows:
            q = r.a[self.test_column]
            if q > 0:
                out.append((r.label, (AffineFn.const(1) - self.row_value(r)).scale(1 / q)))
        return out

    def check_lc(self) -> None:
        for r in self.datum.rows:
            v = self.row_value(r)
            if v(self.lo) > 1 or v(self.hi) > 1:
                raise PreconditionError(f"lc hypothesis fails at tau = 0 on row {r.label!r}")


@dataclass(frozen=True)
class SegmentResult:
    zeta: PLFunction
    places: tuple[tuple[tuple[Fraction, Fraction], frozenset[str]], ...]


def lct_at(prob: SegmentProblem, t) -> Fraction:
    """Single-abscissa threshold: a fresh one-dimensional minimum over rows."""
    t = Fraction(t)
    best = None
    for r in prob.datum.rows:
        q = r.a[prob.test_column]
        if q <= 0:
            continue
        val = r.b + sum((ai * f(t) for ai, f in zip(r.a, prob.base_coeffs)), Fraction(0))
        cand = (1 - val) / q
        if best is None or cand < best:
            best = cand
    return best


def lct_segment(prob: SegmentProblem) -> SegmentResult:
    """Piecewise-linear threshold function on [lo, hi] and the rows attaining it on each piece."""
    prob.check_lc()
    taus = prob.taus()
    lo, hi = prob.lo, prob.hi
    cuts = {lo, hi}
    for (_, f), (_, g) in combinations(taus, 2):
        x = crossing(f, g)
        if x is not None and lo < x < hi:
            cuts.add(x)
    knots = sorted(cuts)
    pieces, sets = [], []
    for x0, x1 in zip(knots, knots[1:]):
        mid = (x0 + x1) / 2
        vals = [(f(mid), label, f) for label, f in taus]
        best = min(v for v, _, _ in vals)
        arg = frozenset(label for v, label, _ in vals if v == best)
        f = next(f for v, _, f in vals if v == best)
        pieces.append(f)
        sets.append(arg)
    # merge subintervals where the minimising affine function does not change
    mk, mp, ms = [knots[0]], [], []
    for i, (f, arg) in enumerate(zip(pieces, sets)):
        if mp and mp[-1] == f and ms[-1] == arg:
            mk[-1] = knots[i + 1]
            continue
        mp.append(f)
        ms.append(arg)
        mk.append(knots[i + 1])
    zeta = merge_pieces(mk, mp)
    places = [((a, b), arg) for a, b, arg in zip(mk, mk[1:], ms)]
    return SegmentResult(zeta, tuple(places))


def local_vertex_function(prob: SegmentProblem, lambda0) -> tuple[AffineFn, Fraction]:
    """First linear piece of the threshold on ``[lo, lambda0]`` and the end of that piece."""
    lambda0 = Fraction(lambda0)
    if not prob.lo < lambda0 <= prob.hi:
        raise PreconditionError("lambda0 must lie in (lo, hi]")
    sub = SegmentProblem(prob.datum, prob.base_coeffs, prob.test_column, prob.lo, lambda0)
    res = lct_segment(sub)
    first = res.zeta.pieces[0]
    return first, res.zeta.knots[1]


def adjunction_coefficient(m: int, mults: Sequence[tuple[int, AffineFn]], lo=0, hi=1) -> tuple[AffineFn, DecompWitness]:
    """``(m - 1 + sum r_i b_i(t)) / m`` together with a membership witness in ``D({b_i}, [lo, hi])``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    v = AffineFn.const(0)
    fns = []
    for r, b in mults:
        if r < 0:
            raise PreconditionError("multiplicities r_i must be non-negative")
        v = v + b.scale(r)
        fns.append(b)
    w = v.shift(m - 1).scale(Fraction(1, m)).on(lo, hi)
    if w(lo) > 1 or w(hi) > 1:
        raise PreconditionError(f"adjunction coefficient {w} exceeds 1 on [{lo}, {hi}]")
    fam = FnFamily(lo, hi, tuple(fns))
    wit = in_derived_set(w, fam, hi, m)
    if wit is None:  # cannot happen: (m, r_i) is itself a witness
        raise AssertionError("adjunction coefficient failed its own membership certificate")
    return w, wit
