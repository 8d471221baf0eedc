"""Seeded random instances for property checks, verifiers and experiments.

Every generator takes an explicit :class:`random.Random`; nothing here reads
ambient randomness.
"""

from __future__ import annotations

import random
from fractions import Fraction

from lctpoly.errors import PreconditionError
from lctpoly.exactgeom import HalfSpace, HPolytope, dimension
from lctpoly.lctcore import DatumRow, ResolutionDatum, SegmentProblem
from lctpoly.linfun import AffineFn
from lctpoly.toricgen import MonomialDivisorSet


def small_q(rng: random.Random, lo: int = -4, hi: int = 4, den: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_polytope(rng: random.Random, dim: int, n_extra: int = 6) -> HPolytope:
    """Box ``[-2, 2]^dim`` cut by random half-spaces with positive bounds.

    The box keeps it bounded and the positive bounds keep the origin interior,
    so the result is full-dimensional.
    """
    hs = []
    for i in range(dim):
        e = tuple(Fraction(int(i == j)) for j in range(dim))
        hs.append(HalfSpace(e, Fraction(2)))
        hs.append(HalfSpace(tuple(-x for x in e), Fraction(2)))
    while len(hs) < 2 * dim + n_extra:
        normal = tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim))
        if not any(normal):
            continue
        hs.append(HalfSpace(normal, Fraction(rng.randint(1, 6), rng.randint(1, 3))))
    return HPolytope(dim, tuple(hs))


def random_lowdim_polytope(rng: random.Random, dim: int) -> HPolytope:
    """A random polytope of dimension below ``dim`` (convex hull of few points in a random flat)."""
    k = rng.randint(0, dim - 1)
    base = tuple(small_q(rng) for _ in range(dim))
    dirs = [tuple(Fraction(rng.randint(-2, 2)) for _ in range(dim)) for _ in range(k)]
    pts = [base]
    for _ in range(k + 2):
        coeffs = [small_q(rng, 0, 3, 2) for _ in dirs]
        pts.append(tuple(b + sum((c * d[i] for c, d in zip(coeffs, dirs)), Fraction(0)) for i, b in enumerate(base)))
    return HPolytope.from_points(pts)


def random_datum(rng: random.Random, s: int, n_rows: int | None = None, max_entry: int = 4) -> ResolutionDatum:
    """Rows with entries in ``{0, 1/3, ..., max_entry}``, every column seen by some row, ``b`` in [0, 1)."""
    n_rows = n_rows if n_rows is not None else rng.randint(s, s + 4)
    rows = []
    for i in range(s):  # one strict-transform row per column keeps the polytope bounded
        a = tuple(Fraction(rng.randint(1, 3 * max_entry), 3) if j == i else Fraction(0) for j in range(s))
        rows.append(DatumRow(a, Fraction(rng.randint(0, 2), 4), f"C{i + 1}", "strict"))
    for k in range(n_rows):
        a = tuple(Fraction(rng.randint(0, 3 * max_entry), 3) for _ in range(s))
        if not any(a):
            a = tuple(Fraction(1) for _ in range(s))
        rows.append(DatumRow(a, Fraction(rng.randint(0, 3), 4), f"E{k + 1}", "exceptional"))
    return ResolutionDatum(s, tuple(rows))


def random_direction(rng: random.Random, s: int, allow_zero_entries: bool = True) -> tuple[Fraction, ...]:
    while True:
        lo = 0 if allow_zero_entries else 1
        d = tuple(Fraction(rng.randint(lo, 5), rng.randint(1, 3)) for _ in range(s))
        if any(d):
            return d


def random_segment_problem(rng: random.Random) -> SegmentProblem:
    """Random datum plus base coefficients that keep every row value <= 1 on the interval."""
    s = rng.randint(2, 4)
    datum = random_datum(rng, s)
    j = rng.randrange(s)
    lo = Fraction(rng.randint(0, 2), 2)
    hi = lo + Fraction(rng.randint(1, 4), 2)
    while True:
        base = []
        for i in range(s):
            v0, v1 = small_q(rng, 0, 3, 4), small_q(rng, 0, 3, 4)
            slope = (v1 - v0) / (hi - lo)
            base.append(AffineFn(slope, v0 - slope * lo))
        # shrink until the lc hypothesis holds at both ends
        for _ in range(12):
            try:
                prob = SegmentProblem(datum, tuple(base), j, lo, hi)
                prob.check_lc()
                return prob
            except PreconditionError:
                base = [f.scale(Fraction(1, 2)) for f in base]


def random_monomial(rng: random.Random, n_max: int = 3, s_max: int = 3, e_max: int = 4) -> MonomialDivisorSet:
    n = rng.randint(1, n_max)
    s = rng.randint(1, s_max)
    divs = []
    while len(divs) < s:
        a = tuple(rng.randint(0, e_max) for _ in range(n))
        if any(a):
            divs.append(a)
    return MonomialDivisorSet(n, tuple(divs))


def random_decreasing_chain(rng: random.Random, s: int, length: int | None = None) -> tuple[list[HPolytope], HPolytope]:
    """``T_i = conv(T, o + S/i)`` for a lower-dimensional T around o and a full simplex S containing 0.

    Shrinking a convex set that contains 0 nests it, so the chain decreases.
    """
    length = length if length is not None else rng.randint(1, 4)
    while True:
        T = random_lowdim_polytope(rng, s)
        if not T.is_empty and dimension(T) < s:
            break
    verts = T.vrep.vertices
    o = tuple(sum(v[i] for v in verts) / len(verts) for i in range(s))
    while True:
        simplex = [tuple(small_q(rng, -3, 3, 2) for _ in range(s)) for _ in range(s + 1)]
        S = HPolytope.from_points(simplex)
        if dimension(S) == s and S.contains_point(tuple(Fraction(0) for _ in range(s))):
            break
    Ts = []
    for i in range(1, length + 1):
        pts = list(verts) + [tuple(oi + x / i for oi, x in zip(o, v)) for v in simplex]
        Ts.append(HPolytope.from_points(pts))
    return Ts, T


def random_boundary_vertex(rng: random.Random, P: HPolytope) -> tuple[Fraction, ...]:
    verts = P.vrep.vertices
    return verts[rng.randrange(len(verts))]
