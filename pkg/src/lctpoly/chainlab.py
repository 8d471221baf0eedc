"""Chains of polytopes indexed by m = 1, 2, ..., whose data is affine in 1/m.

Each row reads ``(alpha + beta/m) . x <= bound_alpha + bound_beta/m``.
Multiplying through by m makes every entry a degree-one polynomial in m, so
exit values along lines are Moebius functions of m and vertex coordinates
are rational functions of m.  Questions of the form "what happens for all
large m" are then settled exactly by eventual signs of polynomials.

The module also hosts the two convex-geometry verifiers: the escaping-ray
construction for decreasing chains and the facet-cone check for LCT
polytopes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from lctpoly import poly
from lctpoly.errors import PreconditionError
from lctpoly.exactgeom import (
    HalfSpace,
    HPolytope,
    cone_from,
    contains,
    dimension,
    hausdorff_distance,
    ray_exit,
)
from lctpoly.exactgeom.linalg import dot, independent_subset, nullspace, primitive_int, qvec, solve
from lctpoly.lctcore import ResolutionDatum, build_lct_polytope

INF = math.inf


# --------------------------------------------------------------------------
# Chains
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainRow:
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    bound_alpha: Fraction
    bound_beta: Fraction = Fraction(0)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "alpha", qvec(self.alpha))
        object.__setattr__(self, "beta", qvec(self.beta) if self.beta else tuple(Fraction(0) for _ in self.alpha))
        object.__setattr__(self, "bound_alpha", Fraction(self.bound_alpha))
        object.__setattr__(self, "bound_beta", Fraction(self.bound_beta))
        if len(self.alpha) != len(self.beta):
            raise PreconditionError("alpha and beta must have equal length")

    @property
    def moving(self) -> bool:
        return any(self.beta) or self.bound_beta != 0

    def at(self, m) -> tuple[tuple[Fraction, ...], Fraction]:
        """Normal and bound at index m (``math.inf`` gives the limit)."""
        if m is INF:
            return self.alpha, self.bound_alpha
        inv = Fraction(1, m)
        return tuple(a + b * inv for a, b in zip(self.alpha, self.beta)), self.bound_alpha + self.bound_beta * inv

    def scaled_polys(self) -> tuple[list[poly.Poly], poly.Poly]:
        """Row multiplied by m: entries ``alpha m + beta`` and bound ``bound_alpha m + bound_beta``."""
        return ([poly.linear(b, a) for a, b in zip(self.alpha, self.beta)],
                poly.linear(self.bound_beta, self.bound_alpha))


@dataclass(frozen=True)
class ParametricChain:
    s: int
    rows: tuple[ChainRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.s < 1:
            raise PreconditionError("ambient dimension must be >= 1")
        for r in self.rows:
            if len(r.alpha) != self.s:
                raise PreconditionError("row length does not match the ambient dimension")

    @classmethod
    def of(cls, s: int, rows: Sequence) -> "ParametricChain":
        """Rows as ``(alpha, beta, bound_alpha, bound_beta)``; beta may be ``None`` for fixed rows."""
        out = []
        for k, r in enumerate(rows):
            alpha, beta, ba = r[0], r[1], r[2]
            bb = r[3] if len(r) > 3 else 0
            beta = beta if beta is not None else (0,) * len(alpha)
            out.append(ChainRow(qvec(alpha), qvec(beta), Fraction(ba), Fraction(bb), f"r{k + 1}"))
        return cls(s, tuple(out))

    def halfspaces(self, m) -> list[HalfSpace]:
        hs = []
        for r in self.rows:
            normal, bound = r.at(m)
            if any(normal):
                hs.append(HalfSpace(normal, bound))
            elif bound < 0:
                raise PreconditionError(f"row {r.label} is infeasible at m = {m}")
        return hs

    def instantiate(self, m) -> HPolytope:
        if m is not INF and (not isinstance(m, int) or m < 1):
            raise PreconditionError("m must be a positive integer or math.inf")
        p = HPolytope(self.s, tuple(self.halfspaces(m))).canonical()
        if p.is_empty:
            raise PreconditionError(f"chain is infeasible at m = {m}")
        if not p.is_bounded:
            raise PreconditionError(f"chain is unbounded at m = {m}")
        return p

    def limit(self) -> HPolytope:
        return self.instantiate(INF)


def corner_cut_chain() -> ParametricChain:
    """``{x >= 0, x2 <= 2, x1 + x2 <= 3, x1 <= 3, x1 + 2 x2 <= 5 - 1/m}``."""
    return ParametricChain.of(2, [
        ((-1, 0), None, 0),
        ((0, -1), None, 0),
        ((0, 1), None, 2),
        ((1, 1), None, 3),
        ((1, 0), None, 3),
        ((1, 2), None, 5, -1),
    ])


def product_chain(c1: ParametricChain, c2: ParametricChain) -> ParametricChain:
    """``P_m x Q_m`` in the concatenated coordinates."""
    z1, z2 = (Fraction(0),) * c1.s, (Fraction(0),) * c2.s
    rows = [ChainRow(r.alpha + z2, r.beta + z2, r.bound_alpha, r.bound_beta, f"L{r.label}") for r in c1.rows]
    rows += [ChainRow(z1 + r.alpha, z1 + r.beta, r.bound_alpha, r.bound_beta, f"R{r.label}") for r in c2.rows]
    return ParametricChain(c1.s + c2.s, tuple(rows))


@dataclass(frozen=True)
class IncreasingReport:
    increasing: bool
    strict: bool
    first_violation: int | None  # m with P_m not inside P_{m+1}
    first_non_strict: int | None  # m with P_m == P_{m+1}
    separating_vertices: tuple = ()


def is_increasing(chain: ParametricChain, m_lo: int = 1, m_hi: int = 50) -> IncreasingReport:
    """Check ``P_m <= P_{m+1}`` for consecutive m in ``[m_lo, m_hi]``; strictness via a vertex of P_{m+1} outside P_m."""
    if m_hi <= m_lo:
        raise PreconditionError("range must contain at least two indices")
    prev = chain.instantiate(m_lo)
    first_bad = first_flat = None
    seps = []
    for m in range(m_lo, m_hi):
        cur = chain.instantiate(m + 1)
        if first_bad is None and not contains(cur, prev):
            first_bad = m
        sep = next((v for v in cur.vrep.vertices if not prev.contains_point(v)), None)
        if sep is None and first_flat is None:
            first_flat = m
        seps.append(sep)
        prev = cur
    return IncreasingReport(first_bad is None, first_bad is None and first_flat is None, first_bad, first_flat, tuple(seps))


# --------------------------------------------------------------------------
# Lines
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LineQuery:
    """``base + t * direction``; the direction is rescaled by a positive factor to coprime integers."""

    base: tuple[Fraction, ...]
    direction: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "base", qvec(self.base))
        d = qvec(self.direction)
        if not any(d):
            raise PreconditionError("direction must be nonzero")
        object.__setattr__(self, "direction", tuple(Fraction(x) for x in primitive_int(d)))


@dataclass(frozen=True)
class Moebius:
    """``(b1 m + b0) / (a1 m + a0)``."""

    b1: Fraction
    b0: Fraction
    a1: Fraction
    a0: Fraction

    def __call__(self, m) -> Fraction:
        return (self.b1 * m + self.b0) / (self.a1 * m + self.a0)

    @property
    def is_constant(self) -> bool:
        return self.b1 * self.a0 - self.b0 * self.a1 == 0

    @property
    def limit(self) -> Fraction:
        return self.b1 / self.a1 if self.a1 else self.b0 / self.a0

    def increment_sign(self) -> int:
        """Eventual sign of ``f(m+1) - f(m)``: the sign of ``b1 a0 - b0 a1`` (denominator eventually of one sign)."""
        d = self.b1 * self.a0 - self.b0 * self.a1
        return (d > 0) - (d < 0)

    def __str__(self) -> str:
        if self.a1 and not self.a0:
            # (b1 m + b0)/(a1 m) = b1/a1 + (b0/a1)/m
            c, k = self.b1 / self.a1, self.b0 / self.a1
            if k == 0:
                return str(c)
            frac = f"{abs(k).numerator}/m" if abs(k).denominator == 1 else f"{abs(k).numerator}/({abs(k).denominator}m)"
            return f"{c} - {frac}" if k < 0 else f"{c} + {frac}"
        return f"({poly.fmt(poly.linear(self.b0, self.b1))})/({poly.fmt(poly.linear(self.a0, self.a1))})"


@dataclass(frozen=True)
class LineVerdict:
    kind: str  # "stabilizes" | "never" | "non-monotone"
    m0: int | None
    value: object  # Fraction or math.inf when stabilizing
    exit_formula: Moebius | None
    binding_row: str | None
    threshold: int  # beyond this m the eventual analysis is exact

    def exit_value(self, m):
        return self.exit_formula(m) if self.exit_formula is not None else self.value


def _row_line_polys(row: ChainRow, q: LineQuery) -> tuple[poly.Poly, poly.Poly]:
    """``A(m)``, ``B(m)`` with the row reading ``t A(m) <= B(m)`` after multiplying by m."""
    ent, bnd = row.scaled_polys()
    rate = ()
    slack = bnd
    for e, d, b in zip(ent, q.direction, q.base):
        rate = poly.add(rate, poly.scale(e, d))
        slack = poly.sub(slack, poly.scale(e, b))
    return rate, slack


def exit_value(chain: ParametricChain, q: LineQuery, m):
    """``sup{t >= 0 : base + t d in P_m}`` evaluated row by row; ``None`` if the base is outside P_m."""
    best = INF
    for r in chain.rows:
        normal, bound = r.at(m)
        slack = bound - dot(normal, q.base)
        if slack < 0:
            return None
        rate = dot(normal, q.direction)
        if rate > 0:
            t = slack / rate
            if best is INF or t < best:
                best = t
    return best


def line_stabilization(chain: ParametricChain, q: LineQuery) -> LineVerdict:
    """Decide whether the exit value along the line is eventually constant in m, exactly."""
    if len(q.base) != chain.s:
        raise PreconditionError("line base has the wrong dimension")
    data = [(r, *_row_line_polys(r, q)) for r in chain.rows]
    threshold = 1
    for r, a, b in data:
        threshold = max(threshold, poly.sign_threshold(a), poly.sign_threshold(b))
        if poly.eventual_sign(b) < 0:
            raise PreconditionError(f"line base is outside P_m for all large m (row {r.label})")
    bounding = [(r, a, b) for r, a, b in data if poly.eventual_sign(a) > 0]

    def fm(a, b):
        a = a + (Fraction(0),) * (2 - len(a))
        b = b + (Fraction(0),) * (2 - len(b))
        return Moebius(b[1], b[0], a[1], a[0])

    if not bounding:
        winner = None
    else:
        # eventual minimum of b_k/a_k: compare b_k a_l - b_l a_k
        winner = bounding[0]
        for cand in bounding[1:]:
            diff = poly.sub(poly.mul(cand[2], winner[1]), poly.mul(winner[2], cand[1]))
            if poly.eventual_sign(diff) < 0:
                winner = cand
        for cand in bounding:
            diff = poly.sub(poly.mul(cand[2], winner[1]), poly.mul(winner[2], cand[1]))
            threshold = max(threshold, poly.sign_threshold(diff))

    values = {m: exit_value(chain, q, m) for m in range(1, threshold + 1)}
    if winner is None:
        target, formula, label = INF, None, None
    else:
        formula = fm(winner[1], winner[2])
        label = winner[0].label
        if formula.increment_sign() < 0:
            return LineVerdict("non-monotone", None, None, formula, label, threshold)
        if not formula.is_constant:
            return LineVerdict("never", None, None, formula, label, threshold)
        target = formula(threshold)
    m0 = threshold
    while m0 > 1 and values[m0 - 1] == target:
        m0 -= 1
    return LineVerdict("stabilizes", m0, target, formula, label, threshold)


# --------------------------------------------------------------------------
# Unstable points
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class UnstableCandidate:
    point: tuple[Fraction, ...]
    certificate: str  # "moving-vertex" | "rotating-facet"
    rows: tuple[str, ...]
    box_entry: tuple[tuple[int, int], ...] = ()  # (k, m_k): x(m) in the 1/k box for all m >= m_k


def _eventual_vertices(chain: ParametricChain):
    """Vertex families ``x(m) = N(m)/D(m)`` that are vertices of P_m for all large m."""
    s = chain.s
    scaled = [r.scaled_polys() for r in chain.rows]
    out = []
    threshold = 1
    for idx in combinations(range(len(chain.rows)), s):
        mat = [scaled[i][0] for i in idx]
        rhs = [scaled[i][1] for i in idx]
        d = poly.det(mat)
        if not d:
            continue
        nums = []
        for j in range(s):
            mj = [row[:j] + [b] + row[j + 1:] for row, b in zip(mat, rhs)]
            nums.append(poly.det(mj))
        if any(poly.degree(n) > poly.degree(d) for n in nums):
            continue
        ok = True
        local_thr = poly.sign_threshold(d)
        sd = poly.eventual_sign(d)
        for ent, bnd in scaled:
            sl = poly.mul(bnd, d)
            for e, n in zip(ent, nums):
                sl = poly.sub(sl, poly.mul(e, n))
            if poly.eventual_sign(sl) * sd < 0:
                ok = False
                break
            local_thr = max(local_thr, poly.sign_threshold(sl))
        if not ok:
            continue
        deg = poly.degree(d)
        lim = tuple((n[deg] if len(n) > deg else Fraction(0)) / d[deg] for n in nums)
        out.append((idx, d, tuple(nums), lim))
        threshold = max(threshold, local_thr)
    return out, threshold


def _tangent_cone(chain: ParametricChain, x: Sequence[Fraction], m: int) -> HPolytope:
    hs = []
    for r in chain.rows:
        normal, bound = r.at(m)
        if any(normal) and dot(normal, x) == bound:
            hs.append(HalfSpace(normal, Fraction(0)))
    return HPolytope(chain.s, tuple(hs)).canonical()


def _box_entry(d: poly.Poly, nums: Sequence[poly.Poly], lim: Sequence[Fraction], k: int) -> int:
    """Least m_k with ``|x_j(m) - lim_j| < 1/k`` for every j and every m >= m_k."""
    sd = poly.eventual_sign(d)
    m_k = poly.sign_threshold(d)
    for n, l in zip(nums, lim):
        dev = poly.sub(n, poly.scale(d, l))  # x_j(m) - lim_j = dev/d
        for sgn in (1, -1):
            # k * sgn * dev < |d| = sd * d once d has its eventual sign
            expr = poly.sub(poly.scale(d, sd), poly.scale(dev, k * sgn))
            m_k = max(m_k, poly.sign_threshold(expr))
    return m_k


def unstable_points(chain: ParametricChain, resolution: Sequence[int] = (2, 4, 8)) -> list[UnstableCandidate]:
    """Exact unstable-point candidates.

    * moving-vertex: a vertex family x(m) that is not eventually constant;
      its limit is unstable because x(m) enters every box around it and takes
      infinitely many values.
    * rotating-facet: a vertex fixed for large m at which the tangent cone of
      P_m keeps changing.
    """
    fams, threshold = _eventual_vertices(chain)
    found: dict[tuple, UnstableCandidate] = {}
    fixed_points = set()
    for idx, d, nums, lim in fams:
        labels = tuple(chain.rows[i].label for i in idx)
        constant = all(not poly.sub(n, poly.scale(d, l)) for n, l in zip(nums, lim))
        if constant:
            fixed_points.add(lim)
            continue
        if lim not in found:
            entry = tuple((k, _box_entry(d, nums, lim, k)) for k in resolution)
            found[lim] = UnstableCandidate(lim, "moving-vertex", labels, entry)
    m1 = threshold + 1
    for x in sorted(fixed_points):
        if x in found:
            continue
        c1, c2 = _tangent_cone(chain, x, m1), _tangent_cone(chain, x, m1 + 1)
        if c1 != c2:
            rows = tuple(r.label for r in chain.rows if r.moving and dot(r.at(m1)[0], x) == r.at(m1)[1])
            found[x] = UnstableCandidate(x, "rotating-facet", rows)
    return [found[k] for k in sorted(found)]


def count_distinct_local_sections(chain: ParametricChain, x: Sequence, k: int, m_max: int) -> int:
    """Number of distinct sets ``P_m cap (x + [-1/k, 1/k]^s)`` over ``m <= m_max``."""
    x = qvec(x)
    r = Fraction(1, k)
    box = HPolytope.box([xi - r for xi in x], [xi + r for xi in x])
    seen = set()
    for m in range(1, m_max + 1):
        p = HPolytope(chain.s, tuple(chain.halfspaces(m)) + box.halfspaces).canonical()
        seen.add(p.halfspaces)
    return len(seen)


def hausdorff_to_limit(chain: ParametricChain, m: int) -> Fraction:
    """Squared Hausdorff distance between P_m and the limit polytope."""
    return hausdorff_distance(chain.instantiate(m), chain.limit())


@dataclass
class UnionReport:
    hypothesis_holds: bool
    rays_checked: int
    witness_ray: tuple | None = None
    witness_verdict: LineVerdict | None = None
    boundary_points_checked: int = 0
    all_in_some_member: bool = True
    missing: list = field(default_factory=list)


def union_closedness_check(chain: ParametricChain, sample_rays: int, seed: int) -> UnionReport:
    """Sample rays from the origin (axes, candidate directions, then random).

    If every sampled ray stabilizes, the limit boundary point along it must lie
    in the member where stabilization starts; that containment is checked.
    """
    s = chain.s
    origin = tuple(Fraction(0) for _ in range(s))
    rays: list[tuple[Fraction, ...]] = []

    def push(d):
        d = tuple(Fraction(v) for v in primitive_int(d))
        if any(d) and d not in rays:
            rays.append(d)

    for i in range(s):
        push(tuple(1 if i == j else 0 for j in range(s)))
    for cand in unstable_points(chain):
        if any(cand.point):
            push(cand.point)
    rng = random.Random(seed)
    while len(rays) < sample_rays + s:
        push(tuple(rng.randint(0, 6) for _ in range(s)))
    report = UnionReport(True, 0)
    points = []
    for d in rays:
        q = LineQuery(origin, d)
        v = line_stabilization(chain, q)
        report.rays_checked += 1
        if v.kind != "stabilizes":
            report.hypothesis_holds = False
            report.witness_ray = d
            report.witness_verdict = v
            return report
        points.append((d, v))
    for d, v in points:
        if v.value is INF:
            continue
        pt = tuple(v.value * x for x in d)
        report.boundary_points_checked += 1
        if not chain.instantiate(v.m0).contains_point(pt):
            report.all_in_some_member = False
            report.missing.append(pt)
    return report


# --------------------------------------------------------------------------
# Escaping ray for a decreasing chain around a lower-dimensional convex set
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EscapingRay:
    alpha: tuple[Fraction, ...]
    e: tuple[Fraction, ...]
    hyperplane: tuple[Fraction, ...]  # h with H = {h . y = 1} in the quotient coordinates
    z: tuple[Fraction, ...]
    witnesses: tuple[tuple[Fraction, ...], ...]  # q_i on the ray, in T_i, not in T


def _rand_q(rng: random.Random, lo: int = -9, hi: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 5))


def escaping_ray(Ts: Sequence[HPolytope], T: HPolytope, seed: int = 0) -> EscapingRay:
    """Point alpha in T and direction e with ``R cap T_i`` not inside T for every i.

    Follows the quotient construction: coordinates split along the affine hull
    of T, the chain is projected to the complement, a generic affine
    hyperplane cuts the cone over the last projected member, and the ray
    through the resulting point z is pulled back by the convex combination
    ``eps/(1+eps) (y_i, c_i z) + 1/(1+eps) (-eps y_i, 0)``.  Every witness is
    verified exactly.
    """
    if not Ts:
        raise PreconditionError("need at least one polytope T_1")
    s = Ts[0].dim
    for P in Ts:
        if P.dim != s or P.is_empty or not P.is_bounded or dimension(P) != s:
            raise PreconditionError("every T_i must be a full-dimensional compact polytope")
    for a, b in zip(Ts, Ts[1:]):
        if not contains(a, b):
            raise PreconditionError("the sequence T_i is not decreasing")
    if T.dim != s or T.is_empty or not T.is_bounded:
        raise PreconditionError("T must be a nonempty compact convex set in the same space")
    r = dimension(T)
    if r >= s:
        raise PreconditionError("T must have dimension below the ambient dimension")
    if not contains(Ts[-1], T):
        raise PreconditionError("T must lie in every T_i")

    tv = T.vrep.vertices
    o = tuple(sum(v[i] for v in tv) / len(tv) for i in range(s))
    diffs = [tuple(a - b for a, b in zip(v, o)) for v in tv]
    V = [diffs[i] for i in independent_subset(diffs)] if r else []
    U = nullspace(V, s) if V else [tuple(Fraction(int(i == j)) for j in range(s)) for i in range(s)]
    basis = V + U  # columns of the change of coordinates

    def split(x):
        """Coordinates (y, w) of x - o in the basis V + U."""
        d = tuple(a - b for a, b in zip(x, o))
        cols = [[basis[k][i] for k in range(s)] for i in range(s)]
        c = solve(cols, d)
        return c[:r], c[r:]

    last = Ts[-1].vrep.vertices
    proj = [split(v)[1] for v in last]
    rng = random.Random(seed)
    while True:
        h = tuple(_rand_q(rng) for _ in range(s - r))
        if not any(h):
            continue
        generic = all(dot(h, tuple(a - b for a, b in zip(p1, p2))) != 0
                      for p1, p2 in combinations(proj, 2) if p1 != p2)
        generic = generic and all(dot(h, p) != 0 for p in proj if any(p))
        if not generic:
            continue
        pos = [(v, p) for v, p in zip(last, proj) if dot(h, p) > 0]
        if pos:
            break
    v, pv = pos[0]
    c = dot(h, pv)
    z = tuple(x / c for x in pv)  # on H, and c z = pi(v) lies in pi(T_N)
    y, _ = split(v)
    e_full = tuple(sum(zk * U[k][i] for k, zk in enumerate(z)) for i in range(s))
    e = tuple(Fraction(x) for x in primitive_int(e_full))
    witnesses = []
    for P in Ts:
        vy = tuple(sum(yk * V[k][i] for k, yk in enumerate(y)) for i in range(s)) if r else tuple(Fraction(0) for _ in range(s))
        if any(vy):
            eps = ray_exit(T, o, tuple(-x for x in vy))
            eps = Fraction(1) if eps is INF else min(eps, Fraction(1))
        else:
            eps = Fraction(1)
        back = tuple(oi - eps * x for oi, x in zip(o, vy))
        qi = tuple(eps / (1 + eps) * a + 1 / (1 + eps) * b for a, b in zip(v, back))
        # exact postcondition: q_i = o + lam e with lam > 0, q_i in T_i, q_i not in T
        step = tuple(a - b for a, b in zip(qi, o))
        k = next(i for i, x in enumerate(e) if x != 0)
        lam = step[k] / e[k]
        if lam <= 0 or any(st != lam * ei for st, ei in zip(step, e)):
            raise AssertionError("witness is not on the constructed ray")
        if not P.contains_point(qi) or T.contains_point(qi):
            raise AssertionError("witness fails the escaping condition")
        witnesses.append(qi)
    return EscapingRay(o, e, h, z, tuple(witnesses))


def verify_escaping_ray(Ts: Sequence[HPolytope], T: HPolytope, ray: EscapingRay) -> bool:
    """Independent check: for every i some point of the ray lies in T_i but not in T."""
    for P in Ts:
        t_exit = ray_exit(P, ray.alpha, ray.e)
        t_in = ray_exit(T, ray.alpha, ray.e) if T.contains_point(ray.alpha) else None
        if t_in is None or t_exit is INF or t_exit <= t_in:
            return False
    return True


# --------------------------------------------------------------------------
# Facet cones of LCT polytopes
# --------------------------------------------------------------------------


@dataclass
class FacetConeReport:
    facets: list[HalfSpace]
    hypothesis_dim: int
    hypothesis_holds: bool
    equal: bool | None
    counterexample: tuple | None = None


def _interior_point(p: HPolytope) -> tuple[Fraction, ...]:
    v = p.vrep
    c = tuple(sum(x[i] for x in v.vertices) / len(v.vertices) for i in range(p.dim))
    for r in v.rays:
        c = tuple(a + b for a, b in zip(c, r))
    return c


def _subtract_cover(piece: HPolytope, cutter: HPolytope) -> list[HPolytope]:
    """Full-dimensional pieces of the closure of ``piece minus cutter``."""
    out = []
    prior: list[HalfSpace] = []
    hs = list(cutter.facets) + [HalfSpace(a, c) for a, c in cutter.equalities]
    for h in hs:
        flipped = HalfSpace(tuple(-x for x in h.normal), -h.bound)
        cand = HPolytope(piece.dim, piece.halfspaces + (flipped,) + tuple(prior)).canonical()
        if not cand.is_empty and dimension(cand) == piece.dim:
            out.append(cand)
        prior.append(h)
    return out


def facet_cone_check(datum: ResolutionDatum, beta: Sequence) -> FacetConeReport:
    """Compare the cone over the projected facets through beta with the cone over the projected polytope."""
    if datum.s < 2:
        raise PreconditionError("the facet-cone check needs s >= 2")
    return facet_cone_check_polytope(build_lct_polytope(datum), beta)


def facet_cone_check_polytope(P: HPolytope, beta: Sequence) -> FacetConeReport:
    """Same comparison for an arbitrary full-dimensional polytope (no sign condition assumed).

    Facets through beta that lie in ``{x_s = 0}`` are left out; pi forgets x_s.
    """
    s = P.dim
    if s < 2:
        raise PreconditionError("the facet-cone check needs s >= 2")
    if P.is_empty or dimension(P) != s or not P.is_bounded:
        raise PreconditionError("the LCT polytope must be full-dimensional and bounded")
    beta = qvec(beta)
    if not P.contains_point(beta) or not any(h.is_tight(beta) for h in P.facets):
        raise PreconditionError("beta must lie on the boundary of the polytope")
    verts = P.vrep.vertices

    def pi(x):
        return x[:-1]

    apex = pi(beta)
    chosen, cones = [], []
    for f in P.facets:
        tight = [v for v in verts if f.is_tight(v)]
        if not f.is_tight(beta) or all(v[-1] == 0 for v in tight):
            continue
        chosen.append(f)
        cones.append(cone_from(apex, [pi(v) for v in tight]))
    hyp_dim = max((dimension(c) for c in cones), default=-1)
    report = FacetConeReport(chosen, hyp_dim, hyp_dim == s - 1, None)
    if not report.hypothesis_holds:
        return report
    whole = cone_from(apex, [pi(v) for v in verts])
    for c in cones:
        if not contains(whole, c):
            report.equal = False
            report.counterexample = _interior_point(c)
            return report
    pieces = [whole] if dimension(whole) == s - 1 else []
    for c in cones:
        if dimension(c) < s - 1:
            continue
        nxt = []
        for p in pieces:
            nxt += _subtract_cover(p, c)
        pieces = nxt
        if not pieces:
            break
    report.equal = not pieces
    if pieces:
        report.counterexample = _interior_point(pieces[0])
    return report
