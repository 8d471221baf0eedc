"""Exact convex polyhedra in H-representation with a lazily cached V-representation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import inf
from typing import Iterable, Sequence

from lctpoly.errors import PreconditionError
from lctpoly.exactgeom import dd
from lctpoly.exactgeom.linalg import Vector, dot, primitive_int, qvec, rank, rref, solve

MAX_DIM = 6  # soft limit; nothing enforces it, double description just gets slow


@dataclass(frozen=True, order=True)
class HalfSpace:
    """The closed half-space ``normal . x <= bound``."""

    normal: Vector
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", qvec(self.normal))
        object.__setattr__(self, "bound", Fraction(self.bound))
        if not any(self.normal):
            raise PreconditionError("half-space normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x)

    def contains(self, x: Sequence) -> bool:
        return dot(self.normal, x) <= self.bound

    def is_tight(self, x: Sequence) -> bool:
        return dot(self.normal, x) == self.bound

    def canonical(self) -> "HalfSpace":
        ints = primitive_int(self.normal + (self.bound,))
        return HalfSpace(tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1]))


@dataclass(frozen=True)
class VRep:
    """Vertices (minimal-face points when lines exist), extreme rays and lineality basis."""

    vertices: tuple[Vector, ...]
    rays: tuple[Vector, ...] = ()
    lines: tuple[Vector, ...] = ()

    @property
    def bounded(self) -> bool:
        return not self.rays and not self.lines


def _empty_marker(dim: int) -> tuple[HalfSpace, ...]:
    e1 = tuple(Fraction(int(i == 0)) for i in range(dim))
    return (HalfSpace(e1, Fraction(-1)), HalfSpace(tuple(-x for x in e1), Fraction(0)))


def _line_sign(v: Vector) -> Vector:
    first = next(x for x in v if x != 0)
    return v if first > 0 else tuple(-x for x in v)


def h_to_v(halfspaces: Sequence[HalfSpace], dim: int) -> VRep | None:
    """Exact V-representation of ``{x : h.normal . x <= h.bound}``; ``None`` when empty."""
    rows = [primitive_int(h.normal + (-h.bound,)) for h in halfspaces]
    rows.append(tuple([0] * dim + [-1]))
    rays, lines = dd.cone_generators(rows, dim + 1)
    verts, out_rays = [], []
    for r in rays:
        if r[-1] > 0:
            verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
        else:
            out_rays.append(tuple(Fraction(x) for x in r[:-1]))
    if not verts:
        return None
    out_lines = [_line_sign(tuple(Fraction(x) for x in l[:-1])) for l in lines]
    return VRep(tuple(sorted(set(verts))), tuple(sorted(set(out_rays))), tuple(sorted(set(out_lines))))


def hrep_from_vrep(vrep: VRep, dim: int) -> tuple[list[tuple[Vector, Fraction]], list[tuple[Vector, Fraction]]]:
    """Minimal H-description of conv(vertices) + cone(rays) + span(lines).

    Returns ``(equalities, facets)``: equalities are the RREF rows ``a . x = c``
    of the affine hull, facets are reduced modulo those pivots, so the pair is
    a canonical form of the set.
    """
    gens = [primitive_int(v + (Fraction(1),)) for v in vrep.vertices]
    gens += [primitive_int(r + (Fraction(0),)) for r in vrep.rays]
    for l in vrep.lines:
        g = primitive_int(l + (Fraction(0),))
        gens.append(g)
        gens.append(tuple(-x for x in g))
    rays, lines = dd.cone_generators(gens, dim + 1)

    eq_rows = [tuple(Fraction(x) for x in l[:-1]) + (Fraction(-l[-1]),) for l in lines]
    red, piv = rref(eq_rows)
    equalities = [(tuple(r[:-1]), r[-1]) for r in red]

    facets = []
    for r in rays:
        a = [Fraction(x) for x in r[:-1]]
        c = Fraction(-r[-1])
        for (ea, ec), p in zip(equalities, piv):
            f = a[p]
            if f:
                a = [x - f * y for x, y in zip(a, ea)]
                c -= f * ec
        if any(a):
            facets.append((tuple(a), c))
    return equalities, facets


def _halfspaces_from(equalities, facets) -> tuple[HalfSpace, ...]:
    out = set()
    for a, c in equalities:
        out.add(HalfSpace(a, c).canonical())
        out.add(HalfSpace(tuple(-x for x in a), -c).canonical())
    for a, c in facets:
        out.add(HalfSpace(a, c).canonical())
    return tuple(sorted(out))


@dataclass(frozen=True)
class HPolytope:
    """A polyhedron ``{x in Q^dim : h.normal . x <= h.bound for h in halfspaces}``.

    An empty constraint list is the whole space.  Use :meth:`canonical` to get
    the redundancy-free normal form on which ``==`` is set equality.
    """

    dim: int
    halfspaces: tuple[HalfSpace, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        if self.dim < 1:
            raise PreconditionError("ambient dimension must be >= 1")
        for h in self.halfspaces:
            if h.dim != self.dim:
                raise PreconditionError(f"half-space of dimension {h.dim} in a polytope of dimension {self.dim}")

    @classmethod
    def from_inequalities(cls, dim: int, rows: Iterable[Sequence]) -> "HPolytope":
        """Build from rows ``[a_1, ..., a_s, c]`` meaning ``a . x <= c``."""
        hs = []
        for row in rows:
            row = qvec(row)
            if len(row) != dim + 1:
                raise PreconditionError(f"inequality row {row} does not have {dim + 1} entries")
            if any(row[:-1]):
                hs.append(HalfSpace(row[:-1], row[-1]))
            elif row[-1] < 0:
                return cls.empty(dim)
        return cls(dim, tuple(hs))

    @classmethod
    def from_vrep(cls, vrep: VRep | None, dim: int) -> "HPolytope":
        if vrep is None or not vrep.vertices:
            return cls.empty(dim)
        eqs, facets = hrep_from_vrep(vrep, dim)
        p = cls(dim, _halfspaces_from(eqs, facets))
        p.__dict__["vrep"] = vrep
        return p

    @classmethod
    def from_points(cls, points: Iterable[Sequence], rays: Iterable[Sequence] = ()) -> "HPolytope":
        pts = tuple(sorted(set(qvec(p) for p in points)))
        if not pts:
            raise PreconditionError("from_points needs at least one point")
        return cls.from_vrep(VRep(pts, tuple(qvec(r) for r in rays)), len(pts[0]))

    @classmethod
    def empty(cls, dim: int) -> "HPolytope":
        p = cls(dim, _empty_marker(dim))
        p.__dict__["vrep"] = None
        return p

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "HPolytope":
        lo, hi = qvec(lower), qvec(upper)
        s = len(lo)
        hs = []
        for i in range(s):
            e = tuple(Fraction(int(i == j)) for j in range(s))
            hs.append(HalfSpace(e, hi[i]))
            hs.append(HalfSpace(tuple(-x for x in e), -lo[i]))
        return cls(s, tuple(hs))

    @cached_property
    def vrep(self) -> VRep | None:
        return h_to_v(self.halfspaces, self.dim)

    @property
    def is_empty(self) -> bool:
        return self.vrep is None

    @property
    def is_bounded(self) -> bool:
        return self.vrep is not None and self.vrep.bounded

    @cached_property
    def _hrep(self):
        if self.vrep is None:
            return None
        return hrep_from_vrep(self.vrep, self.dim)

    @property
    def equalities(self) -> list[tuple[Vector, Fraction]]:
        """RREF rows of the affine hull (empty list for full-dimensional sets)."""
        return [] if self._hrep is None else self._hrep[0]

    @property
    def facets(self) -> list[HalfSpace]:
        """Facet-defining inequalities, reduced modulo the affine hull."""
        if self._hrep is None:
            return []
        return sorted({HalfSpace(a, c).canonical() for a, c in self._hrep[1]})

    def canonical(self) -> "HPolytope":
        if self.vrep is None:
            return HPolytope.empty(self.dim)
        eqs, facets = self._hrep
        p = HPolytope(self.dim, _halfspaces_from(eqs, facets))
        p.__dict__["vrep"] = self.vrep
        p.__dict__["_hrep"] = self._hrep
        return p

    def contains_point(self, x: Sequence) -> bool:
        x = qvec(x)
        if len(x) != self.dim:
            raise PreconditionError("point dimension mismatch")
        return self.vrep is not None and all(h.contains(x) for h in self.halfspaces)

    def same_set(self, other: "HPolytope") -> bool:
        return contains(self, other) and contains(other, self)

    def instantiate_rows(self) -> list[list[Fraction]]:
        return [list(h.normal) + [h.bound] for h in self.halfspaces]


def _check_same_dim(p: HPolytope, q: HPolytope) -> None:
    if p.dim != q.dim:
        raise PreconditionError(f"dimension mismatch: {p.dim} vs {q.dim}")


def intersect(p: HPolytope, q: HPolytope) -> HPolytope:
    """Canonical polytope of the conjunction of both constraint lists."""
    _check_same_dim(p, q)
    return HPolytope(p.dim, p.halfspaces + q.halfspaces).canonical()


def vertex_enumerate(p: HPolytope) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """Exact ``(vertices, rays)``; lines, if any, are returned as two opposite rays."""
    if p.vrep is None:
        raise PreconditionError("vertex enumeration of an infeasible system")
    rays = list(p.vrep.rays)
    for l in p.vrep.lines:
        rays += [l, tuple(-x for x in l)]
    return p.vrep.vertices, tuple(rays)


def dimension(p: HPolytope) -> int:
    """Dimension of the affine hull, or -1 for the empty set."""
    v = p.vrep
    if v is None:
        return -1
    base = v.vertices[0]
    dirs = [tuple(a - b for a, b in zip(x, base)) for x in v.vertices[1:]]
    dirs += list(v.rays) + list(v.lines)
    return rank(dirs) if dirs else 0


def contains(outer: HPolytope, inner: HPolytope) -> bool:
    """``inner`` is a subset of ``outer``, decided from inner's generators."""
    _check_same_dim(outer, inner)
    v = inner.vrep
    if v is None:
        return True
    if outer.vrep is None:
        return False
    for h in outer.halfspaces:
        if any(not h.contains(x) for x in v.vertices):
            return False
        if any(h.value(r) > 0 for r in v.rays):
            return False
        if any(h.value(l) != 0 for l in v.lines):
            return False
    return True


def contains_point(p: HPolytope, x: Sequence) -> bool:
    return p.contains_point(x)


def ray_exit(p: HPolytope, base: Sequence, direction: Sequence):
    """``sup{t >= 0 : base + t*direction in p}``; ``math.inf`` if the ray never leaves."""
    base, d = qvec(base), qvec(direction)
    if not p.contains_point(base):
        raise PreconditionError("ray base point lies outside the polytope")
    best = inf
    for h in p.halfspaces:
        rate = h.value(d)
        if rate > 0:
            t = (h.bound - h.value(base)) / rate
            if t < best:
                best = t
    return best


def project(p: HPolytope, drop_axis: int) -> HPolytope:
    """Image under deleting coordinate ``drop_axis``, by Fourier-Motzkin elimination."""
    if p.dim < 2:
        raise PreconditionError("projection needs ambient dimension >= 2")
    if not 0 <= drop_axis < p.dim:
        raise PreconditionError(f"axis {drop_axis} out of range")
    if p.is_empty:
        raise PreconditionError("projection of an infeasible polytope")
    src = p.canonical().halfspaces
    pos = [h for h in src if h.normal[drop_axis] > 0]
    neg = [h for h in src if h.normal[drop_axis] < 0]
    rows = [h for h in src if h.normal[drop_axis] == 0]

    def drop(v):
        return v[:drop_axis] + v[drop_axis + 1:]

    out = [(drop(h.normal), h.bound) for h in rows]
    for hp in pos:
        for hn in neg:
            cp, cn = hp.normal[drop_axis], -hn.normal[drop_axis]
            normal = tuple(cn * a + cp * b for a, b in zip(hp.normal, hn.normal))
            out.append((drop(normal), cn * hp.bound + cp * hn.bound))
    hs = []
    for a, c in out:
        if any(a):
            hs.append(HalfSpace(a, c))
        elif c < 0:
            return HPolytope.empty(p.dim - 1)
    return HPolytope(p.dim - 1, tuple(hs)).canonical()


def project_vrep(p: HPolytope, drop_axis: int) -> HPolytope:
    """Same image as :func:`project`, computed by projecting generators instead."""
    v = p.vrep
    if v is None:
        raise PreconditionError("projection of an infeasible polytope")

    def drop(x):
        return x[:drop_axis] + x[drop_axis + 1:]

    lines = [drop(l) for l in v.lines if any(drop(l))]
    rays = [drop(r) for r in v.rays if any(drop(r))]
    return HPolytope.from_vrep(VRep(tuple(sorted({drop(x) for x in v.vertices})), tuple(rays), tuple(lines)), p.dim - 1)


def cone_from(apex: Sequence, generators) -> HPolytope:
    """Closed cone with the given apex over a polytope or a finite point set.

    For a point set the result is the closed conic hull ``apex + cone(s - apex)``.
    """
    apex = qvec(apex)
    if isinstance(generators, HPolytope):
        if generators.dim != len(apex):
            raise PreconditionError("apex dimension mismatch")
        v = generators.vrep
        if v is None:
            raise PreconditionError("cone over an empty set")
        pts, extra_rays, lines = v.vertices, list(v.rays), list(v.lines)
    else:
        pts = [qvec(x) for x in generators]
        if not pts:
            raise PreconditionError("cone over an empty set")
        if any(len(x) != len(apex) for x in pts):
            raise PreconditionError("apex dimension mismatch")
        extra_rays, lines = [], []
    rays = [tuple(a - b for a, b in zip(x, apex)) for x in pts]
    rays = [r for r in rays if any(r)] + extra_rays
    return HPolytope.from_vrep(VRep((apex,), tuple(rays), tuple(lines)), len(apex))


def _project_to_affine(v: Vector, rows: list[tuple[Vector, Fraction]]) -> Vector | None:
    if not rows:
        return v
    a = [r for r, _ in rows]
    resid = [dot(r, v) - c for r, c in rows]
    gram = [[dot(x, y) for y in a] for x in a]
    y = solve(gram, resid)
    if y is None:
        return None
    return tuple(vi - sum(yk * ak[i] for yk, ak in zip(y, a)) for i, vi in enumerate(v))


def squared_distance_to(x: Sequence, p: HPolytope) -> Fraction:
    """Exact squared Euclidean distance from a point to a nonempty polyhedron."""
    x = qvec(x)
    if p.is_empty:
        raise PreconditionError("distance to an empty set")
    if p.contains_point(x):
        return Fraction(0)
    eqs = list(p.equalities)
    facets = [(h.normal, h.bound) for h in p.facets]
    free = p.dim - len(eqs)
    best = None
    for k in range(0, free + 1):
        for sub in combinations(facets, k):
            rows = eqs + list(sub)
            if rank([r for r, _ in rows]) < len(rows):
                continue
            y = _project_to_affine(x, rows)
            if y is None or not p.contains_point(y):
                continue
            d = sum((a - b) ** 2 for a, b in zip(x, y))
            if best is None or d < best:
                best = d
    assert best is not None, "nearest point must lie in the relative interior of some face"
    return best


def hausdorff_distance(p: HPolytope, q: HPolytope) -> Fraction:
    """Squared Hausdorff distance between two nonempty bounded polytopes (kept rational)."""
    _check_same_dim(p, q)
    if p.is_empty or q.is_empty:
        raise PreconditionError("Hausdorff distance of an empty polytope")
    if not (p.is_bounded and q.is_bounded):
        raise PreconditionError("Hausdorff distance of an unbounded polyhedron")
    one = max(squared_distance_to(v, q) for v in p.vrep.vertices)
    two = max(squared_distance_to(v, p) for v in q.vrep.vertices)
    return max(one, two)
