"""Resolution data for monomial divisors on affine n-space.

For ``D_j = div(x^{a_j})`` each primitive weight ``w`` gives the toric
valuation condition ``sum_j t_j <w, a_j> <= sum_i w_i``; dividing by
``|w| = sum_i w_i`` puts it in the normalised row shape with ``b = 0``.
The coordinate weights ``e_i`` are the strict transforms of the coordinate
hyperplanes.  Truncating at ``|w| <= bound`` gives a polytope that can only
shrink as the bound grows; :func:`oracle_stability` reports where it stops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd
from typing import Sequence

from lctpoly.errors import PreconditionError
from lctpoly.exactgeom import HalfSpace, HPolytope, contains
from lctpoly.lctcore import DatumRow, ResolutionDatum, build_lct_polytope


@dataclass(frozen=True)
class MonomialDivisorSet:
    n: int
    divisors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(tuple(int(x) for x in a) for a in self.divisors))
        if self.n < 1:
            raise PreconditionError("ambient dimension must be >= 1")
        if not self.divisors:
            raise PreconditionError("at least one divisor is required")
        for a in self.divisors:
            if len(a) != self.n:
                raise PreconditionError(f"exponent vector {a} has the wrong length")
            if any(x < 0 for x in a) or not any(a):
                raise PreconditionError(f"exponent vector {a} must be non-negative and nonzero")

    @classmethod
    def parse(cls, text: str) -> "MonomialDivisorSet":
        """``"2,0;0,3"`` means ``D1 = div(x^2)``, ``D2 = div(y^3)``."""
        try:
            divs = [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]
        except ValueError as exc:
            raise PreconditionError(f"cannot parse exponents {text!r}") from exc
        if not divs:
            raise PreconditionError("no exponent vectors given")
        return cls(len(divs[0]), tuple(divs))

    @property
    def s(self) -> int:
        return len(self.divisors)

    def permuted(self, perm: Sequence[int]) -> "MonomialDivisorSet":
        """Relabel ambient coordinates: new coordinate k is old coordinate ``perm[k]``."""
        return MonomialDivisorSet(self.n, tuple(tuple(a[p] for p in perm) for a in self.divisors))


def primitive_weights(n: int, bound: int) -> list[tuple[int, ...]]:
    """Primitive ``w`` in ``Z_{>=0}^n`` with ``1 <= |w| <= bound``, ordered by ``(|w|, w)``."""
    if bound < 1:
        raise PreconditionError("weight bound must be >= 1")
    out = [w for w in product(range(bound + 1), repeat=n)
           if 0 < sum(w) <= bound and reduce(gcd, w, 0) == 1]
    return sorted(out, key=lambda w: (sum(w), w))


def _label(w: Sequence[int]) -> str:
    return "w=(" + ",".join(map(str, w)) + ")"


def weight_row(mds: MonomialDivisorSet, w: Sequence[int]) -> DatumRow | None:
    """Normalised row of weight ``w``; ``None`` when no divisor is seen by ``w``."""
    size = sum(w)
    a = tuple(Fraction(sum(wi * ai for wi, ai in zip(w, aj)), size) for aj in mds.divisors)
    if not any(a):
        return None
    kind = "strict" if size == 1 else "exceptional"
    return DatumRow(a, Fraction(0), _label(w), kind)


def all_weight_rows(mds: MonomialDivisorSet, bound: int) -> list[DatumRow]:
    rows = (weight_row(mds, w) for w in primitive_weights(mds.n, bound))
    return [r for r in rows if r is not None]


def toric_datum(mds: MonomialDivisorSet, weight_bound: int) -> ResolutionDatum:
    """Rows that define facets of the truncated polytope, one per facet (smallest weight wins)."""
    rows = all_weight_rows(mds, weight_bound)
    full = build_lct_polytope(ResolutionDatum(mds.s, tuple(rows)))
    facets = set(full.facets)
    kept, used = [], set()
    for r in rows:
        h = HalfSpace(r.a, 1 - r.b).canonical()
        if h in facets and h not in used:
            used.add(h)
            kept.append(r)
    return ResolutionDatum(mds.s, tuple(kept))


def brute_force_lct(mds: MonomialDivisorSet, weight_bound: int, direction: Sequence):
    """``min_w |w| / sum_j d_j <w, a_j>`` over enumerated weights; ``math.inf`` if none is positive."""
    d = [Fraction(x) for x in direction]
    best = math.inf
    for w in primitive_weights(mds.n, weight_bound):
        rate = sum((dj * sum(wi * ai for wi, ai in zip(w, aj)) for dj, aj in zip(d, mds.divisors)), Fraction(0))
        if rate > 0:
            t = Fraction(sum(w)) / rate
            if best is math.inf or t < best:
                best = t
    return best


@dataclass(frozen=True)
class StabilityReport:
    bounds: tuple[int, ...]
    polytopes: tuple[HPolytope, ...]
    stable_from: int | None  # first bound after which nothing changes, None if the last step changed
    monotone: bool  # every polytope contains the next one

    @property
    def final(self) -> HPolytope:
        return self.polytopes[-1]


def oracle_stability(mds: MonomialDivisorSet, bounds: Sequence[int]) -> StabilityReport:
    """Polytope at every bound and the smallest bound from which it no longer changes."""
    bounds = tuple(bounds)
    if not bounds or any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
        raise PreconditionError("bounds must be a nonempty increasing list")
    polys = tuple(build_lct_polytope(toric_datum(mds, b)) for b in bounds)
    monotone = all(contains(p, q) for p, q in zip(polys, polys[1:]))
    stable_from = None
    if len(polys) >= 2 and polys[-1] == polys[-2]:
        k = len(polys) - 1
        while k > 0 and polys[k - 1] == polys[-1]:
            k -= 1
        stable_from = bounds[k]
    return StabilityReport(bounds, polys, stable_from, monotone)
