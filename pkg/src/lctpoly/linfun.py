"""Exact affine functions ``f(t) = slope*t + intercept`` and continuous piecewise-linear functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from lctpoly.errors import PreconditionError


@dataclass(frozen=True, order=True)
class AffineFn:
    """Affine function on a closed interval.

    Equality and hashing look only at (slope, intercept): two affine functions
    agreeing at two points agree everywhere, so the domain is bookkeeping.
    """

    slope: Fraction
    intercept: Fraction
    lo: Fraction | None = field(default=None, compare=False)
    hi: Fraction | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))
        if self.lo is not None:
            object.__setattr__(self, "lo", Fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise PreconditionError(f"empty domain [{self.lo}, {self.hi}]")

    @classmethod
    def const(cls, c, lo=None, hi=None) -> "AffineFn":
        return cls(Fraction(0), Fraction(c), lo, hi)

    def __call__(self, t) -> Fraction:
        return self.slope * Fraction(t) + self.intercept

    def on(self, lo, hi) -> "AffineFn":
        return AffineFn(self.slope, self.intercept, lo, hi)

    def __add__(self, other: "AffineFn") -> "AffineFn":
        return AffineFn(self.slope + other.slope, self.intercept + other.intercept, self.lo, self.hi)

    def __sub__(self, other: "AffineFn") -> "AffineFn":
        return AffineFn(self.slope - other.slope, self.intercept - other.intercept, self.lo, self.hi)

    def scale(self, c) -> "AffineFn":
        c = Fraction(c)
        return AffineFn(self.slope * c, self.intercept * c, self.lo, self.hi)

    def shift(self, c) -> "AffineFn":
        return AffineFn(self.slope, self.intercept + Fraction(c), self.lo, self.hi)

    @property
    def is_zero(self) -> bool:
        return self.slope == 0 and self.intercept == 0

    @property
    def is_constant(self) -> bool:
        return self.slope == 0

    def endpoint_values(self, lo, hi) -> tuple[Fraction, Fraction]:
        return self(lo), self(hi)

    def max_on(self, lo, hi) -> Fraction:
        return max(self(lo), self(hi))

    def min_on(self, lo, hi) -> Fraction:
        return min(self(lo), self(hi))

    def __repr__(self) -> str:
        return f"AffineFn({self.slope}*t + {self.intercept})"


def zero_fn(lo=None, hi=None) -> AffineFn:
    return AffineFn(Fraction(0), Fraction(0), lo, hi)


def crossing(f: AffineFn, g: AffineFn) -> Fraction | None:
    """Abscissa where two non-parallel lines meet, else ``None``."""
    if f.slope == g.slope:
        return None
    return (g.intercept - f.intercept) / (f.slope - g.slope)


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function; ``pieces[i]`` lives on ``[knots[i], knots[i+1]]``."""

    knots: tuple[Fraction, ...]
    pieces: tuple[AffineFn, ...]

    def __post_init__(self):
        object.__setattr__(self, "knots", tuple(Fraction(k) for k in self.knots))
        if len(self.pieces) < 1 or len(self.knots) != len(self.pieces) + 1:
            raise PreconditionError("a PL function needs n+1 knots for n >= 1 pieces")
        if any(a >= b for a, b in zip(self.knots, self.knots[1:])):
            raise PreconditionError("knots must be strictly increasing")
        for k, (f, g) in enumerate(zip(self.pieces, self.pieces[1:])):
            x = self.knots[k + 1]
            if f(x) != g(x):
                raise PreconditionError(f"discontinuity at {x}")

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        """Interior knots, where the slope changes."""
        return self.knots[1:-1]

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.knots[0], self.knots[-1]

    def piece_index(self, t) -> int:
        t = Fraction(t)
        lo, hi = self.domain
        if not lo <= t <= hi:
            raise PreconditionError(f"{t} outside [{lo}, {hi}]")
        for i in range(len(self.pieces)):
            if t <= self.knots[i + 1]:
                return i
        return len(self.pieces) - 1

    def __call__(self, t) -> Fraction:
        return self.pieces[self.piece_index(t)](t)

    def is_canonical(self) -> bool:
        return all(f.slope != g.slope for f, g in zip(self.pieces, self.pieces[1:]))


def merge_pieces(knots: Sequence[Fraction], pieces: Sequence[AffineFn]) -> PLFunction:
    """Drop knots where adjacent pieces are the same affine function."""
    ks, ps = [knots[0]], []
    for i, f in enumerate(pieces):
        if ps and ps[-1] == f:
            ks[-1] = knots[i + 1]
            continue
        ps.append(f)
        ks.append(knots[i + 1])
    return PLFunction(tuple(ks), tuple(p.on(a, b) for p, a, b in zip(ps, ks, ks[1:])))
