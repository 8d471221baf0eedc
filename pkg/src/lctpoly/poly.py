"""Univariate polynomials over Q, stored as coefficient tuples from degree 0 upwards.

Only what the eventual-sign arguments in :mod:`lctpoly.chainlab` need: ring
operations, small determinants, the sign for large arguments and a bound
beyond which that sign is attained.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Poly = tuple[Fraction, ...]


def trim(p: Sequence) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def const(c) -> Poly:
    return trim([c])


def linear(c0, c1) -> Poly:
    """``c0 + c1 * m``."""
    return trim([c0, c1])


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p: Poly, c) -> Poly:
    return trim([a * Fraction(c) for a in p])


def evaluate(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def degree(p: Poly) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def eventual_sign(p: Poly) -> int:
    """Sign of ``p(m)`` for all sufficiently large m (0 only for the zero polynomial)."""
    if not p:
        return 0
    return 1 if p[-1] > 0 else -1


def cauchy_bound(p: Poly) -> Fraction:
    """Every real root of p is strictly below this value (0 for constants)."""
    if len(p) <= 1:
        return Fraction(0)
    lead = abs(p[-1])
    return 1 + max(abs(c) / lead for c in p[:-1])


def sign_threshold(p: Poly) -> int:
    """Smallest integer ``M >= 1`` with ``sign p(m) == eventual_sign(p)`` for every integer ``m >= M``."""
    bound = math.floor(cauchy_bound(p)) + 1
    target = eventual_sign(p)
    m = bound
    while m > 1 and (evaluate(p, m - 1) > 0) - (evaluate(p, m - 1) < 0) == target:
        m -= 1
    return max(m, 1)


def det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Laplace expansion; fine for the dimensions used here (at most 6)."""
    n = len(matrix)
    if n == 0:
        return const(1)
    if n == 1:
        return matrix[0][0]
    total: Poly = ()
    for j in range(n):
        if not matrix[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = mul(matrix[0][j], det(minor))
        total = add(total, term) if j % 2 == 0 else sub(total, term)
    return total


def fmt(p: Poly, var: str = "m") -> str:
    if not p:
        return "0"
    parts = []
    for i, c in reversed(list(enumerate(p))):
        if c == 0:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        coef = str(c)
        parts.append(coef if not mon else (mon if c == 1 else f"-{mon}" if c == -1 else f"{coef}*{mon}"))
    return " + ".join(parts).replace("+ -", "- ")
