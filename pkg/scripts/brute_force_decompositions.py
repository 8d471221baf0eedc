"""Independent brute force for decompositions K = w_1 + ... + w_k with w_j in D({1}).

Does not import lctpoly.  Members of D({1}) with denominator m <= M are
(m - 1 + v)/m for an integer 0 <= v <= 1, i.e. the values (m-1)/m and 1.
Zero (m = 1, v = 0) is excluded because it never changes a sum.

Prints one JSON list of sorted value multisets ("p/q" strings), sorted.

    python3 scripts/brute_force_decompositions.py --K 2 --m-cap 4 --terms 4
"""

from __future__ import annotations

import argparse
import itertools
import json
from fractions import Fraction


def members(m_cap: int) -> list[Fraction]:
    vals = set()
    for m in range(1, m_cap + 1):
        for v in (0, 1):
            w = Fraction(m - 1 + v, m)
            if w > 0:
                vals.add(w)
    return sorted(vals)


def decompositions(K: Fraction, m_cap: int, terms: int) -> list[tuple[Fraction, ...]]:
    vals = members(m_cap)
    out = set()
    for k in range(1, terms + 1):
        for combo in itertools.combinations_with_replacement(vals, k):
            if sum(combo) == K:
                out.add(combo)
    return sorted(out)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--K", default="2")
    ap.add_argument("--m-cap", type=int, default=4)
    ap.add_argument("--terms", type=int, default=4)
    a = ap.parse_args()
    res = decompositions(Fraction(a.K), a.m_cap, a.terms)
    print(json.dumps([[str(x) for x in d] for d in res]))


if __name__ == "__main__":
    main()
