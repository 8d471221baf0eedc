"""Build the decreasing chain (2m+1)/m inside D(F) for F = {1, t} on [0, 1], with explicit witnesses.

For each m the member (m - 1 + (m+2) t)/m is certified on [0, 1/(m+2)]
through the F+ element (m+2) t, then evaluated at t = 1.

    python3 scripts/reproduce_non_dcc_chain.py --m-max 20
"""

from __future__ import annotations

import argparse
from fractions import Fraction as Q

from lctpoly import coeffsets
from lctpoly.linfun import AffineFn


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=20)
    args = ap.parse_args()
    one, t = AffineFn.const(1), AffineFn(Q(1), Q(0))
    F = coeffsets.FnFamily(Q(0), Q(1), (one, t))
    values = []
    print(f"{'m':>3}  {'c':>6}  {'member':<22} {'value at 1':>10}")
    for m in range(1, args.m_max + 1):
        c = Q(1, m + 2)
        w = AffineFn(Q(m + 2, m), Q(m - 1, m))
        en = coeffsets.derived_set(F, c, m)
        wit = en.witness(w)
        assert wit is not None and wit.check()
        values.append(w(1))
        print(f"{m:>3}  {str(c):>6}  {str(w):<22} {str(w(1)):>10}")
    verdict = coeffsets.is_dcc(coeffsets.SetExpr.from_sequence(values))
    print(f"is_dcc: {verdict.holds}; witness prefix {[str(x) for x in verdict.witness]}")


if __name__ == "__main__":
    main()
