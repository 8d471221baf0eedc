"""Measure how fast the toric LCT-polytope stabilizes as the weight bound grows.

Draws random monomial divisor sets and reports, per instance, the first
weight bound after which the polytope no longer changes, plus a histogram.

    python3 scripts/toric_stability_experiment.py --instances 100 --bound 8 --seed 0
"""

from __future__ import annotations

import argparse
import collections
import random

from lctpoly import randinst, toricgen


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=100)
    ap.add_argument("--bound", type=int, default=8)
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--e-max", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    hist: collections.Counter = collections.Counter()
    non_monotone = 0
    for _ in range(args.instances):
        mds = randinst.random_monomial(rng, n_max=args.n_max, s_max=3, e_max=args.e_max)
        rep = toricgen.oracle_stability(mds, range(1, args.bound + 1))
        hist[rep.stable_from] += 1
        non_monotone += not rep.monotone
        if args.verbose:
            print(f"{mds.divisors}: stable from {rep.stable_from}")
    print(f"{args.instances} instances, weight bounds 1..{args.bound}, non-monotone: {non_monotone}")
    for key in sorted(hist, key=lambda k: (k is None, k or 0)):
        label = "never" if key is None else f"bound {key}"
        print(f"  stable from {label:>9}: {hist[key]}")


if __name__ == "__main__":
    main()
