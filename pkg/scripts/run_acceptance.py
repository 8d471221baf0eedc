"""Run the acceptance checks outside pytest and print one PASS/FAIL line per criterion.

    python3 scripts/run_acceptance.py            # all criteria
    python3 scripts/run_acceptance.py 5 8        # a subset

Exit status is 0 only when every selected criterion passes.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from test_acceptance import CRITERIA, evaluate  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("which", nargs="*", type=int, help="criterion numbers (default: all)")
    args = ap.parse_args()
    chosen = [c for c in CRITERIA if not args.which or c[0] in args.which]
    results = []
    for number, title, limit, fn in chosen:
        ok, line = evaluate(number, title, limit, fn)
        print(line, flush=True)
        results.append(ok)
    print(f"{sum(results)}/{len(results)} criteria passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
