#!/usr/bin/env python3
"""Print the degree/genus table of the one-edge CI equilibrium curves.

Usage: python3 scripts/reproduce_invariants.py [max_n]
"""

import sys

from spohnci.euler import invariants_summary


def main() -> int:
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 9
    print(f"{'n':>3} {'degree':>9} {'genus':>9} {'K-degree':>9} {'chi':>7}")
    for n in range(2, max_n + 1):
        row = invariants_summary(n)
        print(
            f"{row['n']:>3} {row['degree']:>9} {row['genus']:>9} "
            f"{row['canonicalDegree']:>9} {row['eulerCharacteristic']:>7}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
