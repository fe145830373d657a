"""How fast does the empirical density converge?

For X = 10^3 .. 10^k, report the absolute error and the error scaled by
sqrt(X); a bounded scaled column is consistent with an O(X^{-1/2}) rate.
"""

import argparse
import csv
import math
import sys

from puremono.census import interval_census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 6])
    ap.add_argument("--max-exp", type=int, default=7)
    ap.add_argument("--sides", choices=("one", "two"), default="one")
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "X", "count", "empirical", "abs_error", "scaled_error"])
    for n in args.n:
        for k in range(3, args.max_exp + 1):
            X = 10**k
            r = interval_census(n, X, args.sides)
            w.writerow([n, X, r.count, f"{r.empirical:.8f}", f"{r.abs_error:.3e}",
                        f"{r.abs_error * math.sqrt(X):.4f}"])


if __name__ == "__main__":
    main()
