"""Print exact densities next to census counts for a range of degrees."""

import argparse
import csv
import sys

from puremono.census import interval_census
from puremono.density import delta_n


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--limit", type=int, default=10**6)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "exact", "pi_form", "theory", "empirical", "abs_error", "seconds"])
    for n in range(2, args.n_max + 1):
        d = delta_n(n)
        res = interval_census(n, args.limit, workers=args.workers)
        w.writerow([
            n, str(d.rational), d.pi_form(), f"{d.numeric():.8f}",
            f"{res.empirical:.8f}", f"{res.abs_error:.2e}", f"{res.runtime_ms / 1e3:.2f}",
        ])


if __name__ == "__main__":
    main()
