"""Compare the congruence criterion against the Dedekind oracle on a box of (n, m)."""

import argparse
import json
import time

from puremono.cli import run_verification


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--m-max", type=int, default=2000)
    args = ap.parse_args()

    t0 = time.perf_counter()
    checked, mismatches = run_verification(args.n_max, args.m_max, n_min=args.n_min)
    print(json.dumps({
        "n_range": [args.n_min, args.n_max],
        "m_max": args.m_max,
        "checked": checked,
        "mismatches": mismatches,
        "seconds": round(time.perf_counter() - t0, 2),
    }, indent=2))
    raise SystemExit(2 if mismatches else 0)


if __name__ == "__main__":
    main()
