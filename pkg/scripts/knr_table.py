"""Table of empirical lower bounds for K(n, r) over the feasible cells.

    python3 scripts/knr_table.py --r-max 4 --budget 20000
"""
import argparse
import csv
import sys
import time

from qhmspace.knr import is_feasible, knr_lower_bound_search


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r-max", type=int, default=4)
    ap.add_argument("--budget", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "r", "best_ratio", "known_infinite", "seconds"])
    for r in range(2, args.r_max + 1):
        for n in range(r, 2 ** (r - 1) + 1):
            if not is_feasible(n, r):
                continue
            t = time.perf_counter()
            res = knr_lower_bound_search(n, r, args.budget, args.seed, threads=args.threads)
            w.writerow([n, r, repr(res.best_ratio), res.known_infinite, f"{time.perf_counter() - t:.1f}"])
            sys.stdout.flush()


if __name__ == "__main__":
    main()
