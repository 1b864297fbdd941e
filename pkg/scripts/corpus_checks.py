"""Run the structural checks over a random corpus and print a summary.

    python3 scripts/corpus_checks.py --count 1000 --seed 1
"""
import argparse
import collections
import time

import numpy as np

from qhmspace.classify import classify
from qhmspace.embed import affine_rank, config_to_metric, schoenberg_embed
from qhmspace.generators import random_corpus
from qhmspace.measures import m_value, m_value_oracle
from qhmspace.subspace import enumerate_maximal_strict_subspaces, maximal_strict_subspace


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--oracle", action="store_true", help="also compare against gradient ascent")
    args = ap.parse_args()

    t = time.perf_counter()
    items = random_corpus(args.count, seed=args.seed)
    print(f"corpus: {len(items)} spaces in {time.perf_counter() - t:.1f} s")

    kinds = collections.Counter()
    failures = collections.Counter()
    worst_embed = worst_oracle = 0.0
    t = time.perf_counter()
    for it in items:
        c = classify(it.d)
        kinds[("strict" if c.strictly_quasihypermetric else "non-strict", c.m_finite)] += 1
        r = maximal_strict_subspace(it.d)
        if len({len(s) for s in enumerate_maximal_strict_subspaces(it.d)}) != 1:
            failures["equal cardinality"] += 1
        if it.n > 2 ** (r.cardinality - 1):
            failures["n <= 2^(r-1)"] += 1
        p = schoenberg_embed(it.d)
        if (affine_rank(p) == it.n) != c.strictly_quasihypermetric:
            failures["strict iff affinely independent"] += 1
        worst_embed = max(worst_embed, float(np.abs(config_to_metric(p) - it.d).max()))
        if args.oracle:
            mv = m_value(it.d)
            if mv.finite:
                worst_oracle = max(worst_oracle, abs(m_value_oracle(it.d) - mv.value))
    print(f"checks: {time.perf_counter() - t:.1f} s")
    for k, v in sorted(kinds.items()):
        print(f"  {k[0]:10s} M {k[1]:8s} {v}")
    print(f"  worst embedding round-trip error {worst_embed:.2e}")
    if args.oracle:
        print(f"  worst oracle gap {worst_oracle:.2e}")
    print("failures:", dict(failures) or "none")


if __name__ == "__main__":
    main()
