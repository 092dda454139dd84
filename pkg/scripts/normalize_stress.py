"""Normalize many random valid functions and report how often each rewrite fires.

    python scripts/normalize_stress.py --samples 20000 --min 3 --max 6 --seed 1
"""

import argparse
import collections
import time

import numpy as np

from domtorus.assignment import is_independent, random_italian, verify_italian, weight, zero_set
from domtorus.normalizer import NormalizationError, normalize


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=10000)
    ap.add_argument("--min", type=int, default=3)
    ap.add_argument("--max", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    rules = collections.Counter()
    errors = collections.Counter()
    saved = 0
    t0 = time.perf_counter()
    for _ in range(args.samples):
        m, n = (int(x) for x in rng.integers(args.min, args.max + 1, size=2))
        f = random_italian(m, n, rng)
        try:
            out, trace = normalize(f)
        except NormalizationError as exc:
            errors[type(exc).__name__] += 1
            continue
        assert verify_italian(out) == [] and is_independent(zero_set(out), out.host)
        saved += weight(f) - weight(out)
        rules.update(s.rule for s in trace)

    print(f"{args.samples} samples in {time.perf_counter() - t0:.1f}s, total weight removed {saved}")
    for rule, count in rules.most_common():
        print(f"  {rule:18s} {count}")
    print(f"errors: {dict(errors) or 0}")


if __name__ == "__main__":
    main()
