#!/usr/bin/env python3
"""Acceptance-rate experiment for the randomized judicious partition.

Samples G(t, rho), runs the Las Vegas bisection across seeds, and reports
the acceptance rate plus the try-count distribution.

    python scripts/partition_experiment.py --t 1024 --rho 0.2 --seeds 20
"""

import argparse
from collections import Counter

from ramseykit import judicious_partition, sample_gnp


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--t", type=int, default=1024)
    ap.add_argument("--rho", type=float, default=0.2)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--max-tries", type=int, default=64)
    args = ap.parse_args()

    tries = Counter()
    accepted = 0
    for seed in range(args.seeds):
        g = sample_gnp(args.t, args.rho, seed)
        cert = judicious_partition(g, args.max_tries, seed)
        if cert.accepted:
            accepted += 1
            tries[cert.tries_used] += 1
    print(f"t={args.t} rho={args.rho} seeds={args.seeds}")
    print(f"accepted: {accepted}/{args.seeds}")
    print(f"tries distribution: {dict(sorted(tries.items()))}")


if __name__ == "__main__":
    main()
