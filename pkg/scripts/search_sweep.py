#!/usr/bin/env python3
"""Run the monochromatic search over seeded random colorings, tallying outcomes.

Every returned find is verified independently inside the library; this
script measures how often the constructive pipeline succeeds versus
exhausting, across coloring sizes.

    python scripts/search_sweep.py --pattern c5 --n 20,40,60 --seeds 20
"""

import argparse
import csv
import sys
from collections import Counter

from ramseykit import SearchConfig, find_mono_H, load_pattern, sample_coloring


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pattern", default="k3")
    ap.add_argument("--n", default="20,40,60")
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--p-red", type=float, default=0.5)
    ap.add_argument("--rho", type=float, default=None)
    args = ap.parse_args()

    pattern = load_pattern(args.pattern)
    rho = args.rho if args.rho is not None else float(pattern.density)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "found_mono", "exhausted", "red_finds", "blue_finds"])
    for n in (int(x) for x in args.n.split(",")):
        tally = Counter()
        colors = Counter()
        for seed in range(args.seeds):
            coloring = sample_coloring(n, args.p_red, seed)
            outcome = find_mono_H(coloring, pattern, SearchConfig(rho=rho, seed=seed))
            tally[outcome.kind] += 1
            if outcome.found:
                colors[outcome.color] += 1
        writer.writerow([n, tally["found_mono"], tally["exhausted"],
                         colors["R"], colors["B"]])


if __name__ == "__main__":
    main()
