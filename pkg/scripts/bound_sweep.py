#!/usr/bin/env python3
"""Chart the log2 upper bounds against the trivial clique bound over a rho grid.

Writes CSV to stdout: one row per (t, rho) with every formula evaluated and
its precondition flags, so invalid regions can be filtered downstream.

    python scripts/bound_sweep.py --t 64,256,1024 --rho-denoms 16,64,256,1024
"""

import argparse
import csv
import sys
from fractions import Fraction

from ramseykit import (
    bound_clique_dense,
    bound_clique_maxdeg,
    bound_main_dense,
    bound_random_graph,
    lower_bounds,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--t", default="64,256,1024")
    ap.add_argument("--rho-denoms", default="16,50,100,256,1024")
    args = ap.parse_args()

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["t", "rho", "main_dense", "main_ok", "clique_maxdeg",
                     "maxdeg_ok", "clique_dense", "cdense_ok", "random_graph",
                     "rg_ok", "lower_planted", "lower_random"])
    for t in (int(x) for x in args.t.split(",")):
        for q in (int(x) for x in args.rho_denoms.split(",")):
            rho = Fraction(1, q)
            main = bound_main_dense(t, rho)
            maxdeg = bound_clique_maxdeg(t, rho)
            cdense = bound_clique_dense(t, rho)
            rg = bound_random_graph(t, rho)
            planted, randlo = lower_bounds(t, rho)
            writer.writerow([
                t, str(rho),
                f"{main.log2_bound:.6g}", main.preconditions_met,
                f"{maxdeg.log2_bound:.6g}", maxdeg.preconditions_met,
                f"{cdense.log2_bound:.6g}", cdense.preconditions_met,
                f"{rg.log2_bound:.6g}", rg.preconditions_met,
                f"{planted.log2_bound:.6g}", f"{randlo.log2_bound:.6g}",
            ])


if __name__ == "__main__":
    main()
