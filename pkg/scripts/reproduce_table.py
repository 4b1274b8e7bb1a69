#!/usr/bin/env python3
"""Reproduce the headline table across butterfly dimensions.

For each r: build the closed-form general position set and verify it,
construct and verify the isometric cycle cover, certify the 3*ic upper
bound, and (for small r) confirm the exact optimum by branch and bound.

Usage:
    python3 scripts/reproduce_table.py [--r-min 2] [--r-max 6] [--exact-max-r 3]
"""

import argparse
import sys
import time

from bfgp.budget import Budget
from bfgp.cycle_cover import construct_bf_cycle_cover, gp_upper_bounds, verify_bf_cover
from bfgp.errors import SearchInconclusiveError
from bfgp.genpos import construct_butterfly_gp_set, max_general_position, verify_general_position
from bfgp.geodesy import all_pairs_distances
from bfgp.graphs import build_butterfly


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-min", type=int, default=2)
    ap.add_argument("--r-max", type=int, default=6)
    ap.add_argument("--exact-max-r", type=int, default=3)
    ap.add_argument("--node-budget", type=int, default=5_000_000)
    args = ap.parse_args()

    header = f"{'r':>2} {'set':>5} {'ok':>3} {'cover':>6} {'bound':>6} {'exact':>6} {'time':>8}"
    print(header)
    print("-" * len(header))
    for r in range(args.r_min, args.r_max + 1):
        t0 = time.perf_counter()
        g = build_butterfly(r)
        dm = all_pairs_distances(g)
        s = construct_butterfly_gp_set(r)
        verified = verify_general_position(g, dm, s).ok
        try:
            cover = construct_bf_cycle_cover(r)
            report = verify_bf_cover(g, dm, cover)
            cover_sz = len(cover) if report.passes else None
            bound = gp_upper_bounds(cover, report)["from_ic"]
        except SearchInconclusiveError:
            cover_sz = bound = None
        exact = ""
        if r <= args.exact_max_r:
            res = max_general_position(g, dm, budget=Budget(node_limit=args.node_budget))
            exact = f"{res.size}" if res.optimal else f">={res.size}"
        dt = time.perf_counter() - t0
        print(f"{r:>2} {len(s):>5} {'y' if verified else 'N':>3} "
              f"{cover_sz if cover_sz is not None else '-':>6} "
              f"{bound if bound is not None else '-':>6} {exact or '-':>6} {dt:>7.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
