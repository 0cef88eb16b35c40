"""Minimum orthoconvex covers of small square grids, with the lower bounds beside them.

    python3 scripts/orthoconvex_values.py --max-n 9 --budget 60
"""

import argparse
import time

from gridcover.families import Orthoconvex
from gridcover.geometry import grid_points
from gridcover.solver import Cover, exact_min_cover, lower_bound_parts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--budget", type=float, default=60.0, help="seconds per instance")
    ap.add_argument("--corners", default="1,2,none", help="inner-corner budgets, comma separated")
    args = ap.parse_args()

    ks = [None if k == "none" else int(k) for k in args.corners.split(",")]
    print(f"{'n':>3} {'k':>5} {'coverage':>8} {'theorem':>7} {'result':>12} {'sec':>6}")
    for n in range(2, args.max_n + 1):
        P = grid_points((n, n))
        for k in ks:
            fam = Orthoconvex(k)
            t0 = time.perf_counter()
            parts = lower_bound_parts(P, fam) if n <= 12 else {"coverage": "-", "theorem": "-"}
            r = exact_min_cover(P, fam, time_budget=args.budget, theorems=False)
            res = str(len(r)) if isinstance(r, Cover) else f"[{r.lower}, {r.upper}]"
            print(f"{n:>3} {str(k):>5} {parts['coverage']:>8} {parts['theorem']:>7} {res:>12} "
                  f"{time.perf_counter() - t0:>6.1f}", flush=True)


if __name__ == "__main__":
    main()
