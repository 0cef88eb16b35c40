"""Greedy point sets with n points on each of n horizontal lines and no other collinear triple.

Reports the x-range the greedy needs, which bounds the coordinates of the construction.
"""

import argparse

from gridcover.incidence import build_counterexample, check_star_property, max_collinear


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=20)
    args = ap.parse_args()
    for n in range(2, args.max_n + 1):
        P, L = build_counterexample(n)
        width = max(x for x, _ in P.points)
        print(f"n={n:>3} max_x={width:>6} star={check_star_property(P, L)} max_collinear={max_collinear(P)}",
              flush=True)


if __name__ == "__main__":
    main()
