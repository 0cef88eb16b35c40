"""Incidences of blown-up covers divided by the m^(2/3) n^(2/3) + m + n expression.

For translates of a fixed cover the ratio grows with n when the cover is
small, which is the contradiction behind the quadratic lower bound.
"""

import argparse

from gridcover import constructions as K
from gridcover.incidence import blow_up, bound_diagnostic
from gridcover.tilings import best_clip


def covers(n):
    yield "concentric-circles", K.concentric_circle_cover(n).curves
    yield "unit-circle-tiles", best_clip("unit-circle", n)[1].curves
    yield "convex-rings", K.convex_ring_cover((n, n)).curves


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    for n in range(2, args.max_n + 1):
        for name, S in covers(n):
            inst = blow_up(S, n)
            ratio = bound_diagnostic(len(inst.points), len(inst.curves), incidences=inst.incidences)
            print(f"n={n:>2} {name:<20} |S|={len(S):>3} I={inst.incidences:>6} ratio={ratio:.3f}", flush=True)


if __name__ == "__main__":
    main()
