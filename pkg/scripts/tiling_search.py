"""Periodic patterns for each small shape, and clipped cover sizes against the n^2 / density lower bound."""

import argparse

from gridcover.tilings import SHAPES, TILE_LIKE, TILE_LIKE_DENSITY, EXACT, best_clip, find_periodic_tiling, \
    small_curve_lower


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-period", type=int, default=8)
    ap.add_argument("--sizes", default="4,8,12,16,24")
    args = ap.parse_args()
    ns = [int(s) for s in args.sizes.split(",")]
    for name, shape in SHAPES.items():
        kind = TILE_LIKE if name in TILE_LIKE_DENSITY else EXACT
        pat = find_periodic_tiling(shape, args.max_period, kind)
        if pat is None:
            print(f"{name}: no {kind} up to period {args.max_period}")
            continue
        print(f"{name}: {kind} u={pat.u} v={pat.v} placements={len(pat.placements)} "
              f"points/curve={pat.points_per_curve()}")
        for n in ns:
            _, cover = best_clip(shape, n, kind=kind)
            print(f"    n={n:>3} clipped={len(cover):>4} lower={small_curve_lower(shape, n):>4}", flush=True)


if __name__ == "__main__":
    main()
