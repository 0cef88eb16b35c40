"""Number of convex layers of the n x n grid, and the fitted log-log slope.

The layer count should grow like n^(4/3).
"""

import argparse

import numpy as np

from gridcover.constructions import peel_layers
from gridcover.geometry import grid_points


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="8,16,32,64,128,256")
    args = ap.parse_args()
    ns = [int(s) for s in args.sizes.split(",")]
    counts = []
    for n in ns:
        counts.append(len(peel_layers(grid_points((n, n)))))
        print(f"n={n:>4} layers={counts[-1]:>6} layers/n^(4/3)={counts[-1] / n ** (4 / 3):.3f}", flush=True)
    slope = np.polyfit(np.log(ns), np.log(counts), 1)[0]
    print(f"slope {slope:.3f}")


if __name__ == "__main__":
    main()
