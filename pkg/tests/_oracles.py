"""Slow reference implementations used only by the tests.

None of these touch candidate enumeration or the solvers; coverability is
decided by direct predicates on every subset.
"""

import itertools
from fractions import Fraction

from gridcover.geometry import INTERIOR, collinear, circumcircle, hull_classify


def all_collinear(pts):
    return all(collinear(pts[0], pts[1], p) for p in pts[2:]) if len(pts) > 2 else True


def all_concyclic(pts):
    if len(pts) <= 2:
        return True
    base = None
    for tri in itertools.combinations(pts, 3):
        if not collinear(*tri):
            base = tri
            break
    if base is None:
        return False
    (cx, cy), r2 = circumcircle(*base)
    return all((p[0] - cx) ** 2 + (p[1] - cy) ** 2 == r2 for p in pts)


def convex_position(pts):
    return INTERIOR not in hull_classify(pts) if pts else True


def subset_masks(points, pred):
    """Every nonempty subset mask whose points satisfy ``pred``."""
    n = len(points)
    ok = []
    for m in range(1, 1 << n):
        sub = [points[i] for i in range(n) if m >> i & 1]
        if pred(sub):
            ok.append(m)
    return ok


def min_cover_by_dp(n, masks):
    """Fewest masks whose union is everything, by DP over uncovered sets."""
    full = (1 << n) - 1
    INF = 10 ** 9
    best = [INF] * (1 << n)
    best[0] = 0
    for m in range(1, 1 << n):
        low = m & -m
        for c in masks:
            if c & low:
                v = best[m & ~c] + 1
                if v < best[m]:
                    best[m] = v
    return best[full]


def brute_min_cover(points, pred):
    pts = list(points)
    return min_cover_by_dp(len(pts), subset_masks(pts, pred))


def shape_pred(offsets):
    offs = [tuple(o) for o in offsets]

    def pred(sub):
        # some translate of the shape contains every point of sub
        p = sub[0]
        for o in offs:
            t = (p[0] - o[0], p[1] - o[1])
            trace = {(a + t[0], b + t[1]) for a, b in offs}
            if all(tuple(q) in trace for q in sub):
                return True
        return False

    return pred


def circle_pred_radius(r2):
    r2 = Fraction(r2)

    def pred(sub):
        if len(sub) == 1:
            return True
        if len(sub) >= 3:
            for tri in itertools.combinations(sub, 3):
                if not collinear(*tri):
                    c, rr = circumcircle(*tri)
                    return rr == r2 and all((p[0] - c[0]) ** 2 + (p[1] - c[1]) ** 2 == r2 for p in sub)
            return False
        # two points: is there a lattice centre at distance r2 from both
        (ax, ay), (bx, by) = sub
        R = int(r2) + 1
        for cx in range(min(ax, bx) - R, max(ax, bx) + R + 1):
            for cy in range(min(ay, by) - R, max(ay, by) + R + 1):
                if (ax - cx) ** 2 + (ay - cy) ** 2 == r2 == (bx - cx) ** 2 + (by - cy) ** 2:
                    return True
        return False

    return pred
