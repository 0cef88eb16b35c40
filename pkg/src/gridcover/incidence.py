"""Point sets with few collinear triples, and point-curve incidence experiments.

``build_counterexample`` puts n points on each of the lines y = 1..n so that no
other line meets three of them. The incidence helpers count point-curve pairs,
amplify a grid cover by translation, and check intersection-pattern limits.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .config import CAPS
from .families import Curve, canonical_line
from .geometry import PointSet, grid_points


@dataclass(frozen=True)
class LineSet:
    lines: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        canon = tuple(sorted({canonical_line(*ln) for ln in self.lines}))
        object.__setattr__(self, "lines", canon)

    def __len__(self):
        return len(self.lines)

    def __contains__(self, ln) -> bool:
        return canonical_line(*ln) in set(self.lines)

    def to_json(self) -> dict:
        return {"lines": [{"a": a, "b": b, "c": c} for a, b, c in self.lines]}

    @classmethod
    def from_json(cls, obj: dict) -> "LineSet":
        return cls(tuple((d["a"], d["b"], d["c"]) for d in obj["lines"]))


def build_counterexample(n: int) -> tuple[PointSet, LineSet]:
    """n points on each line y = i, no three collinear off those lines.

    Rows are filled in order; in each row x = 1, 2, ... is accepted unless it
    lies on a line through two accepted points of different rows.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rows = np.arange(1, n + 1, dtype=np.int64)
    forbidden: list[set[int]] = [set() for _ in range(n + 1)]
    xs: list[int] = []
    ys: list[int] = []
    for i in range(1, n + 1):
        x = 0
        for _ in range(n):
            x += 1
            while x in forbidden[i]:
                x += 1
            # lines through the new point and every accepted point of another row
            if xs:
                px = np.array(xs, dtype=np.int64)
                py = np.array(ys, dtype=np.int64)
                other = py != i
                px, py = px[other], py[other]
                dy = py - i
                # intersection with y = r: x + (r - i) * (px - x) / dy
                num = (rows[None, :] - i) * (px[:, None] - x)
                den = dy[:, None]
                hit = num % den == 0
                xr = x + num // den
                for q, r in zip(*np.nonzero(hit)):
                    forbidden[int(rows[r])].add(int(xr[q, r]))
            xs.append(x)
            ys.append(i)
    pts = PointSet(2, tuple(zip(xs, ys)))
    return pts, LineSet(tuple((0, 1, i) for i in range(1, n + 1)))


def _pair_lines(P: PointSet) -> tuple[np.ndarray, np.ndarray]:
    """Canonical (a, b, c) of every point pair's line, plus pair counts per line."""
    X = np.array(P.points, dtype=np.int64)
    i, j = np.triu_indices(len(X), k=1)
    a = X[j, 1] - X[i, 1]
    b = X[i, 0] - X[j, 0]
    c = a * X[i, 0] + b * X[i, 1]
    g = np.gcd(np.gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    flip = (a < 0) | ((a == 0) & (b < 0))
    a, b, c = np.where(flip, -a, a), np.where(flip, -b, b), np.where(flip, -c, c)
    keys = np.stack([a, b, c], axis=1)
    uniq, counts = np.unique(keys, axis=0, return_counts=True)
    return uniq, counts


def _points_from_pairs(pairs: np.ndarray) -> np.ndarray:
    # k points on a line give k (k - 1) / 2 pairs
    return ((1 + np.sqrt(1 + 8 * pairs.astype(np.float64))) / 2).round().astype(np.int64)


def max_collinear(P: PointSet) -> int:
    if len(P) <= 2:
        return len(P)
    _, counts = _pair_lines(P)
    return int(_points_from_pairs(counts).max())


def collinear_classes(P: PointSet, min_points: int = 3) -> list[tuple[tuple[int, int, int], int]]:
    """Lines meeting P in at least ``min_points`` points, with their point counts."""
    if len(P) < 2:
        return []
    uniq, counts = _pair_lines(P)
    k = _points_from_pairs(counts)
    return [(tuple(int(v) for v in uniq[t]), int(k[t])) for t in np.nonzero(k >= min_points)[0]]


def check_star_property(P: PointSet, L: LineSet) -> bool:
    """Every line through three or more points of P belongs to L."""
    lines = set(L.lines)
    return all(ln in lines for ln, _ in collinear_classes(P, 3))


def points_per_line(P: PointSet, L: LineSet) -> list[int]:
    return [sum(1 for x, y in P.points if a * x + b * y == c) for a, b, c in L.lines]


# ---------------------------------------------------------------------------
# incidences

@dataclass
class IncidenceInstance:
    points: PointSet
    curves: list[Curve]
    incidences: int

    def to_json(self) -> dict:
        return {
            "points": self.points.to_json(),
            "curves": [c.to_json() for c in self.curves],
            "incidences": self.incidences,
        }


def count_incidences(points: PointSet, curves) -> int:
    total = 0
    n = len(points)
    for k, c in enumerate(curves):
        cov = c.covered
        if any(i < 0 or i >= n for i in cov) or len(set(cov)) != len(cov):
            raise ValueError(f"curve {k} has an inconsistent coverage list")
        total += len(cov)
    return total


def blow_up(S, n: int) -> IncidenceInstance:
    """Translate the cover S of the n x n grid, and the grid itself, by every grid vector.

    The points become {2..2n}^2, which has (2n - 1)^2 elements. For each shift
    the translated curves cover the translated grid, so the total number of
    incidences is at least n^2 * n^2.
    """
    G = grid_points((n, n))
    union = set()
    for c in S:
        union.update(c.covered)
    if union != set(range(len(G))):
        raise ValueError("S does not cover the n x n grid")
    pts = PointSet(2, tuple((x + a, y + b) for x, y in G.points for a, b in G.points))
    cache: dict = {}
    curves = []
    for c in S:
        for t in G.points:
            w = c.family.translate_witness(c.witness, t)
            curves.append(Curve(c.family, w, tuple(c.family.covered_indices(w, pts, cache))))
    return IncidenceInstance(pts, curves, count_incidences(pts, curves))


@dataclass
class FreedomReport:
    ok: bool
    k: int
    s: int
    max_pair_intersection: int
    max_multiplicity: int
    mode: str

    def __bool__(self):
        return self.ok


def check_freedom(curves, k: int, s: int, universe_size: int | None = None, seed: int = 0,
                  samples: int = 20000) -> FreedomReport:
    """Two curves share at most k points; any k points lie on at most s curves.

    Exhaustive when the point universe has at most ``CAPS.freedom_universe``
    points, otherwise k-subsets are sampled from the traces and the report says so.
    """
    traces = [frozenset(c.covered) for c in curves]
    if universe_size is None:
        universe_size = 1 + max((max(t) for t in traces if t), default=-1)
    max_pair = 0
    for A, B in itertools.combinations(traces, 2):
        max_pair = max(max_pair, len(A & B))
    counts: Counter = Counter()
    if universe_size <= CAPS.freedom_universe:
        mode = "exhaustive"
        for t in traces:
            counts.update(itertools.combinations(sorted(t), k))
        mult = max(counts.values(), default=0)
    else:
        mode = "sampled"
        rng = random.Random(seed)
        big = [sorted(t) for t in traces if len(t) >= k]
        mult = 0
        for _ in range(samples if big else 0):
            sub = set(rng.sample(rng.choice(big), k))
            mult = max(mult, sum(1 for t in traces if sub <= t))
    return FreedomReport(max_pair <= k and mult <= s, k, s, max_pair, mult, mode)


def bound_diagnostic(m: int, n: int, style: str = "pach-sharir", c: float = 0.0,
                     incidences: int | None = None) -> float:
    """Value of m^(2/3) n^(2/3) [log^c(mn)] + m + n, or incidences divided by it.

    The unknown leading constants are left out, so only ratios are meaningful.
    Floating point is deliberate: the expression is irrational.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    main = (m * n) ** (2.0 / 3.0)
    if style == "circle-conjecture":
        if c:
            main *= math.log(m * n) ** c
    elif style != "pach-sharir":
        raise ValueError(f"unknown style {style!r}")
    expr = main + m + n
    return expr if incidences is None else incidences / expr
