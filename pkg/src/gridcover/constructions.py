"""Explicit covers with closed-form counts.

Axis line covers, skew-line covers, minimum chain decompositions (monotone
curves), nested box rings (convex curves), concentric circles, onion peeling
(strictly convex curves) and horizontal line bundles (low-degree curves).
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .families import (
    AlgebraicMaxDeg,
    Circle,
    ClosedConvex,
    Curve,
    Line,
    Monotone,
    SkewLine,
    StrictlyConvex,
    canonical_line,
    leq,
    make_curve,
)
from .geometry import GridSpec, PointSet, grid_points, orient, primitive
from .solver import Cover, cover_from_curves


def _spec(spec) -> GridSpec:
    return spec if isinstance(spec, GridSpec) else GridSpec(tuple(spec))


# ---------------------------------------------------------------------------
# lines

def line_cover_count(spec) -> int:
    dims = _spec(spec).dims
    return min(math.prod(dims) // k for k in dims)


def line_cover_grid(spec) -> Cover:
    """Parallel axis lines along the longest side (smallest index on ties)."""
    spec = _spec(spec)
    P = grid_points(spec)
    dims = spec.dims
    axis = max(range(spec.d), key=lambda i: (dims[i], -i))
    direction = tuple(1 if i == axis else 0 for i in range(spec.d))
    fam = Line()
    curves = []
    cache: dict = {}
    for p in P.points:
        if p[axis] == 1:
            w = {"point": p, "direction": direction}
            curves.append(Curve(fam, w, tuple(fam.covered_indices(w, P, cache))))
    return cover_from_curves(P, curves, method="axis lines")


def skew_line_cover(n: int) -> Cover:
    """2n - 2 skew lines: anti-diagonals x + y = c for 3 <= c <= 2n - 1, plus y = x."""
    if n < 2:
        raise ValueError("the skew-line construction needs n >= 2")
    P = grid_points((n, n))
    fam = SkewLine()
    ws = [{"point": (1, c - 1) if c - 1 <= n else (c - n, n), "direction": (1, -1)} for c in range(3, 2 * n)]
    ws.append({"point": (1, 1), "direction": (1, 1)})
    return cover_from_curves(P, [make_curve(fam, w, P) for w in ws], method="skew lines")


def max_points_on_line(spec) -> int:
    return max(_spec(spec).dims)


def max_collinear_exhaustive(P: PointSet) -> int:
    """Largest collinear subset, by grouping the partners of each point by direction."""
    pts = P.points
    if len(pts) <= 2:
        return len(pts)
    best = 2
    for i, p in enumerate(pts):
        counts: dict = {}
        for q in pts[i + 1:]:
            v = primitive([b - a for a, b in zip(p, q)])
            counts[v] = counts.get(v, 0) + 1
        if counts:
            best = max(best, 1 + max(counts.values()))
    return best


# ---------------------------------------------------------------------------
# monotone curves

@dataclass(frozen=True)
class ChainDecomposition:
    pointset: PointSet
    chains: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.chains)

    def is_valid(self) -> bool:
        """Chains are increasing, pairwise disjoint and cover the point set."""
        seen = [i for c in self.chains for i in c]
        if sorted(seen) != list(range(len(self.pointset))):
            return False
        pts = self.pointset.points
        return all(leq(pts[a], pts[b]) and a != b for c in self.chains for a, b in zip(c, c[1:]))

    def to_cover(self) -> Cover:
        fam = Monotone()
        P = self.pointset
        curves = [Curve(fam, {"chain": tuple(P[i] for i in c)}, tuple(sorted(c))) for c in self.chains]
        return Cover(P, curves, disjoint=True, method="chain decomposition")


def _chains_2d(P: PointSet) -> list[list[int]]:
    # points sorted by (x, y): append each point to the chain whose last y is the
    # largest value <= its y; this greedy is optimal for the planar dominance order
    tails: list[int] = []  # last y of each chain, kept sorted
    owner: list[int] = []  # chain index for each tail slot
    chains: list[list[int]] = []
    for i, (x, y) in enumerate(P.points):
        k = bisect.bisect_right(tails, y) - 1
        if k < 0:
            chains.append([i])
            tails.insert(0, y)
            owner.insert(0, len(chains) - 1)
        else:
            c = owner[k]
            chains[c].append(i)
            tails.pop(k)
            owner.pop(k)
            j = bisect.bisect_right(tails, y)
            tails.insert(j, y)
            owner.insert(j, c)
    return chains


def _chains_matching(P: PointSet) -> list[list[int]]:
    n = len(P)
    X = np.array(P.points, dtype=np.int64)
    rows, cols = [], []
    for i in range(n):
        ok = np.all(X[i] <= X, axis=1)
        ok[i] = False
        js = np.nonzero(ok)[0]
        rows.append(np.full(len(js), i, dtype=np.int32))
        cols.append(js.astype(np.int32))
    r = np.concatenate(rows) if rows else np.zeros(0, np.int32)
    c = np.concatenate(cols) if cols else np.zeros(0, np.int32)
    G = csr_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n))
    succ = maximum_bipartite_matching(G, perm_type="column")  # succ[i] = matched successor or -1
    has_pred = np.zeros(n, dtype=bool)
    has_pred[succ[succ >= 0]] = True
    chains = []
    for s in range(n):
        if has_pred[s]:
            continue
        chain = [s]
        while succ[chain[-1]] >= 0:
            chain.append(int(succ[chain[-1]]))
        chains.append(chain)
    return chains


def monotone_cover(P: PointSet, method: str = "auto") -> ChainDecomposition:
    """Minimum chain decomposition under coordinate-wise <=.

    ``"matching"`` computes a maximum matching in the bipartite comparability
    graph (minimum path cover of the transitive closure). ``"greedy2d"`` is an
    exact planar shortcut. ``"auto"`` uses the shortcut for d <= 2.
    """
    if method == "auto":
        method = "greedy2d" if P.d <= 2 else "matching"
    if method == "greedy2d":
        if P.d > 2:
            raise ValueError("the planar greedy needs d <= 2")
        if P.d == 1:
            chains = [list(range(len(P)))] if len(P) else []
        else:
            chains = _chains_2d(P)
    elif method == "matching":
        chains = _chains_matching(P) if len(P) else []
    else:
        raise ValueError(f"unknown method {method!r}")
    return ChainDecomposition(P, tuple(tuple(c) for c in chains))


@dataclass(frozen=True)
class RankProfile:
    """``A[m]`` counts grid points with coordinate sum m, for m = d .. sum(k)."""

    dims: tuple[int, ...]
    counts: tuple[int, ...]

    @property
    def offset(self) -> int:
        return len(self.dims)

    def __getitem__(self, m: int) -> int:
        i = m - self.offset
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    def middle_rank(self) -> int:
        return (sum(self.dims) + len(self.dims)) // 2

    def is_symmetric(self) -> bool:
        return self.counts == self.counts[::-1]

    def is_unimodal(self) -> bool:
        c = self.counts
        k = c.index(max(c))
        return all(a <= b for a, b in zip(c[:k], c[1:k + 1])) and all(a >= b for a, b in zip(c[k:], c[k + 1:]))


def rank_profile(spec) -> RankProfile:
    dims = _spec(spec).dims
    prof = [1]
    for k in dims:
        new = [0] * (len(prof) + k - 1)
        for i, a in enumerate(prof):
            for j in range(k):
                new[i + j] += a
        prof = new
    return RankProfile(dims, tuple(prof))


def grid_width_formula(spec) -> tuple[int, RankProfile]:
    """Width of the grid poset read off the middle rank of its profile."""
    prof = rank_profile(spec)
    return prof[prof.middle_rank()], prof


def grid_chain_labels(spec) -> tuple[np.ndarray, np.ndarray]:
    """Chain id and position for every grid point (row-major order), built by products.

    A chain c_0 < ... < c_{l-1} times [k] splits into min(l, k) hooks; hook t is
    (c_t, 0..k-1-t) followed by (c_{t+1..l-1}, k-1-t). Starting from a single
    chain and taking products keeps every chain symmetric, so the number of
    chains is the grid's width.
    """
    dims = _spec(spec).dims
    cid = np.zeros(1, dtype=np.int64)
    pos = np.zeros(1, dtype=np.int64)
    lengths = np.ones(1, dtype=np.int64)
    for k in dims:
        j = np.arange(k, dtype=np.int64)[None, :]
        a = pos[:, None]
        t = np.minimum(a, k - 1 - j)
        first = a <= k - 1 - j
        new_pos = np.where(first, j, (k - 1 - t) + (a - t))
        per_chain = np.minimum(lengths, k)
        offset = np.concatenate(([0], np.cumsum(per_chain)[:-1]))
        new_cid = offset[cid][:, None] + t
        # new chain lengths: hook t of an l-chain has (k - t) + (l - 1 - t) points
        tt = np.arange(int(per_chain.max()), dtype=np.int64)
        lens = (k - tt)[None, :] + (lengths[:, None] - 1 - tt[None, :])
        mask = tt[None, :] < per_chain[:, None]
        lengths = lens[mask]
        cid = new_cid.reshape(-1)
        pos = new_pos.reshape(-1)
    return cid, pos


def grid_chain_count(spec) -> int:
    """Number of product-construction chains, from chain lengths alone."""
    lengths = np.ones(1, dtype=np.int64)
    for k in _spec(spec).dims:
        per = np.minimum(lengths, k)
        tt = np.arange(int(per.max()), dtype=np.int64)
        lens = (k - tt)[None, :] + (lengths[:, None] - 1 - tt[None, :])
        lengths = lens[tt[None, :] < per[:, None]]
    return int(len(lengths))


def check_grid_chains(spec) -> tuple[bool, int]:
    """Validate the product chains on the grid: (valid, number of chains)."""
    dims = _spec(spec).dims
    cid, pos = grid_chain_labels(dims)
    n = len(cid)
    coords = np.stack(np.unravel_index(np.arange(n), dims), axis=1)
    order = np.lexsort((pos, cid))
    c, p, X = cid[order], pos[order], coords[order]
    same = c[1:] == c[:-1]
    starts = np.concatenate(([True], ~same))
    ok = bool(np.all(p[starts] == 0)) and bool(np.all(p[1:][same] == p[:-1][same] + 1))
    if np.any(same):
        ok = ok and bool(np.all(X[1:][same] >= X[:-1][same]))
    count = int(c.max()) + 1 if n else 0
    ok = ok and len(np.unique(cid)) == count
    return ok, count


# ---------------------------------------------------------------------------
# convex rings

def convex_ring_count(spec) -> int:
    return min((k + 1) // 2 for k in _spec(spec).dims)


def convex_ring_cover(spec) -> Cover:
    """Boundaries of the nested boxes [j, k_i + 1 - j], j = 1 .. min ceil(k_i / 2)."""
    spec = _spec(spec)
    if spec.d < 2:
        raise ValueError("rings need d >= 2")
    P = grid_points(spec)
    fam = ClosedConvex()
    curves = []
    for j in range(1, convex_ring_count(spec) + 1):
        w = {"lo": tuple(j for _ in spec.dims), "hi": tuple(k + 1 - j for k in spec.dims)}
        curves.append(make_curve(fam, w, P))
    return cover_from_curves(P, curves, method="box rings")


# ---------------------------------------------------------------------------
# circles

def concentric_circle_count(n: int) -> int:
    """1 + number of distinct nonzero a^2 + b^2 with 0 <= a, b < n."""
    a = np.arange(n, dtype=np.int64)
    s = np.unique((a[:, None] ** 2 + a[None, :] ** 2).ravel())
    return 1 + int(np.count_nonzero(s))


CORNER_CIRCLE = {"center": (Fraction(0), Fraction(1)), "r2": Fraction(1)}


def concentric_circle_cover(n: int) -> Cover:
    """Circles about the corner (1, 1) through every grid point, plus one circle through the corner."""
    if n < 1:
        raise ValueError("n must be >= 1")
    P = grid_points((n, n))
    fam = Circle()
    groups: dict[int, list[int]] = {}
    for i, (x, y) in enumerate(P.points):
        s = (x - 1) ** 2 + (y - 1) ** 2
        if s:
            groups.setdefault(s, []).append(i)
    c0 = (Fraction(1), Fraction(1))
    curves = [Curve(fam, {"center": c0, "r2": Fraction(s)}, tuple(ix)) for s, ix in sorted(groups.items())]
    curves.append(Curve(fam, dict(CORNER_CIRCLE), (P.index[(1, 1)],)))
    return cover_from_curves(P, curves, method="concentric circles")


# ---------------------------------------------------------------------------
# strictly convex peeling

def _hull_vertices_sorted(pts: list) -> list:
    # monotone chain over points already sorted lexicographically
    if len(pts) <= 2:
        return list(pts)
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def peel_layers(P: PointSet) -> list[list]:
    """Onion layers: repeatedly remove the strict hull vertices."""
    rest = list(P.points)
    layers = []
    while rest:
        verts = _hull_vertices_sorted(rest)
        layers.append(verts)
        vs = set(verts)
        rest = [p for p in rest if p not in vs]
    return layers


def strictly_convex_peel(n: int) -> Cover:
    if n < 1:
        raise ValueError("n must be >= 1")
    P = grid_points((n, n))
    fam = StrictlyConvex()
    curves = [make_curve(fam, {"vertices": tuple(layer)}, P) for layer in peel_layers(P)]
    return cover_from_curves(P, curves, method="onion peeling")


# ---------------------------------------------------------------------------
# line bundles

def algebraic_bundle_cover(n: int, k: int) -> Cover:
    """ceil(n / k) bundles of at most k horizontal lines y = c on the n x n grid."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    P = grid_points((n, n))
    fam = AlgebraicMaxDeg(k)
    curves = []
    for start in range(1, n + 1, k):
        lines = tuple(canonical_line(0, 1, c) for c in range(start, min(start + k, n + 1)))
        curves.append(make_curve(fam, {"lines": lines}, P))
    return cover_from_curves(P, curves, method="line bundles")


def verify_vanishing(lines: Sequence[tuple[int, int, int]], P: PointSet) -> list[bool]:
    """Per point: does the product of the line forms a*x + b*y - c vanish there?

    An integer product is zero exactly when one factor is, so the factors are
    tested individually (no overflow, same answer).
    """
    if not len(P):
        return []
    X = np.array(P.points, dtype=np.int64)
    zero = np.zeros(len(X), dtype=bool)
    for a, b, c in lines:
        zero |= a * X[:, 0] + b * X[:, 1] - c == 0
    return zero.tolist()
