"""Rectilinear orthoconvex curves on the integer grid.

An orthoconvex curve with grid-point corners is the boundary of a convex
polyomino: a run of consecutive unit-cell columns, each column a single
interval of cells, consecutive intervals overlapping, with the column tops
rising then falling and the column bottoms falling then rising. Every change
of top or bottom between adjacent columns produces exactly one 270-degree
(inner) corner, so the inner-corner count is the number of such changes.

Two engines work on this encoding:

* :func:`enumerate_orthoconvex` lists every polygon in a box (capped).
* :func:`best_polygon` is a column dynamic program that finds a polygon whose
  boundary contains a required point set and carries maximum weight. It is the
  coverability predicate and the greedy/local-search oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .config import CAPS, CapExceeded
from .geometry import GridSpec, Point, orient

NEG = -(10**12)


@dataclass(frozen=True)
class RectilinearPolygon:
    """Closed rectilinear polygon; vertices counter-clockwise, no collinear runs."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = _simplify([tuple(v) for v in self.vertices])
        if len(vs) < 4:
            raise ValueError("a rectilinear polygon needs at least 4 corners")
        if _signed_area2(vs) < 0:
            vs = vs[::-1]
            vs = _rotate_min(vs)
        for a, b in zip(vs, vs[1:] + vs[:1]):
            if a[0] != b[0] and a[1] != b[1]:
                raise ValueError(f"edge {a}->{b} is not axis-parallel")
        object.__setattr__(self, "vertices", tuple(vs))
        if not self.is_simple():
            raise ValueError("polygon is self-intersecting")

    def edges(self):
        vs = self.vertices
        return list(zip(vs, vs[1:] + vs[:1]))

    def is_simple(self) -> bool:
        es = self.edges()
        n = len(es)
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    # adjacent edges share exactly their common corner
                    a, b = es[i]
                    c, d = es[j]
                    if _segments_overlap(a, b, c, d):
                        return False
                    continue
                if _segments_touch(*es[i], *es[j]):
                    return False
        return True

    def boundary_points(self) -> list[Point]:
        pts = []
        for (x0, y0), (x1, y1) in self.edges():
            if x0 == x1:
                step = 1 if y1 > y0 else -1
                pts.extend((x0, y) for y in range(y0, y1, step))
            else:
                step = 1 if x1 > x0 else -1
                pts.extend((x, y0) for x in range(x0, x1, step))
        return pts

    def contains_boundary(self, p: Sequence[int]) -> bool:
        p = tuple(p)
        for a, b in self.edges():
            if min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
                return True
        return False

    def inner_corners(self) -> list[Point]:
        vs = self.vertices
        n = len(vs)
        return [vs[i] for i in range(n) if orient(vs[i - 1], vs[i], vs[(i + 1) % n]) < 0]

    def cells(self) -> list[tuple[int, int]]:
        """Unit cells (lower-left corners) inside the polygon."""
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        out = []
        vedges = [(a, b) for a, b in self.edges() if a[0] == b[0]]
        for x in range(min(xs), max(xs)):
            for y in range(min(ys), max(ys)):
                # ray from the cell centre towards +x; count vertical edges crossed
                cross = 0
                for a, b in vedges:
                    if a[0] > x and min(a[1], b[1]) <= y < max(a[1], b[1]):
                        cross += 1
                if cross % 2:
                    out.append((x, y))
        return out

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, obj: dict) -> "RectilinearPolygon":
        return cls(tuple(tuple(v) for v in obj["vertices"]))


def _signed_area2(vs) -> int:
    return sum(a[0] * b[1] - b[0] * a[1] for a, b in zip(vs, vs[1:] + vs[:1]))


def _rotate_min(vs):
    k = vs.index(min(vs))
    return vs[k:] + vs[:k]


def _simplify(vs: list[Point]) -> list[Point]:
    out = []
    for v in vs:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        n = len(out)
        for i in range(n):
            a, b, c = out[i - 1], out[i], out[(i + 1) % n]
            if orient(a, b, c) == 0:
                del out[i]
                changed = True
                break
    return _rotate_min(out) if out else out


def _segments_touch(a, b, c, d) -> bool:
    return (
        max(min(a[0], b[0]), min(c[0], d[0])) <= min(max(a[0], b[0]), max(c[0], d[0]))
        and max(min(a[1], b[1]), min(c[1], d[1])) <= min(max(a[1], b[1]), max(c[1], d[1]))
    )


def _segments_overlap(a, b, c, d) -> bool:
    # axis-parallel segments sharing more than a single point
    if orient(a, b, c) or orient(a, b, d):
        return False
    lo = max(min(a[0], b[0]), min(c[0], d[0])), max(min(a[1], b[1]), min(c[1], d[1]))
    hi = min(max(a[0], b[0]), max(c[0], d[0])), min(max(a[1], b[1]), max(c[1], d[1]))
    return lo[0] <= hi[0] and lo[1] <= hi[1] and lo != hi


def polygon_from_columns(x0: int, columns: Sequence[tuple[int, int]]) -> RectilinearPolygon:
    """Boundary of the polyomino whose column ``x0 + i`` holds cells lo..hi."""
    bottom = []
    for i, (lo, _) in enumerate(columns):
        bottom += [(x0 + i, lo), (x0 + i + 1, lo)]
    top = []
    for i in range(len(columns) - 1, -1, -1):
        hi = columns[i][1] + 1
        top += [(x0 + i + 1, hi), (x0 + i, hi)]
    return RectilinearPolygon(tuple(bottom + top))


def columns_of(poly: RectilinearPolygon) -> tuple[int, list[tuple[int, int]]] | None:
    """Column intervals of the region, or None if some column is not an interval."""
    cells = poly.cells()
    if not cells:
        return None
    bycol: dict[int, list[int]] = {}
    for x, y in cells:
        bycol.setdefault(x, []).append(y)
    xs = sorted(bycol)
    if xs != list(range(xs[0], xs[-1] + 1)):
        return None
    cols = []
    for x in xs:
        ys = sorted(bycol[x])
        if ys != list(range(ys[0], ys[-1] + 1)):
            return None
        cols.append((ys[0], ys[-1]))
    return xs[0], cols


def _profile_ok(cols: Sequence[tuple[int, int]]) -> bool:
    tops = [h for _, h in cols]
    bots = [lo for lo, _ in cols]

    def unimodal(seq):
        i = 0
        while i + 1 < len(seq) and seq[i + 1] >= seq[i]:
            i += 1
        while i + 1 < len(seq) and seq[i + 1] <= seq[i]:
            i += 1
        return i == len(seq) - 1

    if not unimodal(tops) or not unimodal([-b for b in bots]):
        return False
    return all(max(a[0], b[0]) <= min(a[1], b[1]) for a, b in zip(cols, cols[1:]))


def is_orthoconvex(poly: RectilinearPolygon) -> bool:
    got = columns_of(poly)
    return got is not None and _profile_ok(got[1])


def inner_corner_count(poly: RectilinearPolygon) -> int:
    """Number of 270-degree turns along the boundary."""
    if not isinstance(poly, RectilinearPolygon):
        raise TypeError("inner corners are defined for rectilinear polygons")
    return len(poly.inner_corners())


# ---------------------------------------------------------------------------
# interval tables

@lru_cache(maxsize=None)
def _tables(H: int):
    """Transition tables for boxes of H cell rows.

    Interval index nI is the empty column. Returns (lo, hi, bnd, trans, dq) where
    bnd[I, J, y] says lattice row y is on the boundary between a column holding
    I and the next holding J; trans[s, s2] is an (nI, nI) mask of legal column
    steps from phase s to s2 (phase = 2 * top_falling + bottom_rising).
    """
    ivs = [(lo, hi) for lo in range(H) for hi in range(lo, H)]
    nI = len(ivs)
    lo = np.array([a for a, _ in ivs] + [H + 5])
    hi = np.array([b for _, b in ivs] + [-5])
    ys = np.arange(H + 1)
    inside_up = (lo[:, None] <= ys[None, :]) & (ys[None, :] <= hi[:, None])  # cell row y
    inside_dn = (lo[:, None] <= ys[None, :] - 1) & (ys[None, :] - 1 <= hi[:, None])  # cell row y-1
    per_col = inside_up.astype(np.int8) + inside_dn.astype(np.int8)
    count = per_col[:, None, :] + per_col[None, :, :]
    bnd = (count >= 1) & (count <= 3)

    loI, hiI = lo[:nI, None], hi[:nI, None]
    loJ, hiJ = lo[None, :nI], hi[None, :nI]
    overlap = np.maximum(loI, loJ) <= np.minimum(hiI, hiJ)
    dt = np.sign(hiJ - hiI)
    db = np.sign(loJ - loI)
    dq = (dt != 0).astype(np.int64) + (db != 0).astype(np.int64)
    trans = np.zeros((4, 4, nI, nI), dtype=bool)
    for s in range(4):
        tf, br = divmod(s, 2)
        for s2 in range(4):
            tf2, br2 = divmod(s2, 2)
            if tf == 0:
                top_ok = ((dt > 0) & (tf2 == 0)) | ((dt < 0) & (tf2 == 1)) | ((dt == 0) & (tf2 == 0))
            else:
                top_ok = ((dt < 0) | (dt == 0)) & (tf2 == 1)
            if br == 0:
                bot_ok = ((db < 0) & (br2 == 0)) | ((db > 0) & (br2 == 1)) | ((db == 0) & (br2 == 0))
            else:
                bot_ok = ((db > 0) | (db == 0)) & (br2 == 1)
            trans[s, s2] = overlap & top_ok & bot_ok
    return lo, hi, bnd, trans, dq


def best_polygon(
    W: int,
    H: int,
    required: np.ndarray | None = None,
    weights: np.ndarray | None = None,
    max_corners: int | None = None,
):
    """Column DP over a box of W x H unit cells (lattice points 0..W x 0..H).

    ``required`` and ``weights`` are (W+1, H+1) arrays indexed by lattice point.
    Returns ``(value, x0, columns)`` for a polygon whose boundary contains every
    required point, has at most ``max_corners`` inner corners and maximises the
    total weight of its boundary points; ``None`` if no polygon qualifies.
    Ties resolve to the first optimum in column/interval order.
    """
    if W < 1 or H < 1:
        return None
    lo, hi, bnd, trans, dq = _tables(H)
    nI = len(lo) - 1
    E = nI
    req = np.zeros((W + 1, H + 1), dtype=bool) if required is None else required.astype(bool)
    w = np.zeros((W + 1, H + 1), dtype=np.int64) if weights is None else weights.astype(np.int64)
    K = max_corners
    Q = 1 if K is None else K + 1

    req_cols = req.any(axis=1)
    first_req = int(np.argmax(req_cols)) if req_cols.any() else W + 1
    last_req = int(W - np.argmax(req_cols[::-1])) if req_cols.any() else -1

    notb = (~bnd).astype(np.int64)
    bnd64 = bnd.astype(np.int64)

    def line_tables(x):
        G = bnd64 @ w[x]
        F = (notb @ req[x].astype(np.int64)) == 0
        return G, F

    # V[s, q, I]; pointers per column
    V = np.full((4, Q, nI), NEG, dtype=np.int64)
    back = []
    best = (NEG, None)
    for c in range(W):
        G, F = line_tables(c)
        newV = np.full((4, Q, nI), NEG, dtype=np.int64)
        ptr = np.full((4, Q, nI, 3), -1, dtype=np.int64)  # (s, q, I) of predecessor; s=-1 start
        if c <= first_req:
            start = np.where(F[E, :nI], G[E, :nI], NEG)
            newV[0, 0] = start
            # ptr stays -1 for starts
        if c > 0 and (V > NEG).any():
            GI = G[:nI, :nI]
            FI = F[:nI, :nI]
            for s in range(4):
                for q in range(Q):
                    row = V[s, q]
                    if not (row > NEG).any():
                        continue
                    base = row[:, None] + GI
                    for s2 in range(4):
                        M = trans[s, s2] & FI
                        if K is None:
                            masks = [(0, M)]
                        else:
                            masks = [(d, M & (dq == d)) for d in range(3) if q + d <= K]
                        for d, Md in masks:
                            if not Md.any():
                                continue
                            cand = np.where(Md, base, NEG)
                            arg = cand.argmax(axis=0)
                            val = cand[arg, np.arange(nI)]
                            tgt = q + d
                            better = val > newV[s2, tgt]
                            if better.any():
                                newV[s2, tgt] = np.where(better, val, newV[s2, tgt])
                                ptr[s2, tgt, better] = np.stack(
                                    [np.full(better.sum(), s), np.full(better.sum(), q), arg[better]], axis=1
                                )
        back.append(ptr)
        V = newV
        # close the polygon after column c
        if c + 1 >= last_req:
            G2, F2 = line_tables(c + 1)
            close = np.where(F2[:nI, E], G2[:nI, E], NEG)
            tot = V + close[None, None, :]
            k = int(tot.argmax())
            if tot.flat[k] > best[0]:
                s, q, I = np.unravel_index(k, tot.shape)
                best = (int(tot.flat[k]), (c, int(s), int(q), int(I)))
    if best[1] is None:
        return None
    value, (c, s, q, I) = best
    cols = []
    while True:
        cols.append((int(lo[I]), int(hi[I])))
        ps, pq, pI = back[c][s, q, I]
        if ps < 0:
            break
        s, q, I, c = int(ps), int(pq), int(pI), c - 1
    cols.reverse()
    return value, c, cols


def _box_arrays(points: Iterable[Point], x0: int, y0: int, W: int, H: int):
    arr = np.zeros((W + 1, H + 1), dtype=bool)
    for x, y in points:
        arr[x - x0, y - y0] = True
    return arr


def find_covering_polygon(points: Sequence[Point], max_corners: int | None = None) -> RectilinearPolygon | None:
    """A polygon with <= max_corners inner corners whose boundary holds all points.

    The search box is the bounding box of the points padded by one unit, which
    loses nothing: clipping any witness to that box keeps the points on the
    boundary and never adds inner corners.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, y0 = min(xs) - 1, min(ys) - 1
    W, H = max(xs) - x0 + 1, max(ys) - y0 + 1
    if max(W, H) + 1 > CAPS.ortho_dp_side:
        raise CapExceeded(f"orthoconvex box side {max(W, H) + 1} above cap {CAPS.ortho_dp_side}")
    req = _box_arrays(pts, x0, y0, W, H)
    got = best_polygon(W, H, required=req, max_corners=max_corners)
    if got is None:
        return None
    _, cx, cols = got
    return polygon_from_columns(x0 + cx, [(lo + y0, hi + y0) for lo, hi in cols])


def max_weight_polygon(
    host: Sequence[Point], weights: Sequence[int], max_corners: int | None = None, pad: int = 1
) -> tuple[int, RectilinearPolygon] | None:
    """Polygon maximising the summed weight of host points on its boundary."""
    xs = [p[0] for p in host]
    ys = [p[1] for p in host]
    x0, y0 = min(xs) - pad, min(ys) - pad
    W, H = max(xs) - x0 + pad, max(ys) - y0 + pad
    if max(W, H) + 1 > CAPS.ortho_dp_side:
        raise CapExceeded(f"orthoconvex box side {max(W, H) + 1} above cap {CAPS.ortho_dp_side}")
    w = np.zeros((W + 1, H + 1), dtype=np.int64)
    for (x, y), wt in zip(host, weights):
        w[x - x0, y - y0] = wt
    got = best_polygon(W, H, weights=w, max_corners=max_corners)
    if got is None:
        return None
    val, cx, cols = got
    return val, polygon_from_columns(x0 + cx, [(lo + y0, hi + y0) for lo, hi in cols])


# ---------------------------------------------------------------------------
# enumeration

def enumerate_orthoconvex(box: GridSpec | Sequence[int], max_inner_corners: int | None = None) -> list[RectilinearPolygon]:
    """Every simple orthoconvex polygon with grid-point corners inside the box.

    The box is a 2D grid of points [1..k1] x [1..k2]. Polygons have positive
    width and height and at most ``max_inner_corners`` reflex corners
    (``None`` = unbounded).
    """
    if not isinstance(box, GridSpec):
        box = GridSpec(tuple(box))
    if box.d != 2:
        raise ValueError("orthoconvex enumeration is planar")
    k1, k2 = box.dims
    cap = CAPS.ortho_enum_bounded if max_inner_corners is not None and max_inner_corners <= 2 else CAPS.ortho_enum_unbounded
    if max(k1, k2) > cap:
        raise CapExceeded(f"box {box} above orthoconvex enumeration cap {cap}")
    return [polygon_from_columns(1 + x0, [(lo + 1, hi + 1) for lo, hi in cols])
            for x0, cols in iter_polyominoes(k1 - 1, k2 - 1, max_inner_corners)]


def iter_polyominoes(W: int, H: int, max_corners: int | None = None):
    """Yield ``(x0, columns)`` for every convex polyomino in a W x H cell box."""
    if W < 1 or H < 1:
        return
    ivs = [(lo, hi) for lo in range(H) for hi in range(lo, H)]
    K = max_corners

    def extend(x0, cols, tf, br, q):
        yield cols
        if x0 + len(cols) >= W:
            return
        plo, phi = cols[-1]
        for lo, hi in ivs:
            if max(lo, plo) > min(hi, phi):
                continue
            dt = (hi > phi) - (hi < phi)
            db = (lo > plo) - (lo < plo)
            if dt > 0 and tf:
                continue
            if db < 0 and br:
                continue
            nq = q + (dt != 0) + (db != 0)
            if K is not None and nq > K:
                continue
            yield from extend(x0, cols + [(lo, hi)], tf or dt < 0, br or db > 0, nq)

    for x0 in range(W):
        for iv in ivs:
            for cols in extend(x0, [iv], False, False, 0):
                yield x0, list(cols)


# ---------------------------------------------------------------------------
# hits, exposure, good sequences

def _polygon_of(c) -> RectilinearPolygon:
    if isinstance(c, RectilinearPolygon):
        return c
    poly = getattr(c, "polygon", None)
    if isinstance(poly, RectilinearPolygon):
        return poly
    raise TypeError("grid-line hits are defined for rectilinear curves only")


def grid_lines_hit(c, grid: GridSpec | Sequence[int]) -> set[tuple[str, int]]:
    """Grid lines along which the curve runs for positive length inside the grid.

    Ids are ``("h", y)`` for horizontal lines and ``("v", x)`` for vertical ones.
    """
    if not isinstance(grid, GridSpec):
        grid = GridSpec(tuple(grid))
    k1, k2 = grid.dims
    poly = _polygon_of(c)
    hits = set()
    for a, b in poly.edges():
        if a[1] == b[1]:
            y = a[1]
            lo, hi = max(min(a[0], b[0]), 1), min(max(a[0], b[0]), k1)
            if 1 <= y <= k2 and lo < hi:
                hits.add(("h", y))
        else:
            x = a[0]
            lo, hi = max(min(a[1], b[1]), 1), min(max(a[1], b[1]), k2)
            if 1 <= x <= k1 and lo < hi:
                hits.add(("v", x))
    return hits


def _covered(curves, grid: GridSpec) -> set[Point]:
    k1, k2 = grid.dims
    out = set()
    for c in curves:
        for x, y in _polygon_of(c).boundary_points():
            if 1 <= x <= k1 and 1 <= y <= k2:
                out.add((x, y))
    return out


def exposed_points(curves, grid: GridSpec | Sequence[int]) -> set[Point]:
    """Uncovered grid points lying on a hit horizontal and a hit vertical line."""
    if not isinstance(grid, GridSpec):
        grid = GridSpec(tuple(grid))
    hits = set()
    for c in curves:
        hits |= grid_lines_hit(c, grid)
    rows = [y for kind, y in hits if kind == "h"]
    cols = [x for kind, x in hits if kind == "v"]
    covered = _covered(curves, grid)
    return {(x, y) for x in cols for y in rows if (x, y) not in covered}


def bbox_corners(curves) -> list[Point]:
    xs, ys = [], []
    for c in curves:
        for v in _polygon_of(c).vertices:
            xs.append(v[0])
            ys.append(v[1])
    return [(min(xs), min(ys)), (max(xs), min(ys)), (max(xs), max(ys)), (min(xs), max(ys))]


def is_good_sequence(curves, grid: GridSpec | Sequence[int]) -> bool:
    """Each curve after the first hits a line already hit by its predecessors."""
    if not isinstance(grid, GridSpec):
        grid = GridSpec(tuple(grid))
    seen: set = set()
    for i, c in enumerate(curves):
        h = grid_lines_hit(c, grid)
        if i and not (h & seen):
            return False
        seen |= h
    return True
