"""Exact integer/rational geometry: points, grids, orientation and hull tests.

Points are plain tuples of Python ints. Rationals are :class:`fractions.Fraction`.
Nothing in here touches floating point.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .config import CAPS, CapExceeded

Point = tuple[int, ...]

VERTEX = "vertex"
EDGE = "edge-interior"
INTERIOR = "strict-interior"


def as_point(coords: Iterable[int]) -> Point:
    p = tuple(coords)
    if not p:
        raise ValueError("a point needs at least one coordinate")
    for c in p:
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"coordinates must be integers, got {c!r}")
    return p


def _check_dims(*pts: Point) -> int:
    d = len(pts[0])
    for p in pts[1:]:
        if len(p) != d:
            raise ValueError(f"dimension mismatch: {len(p)} != {d}")
    return d


def rat_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(s: str | int) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s)


@dataclass(frozen=True)
class GridSpec:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(k) for k in self.dims)
        if not dims:
            raise ValueError("grid needs at least one dimension")
        if any(k < 1 for k in dims):
            raise ValueError(f"grid dimensions must be >= 1: {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``"5x5"`` / ``"3x3x3"`` / ``"7"``."""
        parts = text.lower().replace("×", "x").split("x")
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad grid spec {text!r}") from exc

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    def __str__(self):
        return "x".join(map(str, self.dims))


@dataclass(frozen=True)
class PointSet:
    """Sorted, duplicate-free point set. A point's index is its sorted position."""

    d: int
    points: tuple[Point, ...] = field(default=())

    def __post_init__(self):
        pts = sorted(set(as_point(p) for p in self.points))
        for p in pts:
            if len(p) != self.d:
                raise ValueError(f"point {p} does not have dimension {self.d}")
        if self.d > CAPS.max_dim:
            raise CapExceeded(f"dimension {self.d} above cap {CAPS.max_dim}")
        if len(pts) > CAPS.max_points:
            raise CapExceeded(f"{len(pts)} points above cap {CAPS.max_points}")
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def of(cls, points: Iterable[Sequence[int]]) -> "PointSet":
        pts = [as_point(p) for p in points]
        if not pts:
            raise ValueError("cannot infer dimension of an empty point list")
        return cls(len(pts[0]), tuple(pts))

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __contains__(self, p) -> bool:
        return tuple(p) in self.index

    def subset(self, indices: Iterable[int]) -> list[Point]:
        return [self.points[i] for i in indices]

    def bbox(self) -> tuple[Point, Point]:
        lo = tuple(min(p[k] for p in self.points) for k in range(self.d))
        hi = tuple(max(p[k] for p in self.points) for k in range(self.d))
        return lo, hi

    def to_json(self) -> dict:
        return {"d": self.d, "points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, obj: dict) -> "PointSet":
        return cls(int(obj["d"]), tuple(tuple(p) for p in obj["points"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def grid_points(spec: GridSpec | Sequence[int]) -> PointSet:
    """All points of [k1] x ... x [kd], 1-indexed."""
    if not isinstance(spec, GridSpec):
        spec = GridSpec(tuple(spec))
    if spec.size > CAPS.max_points:
        raise CapExceeded(f"grid {spec} has {spec.size} points, cap is {CAPS.max_points}")
    pts = itertools.product(*(range(1, k + 1) for k in spec.dims))
    return PointSet(spec.d, tuple(pts))


def orient(a: Point, b: Point, c: Point) -> int:
    """Twice the signed area of triangle abc (2D)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def collinear(a: Point, b: Point, c: Point) -> bool:
    """True iff c-a and b-a are linearly dependent (every 2x2 minor vanishes)."""
    d = _check_dims(a, b, c)
    u = [b[i] - a[i] for i in range(d)]
    v = [c[i] - a[i] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            if u[i] * v[j] - u[j] * v[i]:
                return False
    return True


def concyclic4(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff d lies on the circle through a, b, c (exact in-circle determinant)."""
    if _check_dims(a, b, c, d) != 2:
        raise ValueError("concyclic4 is planar")
    if collinear(a, b, c):
        raise ValueError("defining triple is collinear")
    rows = []
    for p in (a, b, c):
        dx, dy = p[0] - d[0], p[1] - d[1]
        rows.append((dx, dy, dx * dx + dy * dy))
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    det = a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)
    return det == 0


def circumcircle(a: Point, b: Point, c: Point) -> tuple[tuple[Fraction, Fraction], Fraction]:
    """Rational center and squared radius of the circle through three points."""
    if collinear(a, b, c):
        raise ValueError("collinear points have no circumcircle")
    ax, ay = a
    bx, by = b
    cx, cy = c
    den = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = Fraction(a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by), den)
    uy = Fraction(a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax), den)
    r2 = (ax - ux) ** 2 + (ay - uy) ** 2
    return (ux, uy), r2


def dist2(p: Sequence, q: Sequence) -> Fraction | int:
    return sum((x - y) ** 2 for x, y in zip(p, q))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Direction with gcd 1 and first nonzero coordinate positive."""
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no direction")
    v = [x // g for x in v]
    for x in v:
        if x:
            if x < 0:
                v = [-y for y in v]
            break
    return tuple(v)


def line_key(p: Point, q: Point) -> tuple[tuple[int, ...], Point]:
    """Canonical identity of the line through two distinct lattice points.

    The anchor is the lattice point of the line whose coordinate along the first
    nonzero direction component lies in ``[0, |v_i|)``.
    """
    v = primitive([b - a for a, b in zip(p, q)])
    i = next(k for k, x in enumerate(v) if x)
    t = p[i] // v[i]
    anchor = tuple(pc - t * vc for pc, vc in zip(p, v))
    return v, anchor


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Strict hull vertices in counter-clockwise order (collinear points dropped).

    A collinear input returns its two endpoints; a single point returns itself.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def on_segment(a: Point, b: Point, p: Point) -> bool:
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def hull_classify(points: Sequence[Point]) -> list[str]:
    """Label each point relative to the convex hull of the whole set.

    Labels are ``"vertex"``, ``"edge-interior"`` or ``"strict-interior"``; the
    output is aligned with the input order. Collinear sets never produce
    strict-interior labels.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return []
    if len(pts[0]) != 2:
        raise ValueError("hull_classify is planar")
    hull = convex_hull(pts)
    verts = set(hull)
    if len(hull) <= 2:
        return [VERTEX if p in verts else EDGE for p in pts]
    edges = list(zip(hull, hull[1:] + hull[:1]))
    labels = []
    for p in pts:
        if p in verts:
            labels.append(VERTEX)
        elif any(orient(a, b, p) == 0 for a, b in edges):
            # p is inside or on the hull, so zero orientation means on that edge
            labels.append(EDGE)
        else:
            labels.append(INTERIOR)
    return labels


def translate(points: Iterable[Point], t: Sequence[int]) -> list[Point]:
    return [tuple(a + b for a, b in zip(p, t)) for p in points]
