"""Curve families: coverability predicates, witnesses and candidate curves.

Each family answers "can one curve of this family pass through exactly this
point subset?" (:meth:`CurveFamily.coverable`), builds an exact witness for a
coverable subset, and recomputes which host points lie on a witness. All
predicates are hereditary: a subset of a coverable set is coverable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Iterable, Sequence

from .config import CAPS, CapExceeded
from .geometry import (
    VERTEX,
    INTERIOR,
    Point,
    PointSet,
    circumcircle,
    collinear,
    convex_hull,
    hull_classify,
    line_key,
    on_segment,
    orient,
    parse_rat,
    primitive,
    rat_str,
)
from . import orthoconvex as ortho


class CoverabilityUnknown(RuntimeError):
    """The predicate cannot decide this instance within its caps."""


# ---------------------------------------------------------------------------
# Curve

@dataclass(frozen=True)
class Curve:
    """A witness of some family plus the sorted host indices lying on it."""

    family: "CurveFamily"
    witness: dict
    covered: tuple[int, ...]

    @property
    def polygon(self):
        return self.witness.get("polygon")

    def to_json(self) -> dict:
        params = dict(self.family.params_json())
        params.update(self.family.witness_json(self.witness))
        return {"family": self.family.name, "params": params, "covers": list(self.covered)}

    @classmethod
    def from_json(cls, obj: dict) -> "Curve":
        fam = family_from_json(obj["family"], obj.get("params", {}))
        return cls(fam, fam.witness_from_json(obj.get("params", {})), tuple(obj["covers"]))


def make_curve(family: "CurveFamily", witness: dict, host: PointSet) -> Curve:
    return Curve(family, witness, tuple(family.covered_indices(witness, host)))


# ---------------------------------------------------------------------------
# base

@dataclass(frozen=True)
class CurveFamily:
    name: ClassVar[str] = ""
    planar: ClassVar[bool] = True

    def check_dim(self, d: int):
        if self.planar and d != 2:
            raise ValueError(f"{self.name} curves live in the plane, got dimension {d}")

    def coverable(self, pts: Sequence[Point]) -> bool:
        raise NotImplementedError

    def witness(self, pts: Sequence[Point], host: PointSet | None = None) -> dict:
        """Exact parameters of one curve through all of ``pts``."""
        raise NotImplementedError

    def on_curve(self, witness: dict, p: Point) -> bool:
        raise NotImplementedError

    def covered_indices(self, witness: dict, host: PointSet, cache: dict | None = None) -> list[int]:
        return [i for i, p in enumerate(host.points) if self.on_curve(witness, p)]

    def max_coverage_bound(self, host: PointSet) -> int | None:
        return None

    def translate_witness(self, w: dict, t: Sequence[int]) -> dict:
        """Witness of the same curve shifted by the integer vector t."""
        raise NotImplementedError

    # serialisation -------------------------------------------------------
    def params_json(self) -> dict:
        return {}

    def witness_json(self, w: dict) -> dict:
        return {k: _jsonify(v) for k, v in w.items()}

    def witness_from_json(self, obj: dict) -> dict:
        raise NotImplementedError


def _jsonify(v):
    if isinstance(v, Fraction):
        return rat_str(v)
    if isinstance(v, tuple) or isinstance(v, list):
        return [_jsonify(x) for x in v]
    if isinstance(v, ortho.RectilinearPolygon):
        return [list(p) for p in v.vertices]
    return v


def _shift(p, t) -> Point:
    return tuple(a + b for a, b in zip(p, t))


def _pts(obj) -> tuple[Point, ...]:
    return tuple(tuple(p) for p in obj)


# ---------------------------------------------------------------------------
# lines

def _common_line(pts: Sequence[Point]):
    """(anchor point, primitive direction) of the line through pts, or None."""
    pts = list(dict.fromkeys(tuple(p) for p in pts))
    if len(pts) < 2:
        return None
    a, b = pts[0], pts[1]
    for c in pts[2:]:
        if not collinear(a, b, c):
            return False
    return a, primitive([y - x for x, y in zip(a, b)])


def _line_points(anchor: Point, direction: Sequence[int], host: PointSet) -> list[int]:
    """Host indices on the lattice line anchor + t * direction."""
    lo, hi = host.bbox()
    tmin, tmax = -math.inf, math.inf
    for a, v, l, h in zip(anchor, direction, lo, hi):
        if v == 0:
            if not l <= a <= h:
                return []
            continue
        t1, t2 = (l - a) / v, (h - a) / v
        if t1 > t2:
            t1, t2 = t2, t1
        tmin, tmax = max(tmin, math.floor(t1) - 1), min(tmax, math.ceil(t2) + 1)
    out = []
    idx = host.index
    for t in range(int(tmin), int(tmax) + 1):
        p = tuple(a + t * v for a, v in zip(anchor, direction))
        i = idx.get(p)
        if i is not None:
            out.append(i)
    return sorted(out)


@dataclass(frozen=True)
class Line(CurveFamily):
    name: ClassVar[str] = "line"
    planar: ClassVar[bool] = False

    def direction_ok(self, v: Sequence[int]) -> bool:
        return True

    def coverable(self, pts):
        got = _common_line(pts)
        if got is None:
            return True
        return got is not False and self.direction_ok(got[1])

    def witness(self, pts, host=None):
        got = _common_line(pts)
        if got is False or (got is not None and not self.direction_ok(got[1])):
            raise ValueError("points are not coverable by one line of this family")
        if got is None:
            p = tuple(pts[0])
            d = len(p)
            v = self._default_direction(d, p, host)
            return {"point": p, "direction": v}
        return {"point": got[0], "direction": got[1]}

    def _default_direction(self, d, p, host):
        # a direction through p that meets no other host point, if one exists
        cands = [tuple([1] + [0] * (d - 1))] if d == 1 else []
        for k in itertools.count(1):
            v = tuple([1] + [k] * (d - 1)) if d > 1 else (1,)
            cands.append(v)
            if host is None or len(cands) > 50:
                break
            if len(_line_points(p, v, host)) <= 1:
                break
        return cands[-1]

    def on_curve(self, w, p):
        a, v = w["point"], w["direction"]
        return collinear(a, tuple(x + y for x, y in zip(a, v)), p)

    def covered_indices(self, w, host, cache=None):
        return _line_points(tuple(w["point"]), tuple(w["direction"]), host)

    def witness_from_json(self, obj):
        return {"point": tuple(obj["point"]), "direction": tuple(obj["direction"])}

    def translate_witness(self, w, t):
        return {"point": _shift(w["point"], t), "direction": w["direction"]}


@dataclass(frozen=True)
class SkewLine(Line):
    """Lines parallel to no coordinate axis (every direction component nonzero)."""

    name: ClassVar[str] = "skew-line"

    def direction_ok(self, v):
        return all(x != 0 for x in v)


# ---------------------------------------------------------------------------
# monotone

def leq(a: Point, b: Point) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class Monotone(CurveFamily):
    """Coordinate-wise non-decreasing curves; a curve's trace is a chain."""

    name: ClassVar[str] = "monotone"
    planar: ClassVar[bool] = False

    def coverable(self, pts):
        s = sorted(set(tuple(p) for p in pts))
        return all(leq(a, b) for a, b in zip(s, s[1:]))

    def witness(self, pts, host=None):
        s = sorted(set(tuple(p) for p in pts))
        if not self.coverable(s):
            raise ValueError("points do not form a chain")
        return {"chain": tuple(s)}

    def on_curve(self, w, p):
        return tuple(p) in set(w["chain"])

    def covered_indices(self, w, host, cache=None):
        return sorted(host.index[p] for p in w["chain"] if p in host.index)

    def witness_from_json(self, obj):
        return {"chain": _pts(obj["chain"])}

    def translate_witness(self, w, t):
        return {"chain": tuple(_shift(p, t) for p in w["chain"])}


# ---------------------------------------------------------------------------
# circles

def _circle_lattice_points(center, r2, host: PointSet, cache: dict | None) -> list[int]:
    cx, cy = Fraction(center[0]), Fraction(center[1])
    r2 = Fraction(r2)
    if cache is not None:
        key = ("circle", cx, cy)
        table = cache.get(key)
        if table is None:
            table = {}
            for i, (x, y) in enumerate(host.points):
                table.setdefault((x - cx) ** 2 + (y - cy) ** 2, []).append(i)
            cache[key] = table
        return table.get(r2, [])
    lo, hi = host.bbox()
    r = math.isqrt(math.ceil(r2)) + 1
    out = []
    for x in range(max(lo[0], math.floor(cx - r)), min(hi[0], math.ceil(cx + r)) + 1):
        t = r2 - (x - cx) ** 2
        if t < 0:
            continue
        sn, sd = math.isqrt(t.numerator), math.isqrt(t.denominator)
        if sn * sn != t.numerator or sd * sd != t.denominator:
            continue
        root = Fraction(sn, sd)
        for y in {cy + root, cy - root}:
            if y.denominator == 1:
                i = host.index.get((x, int(y)))
                if i is not None:
                    out.append(i)
    return sorted(out)


@dataclass(frozen=True)
class Circle(CurveFamily):
    name: ClassVar[str] = "circle"

    def coverable(self, pts):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        if len(pts) <= 2:
            return True
        a, b, c = pts[:3]
        if collinear(a, b, c):
            return False
        (ux, uy), r2 = circumcircle(a, b, c)
        return all((p[0] - ux) ** 2 + (p[1] - uy) ** 2 == r2 for p in pts[3:])

    def witness(self, pts, host=None):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        if len(pts) >= 3:
            if not self.coverable(pts):
                raise ValueError("points are not concyclic")
            center, r2 = circumcircle(*pts[:3])
            return {"center": center, "r2": r2}
        return self._small_witness(pts, host)

    def _small_witness(self, pts, host):
        # a circle through one or two points that avoids every other host point
        p = pts[0]
        if len(pts) == 1:
            base = (Fraction(p[0]), Fraction(p[1]))
            direction = (Fraction(1), Fraction(0))
            offsets = [Fraction(1, 3) + Fraction(k, 7) for k in range(64)]
            shift = (Fraction(0), Fraction(1, 5))
        else:
            q = pts[1]
            base = (Fraction(p[0] + q[0], 2), Fraction(p[1] + q[1], 2))
            direction = (Fraction(-(q[1] - p[1])), Fraction(q[0] - p[0]))
            offsets = [Fraction(k, 11) for k in range(64)]
            shift = (Fraction(0), Fraction(0))
        w = None
        for t in offsets:
            c = (base[0] + t * direction[0] + shift[0], base[1] + t * direction[1] + shift[1])
            r2 = (p[0] - c[0]) ** 2 + (p[1] - c[1]) ** 2
            w = {"center": c, "r2": r2}
            if host is None or len(_circle_lattice_points(c, r2, host, None)) == len(
                [x for x in pts if x in host.index]
            ):
                return w
        return w

    def on_curve(self, w, p):
        c = w["center"]
        return (p[0] - c[0]) ** 2 + (p[1] - c[1]) ** 2 == w["r2"]

    def covered_indices(self, w, host, cache=None):
        return _circle_lattice_points(w["center"], w["r2"], host, cache)

    def witness_json(self, w):
        return {"center": [rat_str(w["center"][0]), rat_str(w["center"][1])], "r2": rat_str(w["r2"])}

    def witness_from_json(self, obj):
        return {"center": tuple(parse_rat(x) for x in obj["center"]), "r2": parse_rat(obj["r2"])}

    def translate_witness(self, w, t):
        return {"center": (w["center"][0] + t[0], w["center"][1] + t[1]), "r2": w["r2"]}


def _two_square_reps(n4: int) -> list[tuple[int, int]]:
    out = []
    r = math.isqrt(n4)
    for a in range(-r, r + 1):
        t = n4 - a * a
        b = math.isqrt(t)
        if b * b == t:
            out.append((a, b))
            if b:
                out.append((a, -b))
    return sorted(set(out))


@dataclass(frozen=True)
class FixedRadiusCircle(Circle):
    """Circles of one squared radius with centres on a declared lattice.

    ``lattice="integer"`` puts centres on Z^2, ``"half-integer"`` on (Z + 1/2)^2.
    """

    name: ClassVar[str] = "fixed-radius-circle"
    r2: Fraction = Fraction(1)
    lattice: str = "integer"

    def __post_init__(self):
        object.__setattr__(self, "r2", Fraction(self.r2))
        if self.r2 <= 0:
            raise ValueError("squared radius must be positive")
        if self.lattice not in ("integer", "half-integer"):
            raise ValueError(f"unknown centre lattice {self.lattice!r}")

    def offsets(self) -> list[tuple[Fraction, Fraction]]:
        """Vectors from a centre to the lattice points on its circle."""
        if self.lattice == "integer":
            if self.r2.denominator != 1:
                return []
            return [(Fraction(a), Fraction(b)) for a, b in _two_square_reps(int(self.r2))]
        four = self.r2 * 4
        if four.denominator != 1:
            return []
        return [(Fraction(a, 2), Fraction(b, 2)) for a, b in _two_square_reps(int(four)) if a % 2 and b % 2]

    def _centres(self, pts):
        offs = self.offsets()
        cands = None
        for p in pts:
            cs = {(p[0] - a, p[1] - b) for a, b in offs}
            cands = cs if cands is None else cands & cs
            if not cands:
                return []
        return sorted(cands or [])

    def coverable(self, pts):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        return bool(self._centres(pts))

    def witness(self, pts, host=None):
        cs = self._centres(list(dict.fromkeys(tuple(p) for p in pts)))
        if not cs:
            raise ValueError("no centre on the lattice reaches all points")
        return {"center": cs[0], "r2": self.r2}

    def params_json(self):
        return {"radius2": rat_str(self.r2), "lattice": self.lattice}


# ---------------------------------------------------------------------------
# convex

@dataclass(frozen=True)
class ClosedConvex(CurveFamily):
    """Boundaries of convex regions: no point may be strictly inside the hull."""

    name: ClassVar[str] = "closed-convex"

    def coverable(self, pts):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        if len(pts) <= 3:
            return True
        return INTERIOR not in hull_classify(pts)

    def witness(self, pts, host=None):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        if not self.coverable(pts):
            raise ValueError("a point is strictly inside the hull")
        return {"vertices": tuple(convex_hull(pts))}

    def on_curve(self, w, p):
        if "lo" in w:
            return _on_box_boundary(w["lo"], w["hi"], p)
        vs = w["vertices"]
        if len(vs) == 1:
            return tuple(p) == vs[0]
        return any(on_segment(a, b, p) for a, b in zip(vs, vs[1:] + vs[:1]))

    def check_dim(self, d):
        if d != 2:
            raise ValueError("the closed-convex predicate is planar (box witnesses work in any dimension)")

    def covered_indices(self, w, host, cache=None):
        if "lo" in w:
            return _box_boundary_indices(w["lo"], w["hi"], host)
        vs = w["vertices"]
        if len(vs) == 1:
            i = host.index.get(vs[0])
            return [] if i is None else [i]
        out = set()
        edges = list(zip(vs, vs[1:] + vs[:1])) if len(vs) > 2 else [(vs[0], vs[1])]
        for a, b in edges:
            g = math.gcd(b[0] - a[0], b[1] - a[1])
            sx, sy = (b[0] - a[0]) // g, (b[1] - a[1]) // g
            for t in range(g + 1):
                i = host.index.get((a[0] + t * sx, a[1] + t * sy))
                if i is not None:
                    out.add(i)
        return sorted(out)

    def witness_from_json(self, obj):
        if "lo" in obj:
            return {"lo": tuple(obj["lo"]), "hi": tuple(obj["hi"])}
        return {"vertices": _pts(obj["vertices"])}

    def translate_witness(self, w, t):
        if "lo" in w:
            return {"lo": _shift(w["lo"], t), "hi": _shift(w["hi"], t)}
        return {"vertices": tuple(_shift(v, t) for v in w["vertices"])}


def _on_box_boundary(lo, hi, p) -> bool:
    inside = all(a <= x <= b for a, x, b in zip(lo, p, hi))
    return inside and any(x == a or x == b for a, x, b in zip(lo, p, hi))


def _box_boundary_indices(lo, hi, host: PointSet) -> list[int]:
    out = []
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    for p in itertools.product(*ranges):
        if any(x == a or x == b for a, x, b in zip(lo, p, hi)):
            i = host.index.get(p)
            if i is not None:
                out.append(i)
    return sorted(out)


@dataclass(frozen=True)
class StrictlyConvex(ClosedConvex):
    """Convex curves without segments: every point must be a hull vertex."""

    name: ClassVar[str] = "strictly-convex"

    def coverable(self, pts):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        if len(pts) <= 2:
            return True
        return all(lab == VERTEX for lab in hull_classify(pts))

    def witness(self, pts, host=None):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        if not self.coverable(pts):
            raise ValueError("points are not in strictly convex position")
        return {"vertices": tuple(convex_hull(pts)) if len(pts) > 2 else tuple(sorted(pts))}

    def on_curve(self, w, p):
        return tuple(p) in set(w["vertices"])

    def covered_indices(self, w, host, cache=None):
        return sorted(host.index[v] for v in w["vertices"] if v in host.index)


# ---------------------------------------------------------------------------
# orthoconvex

@dataclass(frozen=True)
class Orthoconvex(CurveFamily):
    """Simple closed rectilinear orthoconvex curves with grid-point corners."""

    name: ClassVar[str] = "orthoconvex"
    max_inner_corners: int | None = None
    allow_degenerate: bool = False

    def __post_init__(self):
        if self.max_inner_corners is not None and self.max_inner_corners < 0:
            raise ValueError("inner-corner budget must be >= 0")

    def coverable(self, pts):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        if len(pts) <= 1:
            return True
        if self.allow_degenerate and (len({p[0] for p in pts}) == 1 or len({p[1] for p in pts}) == 1):
            return True
        try:
            return ortho.find_covering_polygon(pts, self.max_inner_corners) is not None
        except CapExceeded as exc:
            raise CoverabilityUnknown(str(exc)) from exc

    def witness(self, pts, host=None):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        if self.allow_degenerate and len(pts) > 1 and (len({p[0] for p in pts}) == 1 or len({p[1] for p in pts}) == 1):
            lo, hi = min(pts), max(pts)
            return {"segment": (lo, hi)}
        if len(pts) == 1:
            x, y = pts[0]
            return {"polygon": ortho.RectilinearPolygon(((x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)))}
        poly = ortho.find_covering_polygon(pts, self.max_inner_corners)
        if poly is None:
            raise ValueError("no orthoconvex curve with this corner budget covers the points")
        return {"polygon": poly}

    def on_curve(self, w, p):
        if "segment" in w:
            return on_segment(*w["segment"], p)
        return w["polygon"].contains_boundary(p)

    def covered_indices(self, w, host, cache=None):
        if "segment" in w:
            return [i for i, p in enumerate(host.points) if on_segment(*w["segment"], p)]
        idx = host.index
        return sorted({idx[p] for p in w["polygon"].boundary_points() if p in idx})

    def params_json(self):
        return {"max_inner_corners": self.max_inner_corners}

    def witness_json(self, w):
        if "segment" in w:
            return {"segment": [list(w["segment"][0]), list(w["segment"][1])]}
        return {"vertices": [list(v) for v in w["polygon"].vertices]}

    def witness_from_json(self, obj):
        if "segment" in obj:
            return {"segment": _pts(obj["segment"])}
        return {"polygon": ortho.RectilinearPolygon(_pts(obj["vertices"]))}

    def translate_witness(self, w, t):
        if "segment" in w:
            return {"segment": tuple(_shift(p, t) for p in w["segment"])}
        return {"polygon": ortho.RectilinearPolygon(tuple(_shift(v, t) for v in w["polygon"].vertices))}


# ---------------------------------------------------------------------------
# algebraic bundles

def canonical_line(a: int, b: int, c: int) -> tuple[int, int, int]:
    """gcd-reduced a*x + b*y = c with a >= 0 (and b > 0 when a == 0)."""
    if a == 0 and b == 0:
        raise ValueError("degenerate line")
    g = math.gcd(math.gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return a, b, c


def line_through(p: Point, q: Point) -> tuple[int, int, int]:
    a, b = q[1] - p[1], p[0] - q[0]
    return canonical_line(a, b, a * p[0] + b * p[1])


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with a u + b v = g = gcd(a, b) >= 0."""
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, u, v = _ext_gcd(b, a % b)
    return g, v, u - (a // b) * v


def _min_line_partition(pts: list[Point], k: int) -> list[tuple[int, int, int]] | None:
    if not pts:
        return []
    if k == 0:
        return None
    p = pts[0]
    options = []
    for q in pts[1:]:
        ln = line_through(p, q)
        if ln not in options:
            options.append(ln)
    options.append(canonical_line(0, 1, p[1]) if not options else None)
    for ln in options:
        if ln is None:
            continue
        a, b, c = ln
        rest = [r for r in pts if a * r[0] + b * r[1] != c]
        got = _min_line_partition(rest, k - 1)
        if got is not None:
            return [ln] + got
    return None


@dataclass(frozen=True)
class AlgebraicMaxDeg(CurveFamily):
    """Degree <= k curves realised as products of at most k lines."""

    name: ClassVar[str] = "algebraic"
    degree: int = 1

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be >= 1")

    def coverable(self, pts):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        return _min_line_partition(pts, self.degree) is not None

    def witness(self, pts, host=None):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        lines = _min_line_partition(pts, self.degree)
        if lines is None:
            raise ValueError(f"points need more than {self.degree} lines")
        return {"lines": tuple(lines)}

    def on_curve(self, w, p):
        return any(a * p[0] + b * p[1] == c for a, b, c in w["lines"])

    def covered_indices(self, w, host, cache=None):
        out: set[int] = set()
        for a, b, c in w["lines"]:
            # a lattice point on a x + b y = c, if any, then step along (b, -a)
            g, u, v = _ext_gcd(a, b)
            if c % g:
                continue
            anchor = (u * (c // g), v * (c // g))
            out.update(_line_points(anchor, primitive((b, -a)), host))
        return sorted(out)

    def params_json(self):
        return {"degree": self.degree}

    def witness_json(self, w):
        return {"lines": [{"a": a, "b": b, "c": c} for a, b, c in w["lines"]]}

    def witness_from_json(self, obj):
        return {"lines": tuple((d["a"], d["b"], d["c"]) for d in obj["lines"])}

    def translate_witness(self, w, t):
        return {"lines": tuple(canonical_line(a, b, c + a * t[0] + b * t[1]) for a, b, c in w["lines"])}


# ---------------------------------------------------------------------------
# fixed shapes

@dataclass(frozen=True)
class FixedShape(CurveFamily):
    """Translates of one fixed curve, described by the grid points on it."""

    name: ClassVar[str] = "fixed-shape"
    offsets: tuple[Point, ...] = ()
    label: str = ""

    def __post_init__(self):
        offs = tuple(sorted(set(tuple(o) for o in self.offsets)))
        if not offs:
            raise ValueError("shape needs at least one offset")
        if len(offs) != len(self.offsets):
            raise ValueError("shape offsets must be duplicate-free")
        if len(offs) > CAPS.fixed_shape_offsets:
            raise CapExceeded(f"shape has {len(offs)} offsets, cap {CAPS.fixed_shape_offsets}")
        object.__setattr__(self, "offsets", offs)

    def translations(self, pts):
        cands = None
        for p in pts:
            ts = {(p[0] - o[0], p[1] - o[1]) for o in self.offsets}
            cands = ts if cands is None else cands & ts
            if not cands:
                return []
        return sorted(cands or [])

    def coverable(self, pts):
        pts = list(dict.fromkeys(tuple(p) for p in pts))
        return bool(self.translations(pts)) if pts else True

    def witness(self, pts, host=None):
        ts = self.translations(list(dict.fromkeys(tuple(p) for p in pts)))
        if not ts:
            raise ValueError("no translate of the shape contains the points")
        return {"translation": ts[0]}

    def on_curve(self, w, p):
        t = w["translation"]
        return (p[0] - t[0], p[1] - t[1]) in set(self.offsets)

    def covered_indices(self, w, host, cache=None):
        t = w["translation"]
        idx = host.index
        return sorted(idx[q] for q in ((o[0] + t[0], o[1] + t[1]) for o in self.offsets) if q in idx)

    def max_coverage_bound(self, host):
        return len(self.offsets)

    def params_json(self):
        return {"shape": self.label, "offsets": [list(o) for o in self.offsets]}

    def witness_from_json(self, obj):
        return {"translation": tuple(obj["translation"])}

    def translate_witness(self, w, t):
        return {"translation": _shift(w["translation"], t)}


# ---------------------------------------------------------------------------
# registry

FAMILY_NAMES = (
    "line", "skew-line", "monotone", "circle", "fixed-radius-circle", "closed-convex",
    "strictly-convex", "orthoconvex", "algebraic", "fixed-shape",
)


def family_from_json(name: str, params: dict) -> CurveFamily:
    if name == "fixed-radius-circle":
        return FixedRadiusCircle(parse_rat(params.get("radius2", "1/1")), params.get("lattice", "integer"))
    if name == "orthoconvex":
        return Orthoconvex(params.get("max_inner_corners"))
    if name == "algebraic":
        return AlgebraicMaxDeg(int(params.get("degree", 1)))
    if name == "fixed-shape":
        return FixedShape(_pts(params["offsets"]), params.get("shape", ""))
    simple = {"line": Line, "skew-line": SkewLine, "monotone": Monotone, "circle": Circle,
              "closed-convex": ClosedConvex, "strictly-convex": StrictlyConvex}
    if name not in simple:
        raise KeyError(f"unknown family {name!r}")
    return simple[name]()


def is_coverable(S: Sequence[Sequence[int]], fam: CurveFamily) -> bool:
    """Can a single curve of ``fam`` pass through every point of S?

    Raises :class:`CoverabilityUnknown` when the family cannot decide within caps.
    """
    pts = [tuple(p) for p in S]
    if pts:
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("dimension mismatch inside the point subset")
        fam.check_dim(d)
    return fam.coverable(pts)


# ---------------------------------------------------------------------------
# candidate enumeration

def _popcount(x: int) -> int:
    return bin(x).count("1")


def maximal_masks(masks: Iterable[int]) -> list[int]:
    """Drop every mask that is a subset of another (duplicates collapse)."""
    uniq = sorted(set(masks), key=lambda m: (-_popcount(m), m))
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _bits(m: int) -> list[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def enumerate_candidates(P: PointSet, fam: CurveFamily, maximal: bool = True) -> list[Curve]:
    """Candidate curves on P, sorted by coverage (largest first, then lexicographic).

    With ``maximal`` no coverage set is a strict subset of another, and the
    candidates jointly cover P.
    """
    if isinstance(fam, Monotone):
        raise ValueError("monotone covers use the chain-decomposition algorithm")
    fam.check_dim(P.d) if not isinstance(fam, Line) else None
    n = len(P)
    if n == 0:
        return []
    if n == 1:
        return [make_curve(fam, fam.witness([P[0]], P), P)]
    if isinstance(fam, Line):
        raw = _line_candidates(P, fam)
    elif isinstance(fam, FixedRadiusCircle):
        raw = _offset_candidates(P, fam, [(a, b) for a, b in fam.offsets()])
    elif isinstance(fam, Circle):
        raw = _circle_candidates(P, fam, maximal)
    elif isinstance(fam, FixedShape):
        raw = _offset_candidates(P, fam, fam.offsets)
    elif isinstance(fam, Orthoconvex):
        raw = _ortho_candidates(P, fam)
    else:
        raw = _generic_candidates(P, fam)
    # raw: dict mask -> witness
    covered = 0
    for m in raw:
        covered |= m
    for i in range(n):
        if not covered >> i & 1:
            w = fam.witness([P[i]], P)
            raw.setdefault(_mask(fam.covered_indices(w, P)), w)
    masks = maximal_masks(raw) if maximal else sorted(raw, key=lambda m: (-_popcount(m), m))
    out = [Curve(fam, raw[m], tuple(_bits(m))) for m in masks]
    out.sort(key=lambda c: (-len(c.covered), c.covered))
    return out


def _line_candidates(P: PointSet, fam: Line) -> dict[int, dict]:
    if len(P) > CAPS.line_candidates:
        raise CapExceeded(f"{len(P)} points above line-candidate cap {CAPS.line_candidates}")
    groups: dict = {}
    pts = P.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            key = line_key(pts[i], pts[j])
            if not fam.direction_ok(key[0]):
                continue
            g = groups.get(key)
            if g is None:
                groups[key] = g = set()
            g.add(i)
            g.add(j)
    out = {}
    for (v, anchor), g in groups.items():
        out[_mask(g)] = {"point": pts[min(g)], "direction": v}
    return out


def _offset_candidates(P: PointSet, fam: CurveFamily, offsets) -> dict[int, dict]:
    out = {}
    idx = P.index
    seen = set()
    for p in P.points:
        for o in offsets:
            t = (p[0] - o[0], p[1] - o[1])
            if t in seen:
                continue
            seen.add(t)
            m = 0
            for q in offsets:
                i = idx.get((t[0] + q[0], t[1] + q[1]))
                if i is not None:
                    m |= 1 << i
            w = {"translation": t} if isinstance(fam, FixedShape) else {"center": t, "r2": fam.r2}
            if m not in out or _key_lt(w, out[m]):
                out[m] = w
    return out


def _key_lt(a: dict, b: dict) -> bool:
    ka = a.get("translation", a.get("center"))
    kb = b.get("translation", b.get("center"))
    return tuple(ka) < tuple(kb)


def _circle_candidates(P: PointSet, fam: Circle, maximal: bool) -> dict[int, dict]:
    n = len(P)
    if n > CAPS.circle_candidates:
        raise CapExceeded(f"{n} points above circle-candidate cap {CAPS.circle_candidates}")
    pts = P.points
    circles: dict = {}
    for i, j, k in itertools.combinations(range(n), 3):
        a, b, c = pts[i], pts[j], pts[k]
        if orient(a, b, c) == 0:
            continue
        key = circumcircle(a, b, c)
        g = circles.get(key)
        if g is None:
            circles[key] = g = set()
        g.update((i, j, k))
    out = {}
    paired = set()
    for (center, r2), g in circles.items():
        out[_mask(g)] = {"center": center, "r2": r2}
        for i, j in itertools.combinations(sorted(g), 2):
            paired.add((i, j))
    for i, j in itertools.combinations(range(n), 2):
        if maximal and (i, j) in paired:
            continue
        w = fam.witness([pts[i], pts[j]], P)
        m = _mask(fam.covered_indices(w, P))
        out.setdefault(m, w)
    return out


def _ortho_candidates(P: PointSet, fam: Orthoconvex) -> dict[int, dict]:
    lo, hi = P.bbox()
    x0, y0 = lo[0] - 1, lo[1] - 1
    W, H = hi[0] - x0 + 1, hi[1] - y0 + 1
    side = max(W, H) + 1
    k = fam.max_inner_corners
    cap = CAPS.ortho_enum_bounded if k is not None and k <= 2 else CAPS.ortho_enum_unbounded
    if side > cap:
        raise CapExceeded(f"orthoconvex box side {side} above enumeration cap {cap}")
    lo_t, hi_t, bnd, _, _ = ortho._tables(H)
    ivs = {(int(a), int(b)): t for t, (a, b) in enumerate(zip(lo_t[:-1], hi_t[:-1]))}
    E = len(lo_t) - 1
    idx = P.index
    # host mask contributed by the column pair (I, J) meeting on line x
    line_mask: dict = {}

    def lm(x, I, J):
        key = (x, I, J)
        m = line_mask.get(key)
        if m is None:
            m = 0
            for y in range(H + 1):
                if bnd[I, J, y]:
                    i = idx.get((x0 + x, y0 + y))
                    if i is not None:
                        m |= 1 << i
            line_mask[key] = m
        return m

    out: dict[int, tuple] = {}
    for cx, cols in ortho.iter_polyominoes(W, H, k):
        ids = [ivs[c] for c in cols]
        m = lm(cx, E, ids[0]) | lm(cx + len(ids), ids[-1], E)
        for t in range(1, len(ids)):
            m |= lm(cx + t, ids[t - 1], ids[t])
        if m and m not in out:
            out[m] = (cx, cols)
    if fam.allow_degenerate:
        for m, w in _line_candidates(P, Line()).items():
            v = w["direction"]
            if v[0] == 0 or v[1] == 0:
                ids = _bits(m)
                out.setdefault(m, ("segment", (P[ids[0]], P[ids[-1]])))
    res = {}
    for m, (cx, cols) in out.items():
        if cx == "segment":
            res[m] = {"segment": cols}
        else:
            res[m] = {"polygon": ortho.polygon_from_columns(x0 + cx, [(a + y0, b + y0) for a, b in cols])}
    return res


def _generic_candidates(P: PointSet, fam: CurveFamily) -> dict[int, dict]:
    """Maximal coverable subsets by Bron-Kerbosch style search (hereditary families)."""
    n = len(P)
    if n > CAPS.generic_candidates:
        raise CapExceeded(f"{n} points above generic-candidate cap {CAPS.generic_candidates}")
    pts = P.points
    found: list[int] = []
    cache: dict[int, bool] = {}

    def ok(m: int) -> bool:
        r = cache.get(m)
        if r is None:
            r = cache[m] = fam.coverable([pts[i] for i in _bits(m)])
        return r

    def rec(S: int, cand: list[int], excl: list[int]):
        if not cand and not excl:
            found.append(S)
            return
        full = S | _mask(cand)
        if cand and ok(full):
            # every maximal set in this branch lies inside S + cand, so it is that set
            if not any(ok(full | (1 << x)) for x in excl):
                found.append(full)
            return
        excl = list(excl)
        for i, p in enumerate(cand):
            S2 = S | (1 << p)
            c2 = [q for q in cand[i + 1:] if ok(S2 | (1 << q))]
            x2 = [q for q in excl if ok(S2 | (1 << q))]
            rec(S2, c2, x2)
            excl.append(p)

    rec(0, list(range(n)), [])
    out = {}
    for m in found:
        ids = _bits(m)
        w = fam.witness([pts[i] for i in ids], P)
        out[_mask(fam.covered_indices(w, P))] = w
    return out
