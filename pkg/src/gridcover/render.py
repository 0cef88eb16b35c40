"""Deterministic SVG scenes for point sets, covers and tiling windows.

Fixed canvas transform (y axis up), fixed palette and fixed number formatting,
so the same input always produces the same bytes.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .geometry import PointSet
from .solver import Cover
from .tilings import TilingPattern

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22")
SCALE = 40
MARGIN = 1.0


def _f(v) -> str:
    s = f"{float(v):.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    def __init__(self, lo, hi):
        self.x0, self.y0 = lo[0] - MARGIN, lo[1] - MARGIN
        self.x1, self.y1 = hi[0] + MARGIN, hi[1] + MARGIN
        self.items: list[str] = []

    def xy(self, x, y):
        return (float(x) - self.x0) * SCALE, (self.y1 - float(y)) * SCALE

    def polyline(self, pts, color, closed=False, width=2):
        coords = " ".join(f"{_f(a)},{_f(b)}" for a, b in (self.xy(*p) for p in pts))
        tag = "polygon" if closed else "polyline"
        self.items.append(f'<{tag} points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"/>')

    def circle(self, c, r, color, fill="none", width=2):
        cx, cy = self.xy(*c)
        self.items.append(
            f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r * SCALE)}" fill="{fill}" stroke="{color}" stroke-width="{width}"/>'
        )

    def dot(self, p, color="#000000"):
        cx, cy = self.xy(*p)
        self.items.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="3" fill="{color}"/>')

    def svg(self) -> str:
        w = (self.x1 - self.x0) * SCALE
        h = (self.y1 - self.y0) * SCALE
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" '
            f'viewBox="0 0 {_f(w)} {_f(h)}">'
        )
        body = [head, f'<rect x="0" y="0" width="{_f(w)}" height="{_f(h)}" fill="#ffffff"/>']
        body.extend(self.items)
        body.append("</svg>")
        return "\n".join(body) + "\n"


def _ring_order(pts):
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: (math.atan2(p[1] - cy, p[0] - cx), p))


def _clip_line(point, direction, lo, hi):
    # parameter range of the line inside the padded box
    ts = []
    for a, v, l, h in zip(point, direction, lo, hi):
        if v:
            ts.append(sorted(((l - MARGIN / 2 - a) / v, (h + MARGIN / 2 - a) / v)))
    tmin = max(t[0] for t in ts)
    tmax = min(t[1] for t in ts)
    return [tuple(a + t * v for a, v in zip(point, direction)) for t in (tmin, tmax)]


def _draw_curve(cv: _Canvas, curve, color, lo, hi, host: PointSet):
    w = curve.witness
    name = curve.family.name
    if name in ("line", "skew-line"):
        cv.polyline(_clip_line(w["point"], w["direction"], lo, hi), color)
    elif name in ("circle", "fixed-radius-circle"):
        cv.circle(w["center"], math.sqrt(Fraction(w["r2"])), color)
    elif name == "orthoconvex":
        if "segment" in w:
            cv.polyline(list(w["segment"]), color)
        else:
            cv.polyline(list(w["polygon"].vertices), color, closed=True)
    elif name in ("closed-convex", "strictly-convex"):
        if "lo" in w:
            a, b = w["lo"], w["hi"]
            cv.polyline([(a[0], a[1]), (b[0], a[1]), (b[0], b[1]), (a[0], b[1])], color, closed=True)
        else:
            cv.polyline(list(w["vertices"]), color, closed=len(w["vertices"]) > 2)
    elif name == "monotone":
        cv.polyline(list(w["chain"]), color)
    elif name == "algebraic":
        for a, b, c in w["lines"]:
            if b:
                cv.polyline(_clip_line((0, Fraction(c, b)), (1, Fraction(-a, b)), lo, hi), color)
            else:
                cv.polyline(_clip_line((Fraction(c, a), 0), (0, 1), lo, hi), color)
    elif name == "fixed-shape":
        t = w["translation"]
        pts = [(o[0] + t[0], o[1] + t[1]) for o in curve.family.offsets]
        cv.polyline(_ring_order(pts) if len(pts) > 2 else pts, color, closed=len(pts) > 2)
    else:
        for i in curve.covered:
            cv.dot(host[i], color)


def render_cover(cover: Cover) -> str:
    P = cover.pointset
    if P.d != 2:
        raise ValueError("only planar scenes can be rendered")
    lo, hi = P.bbox() if len(P) else ((0, 0), (1, 1))
    cv = _Canvas(lo, hi)
    for k, c in enumerate(cover.curves):
        _draw_curve(cv, c, PALETTE[k % len(PALETTE)], lo, hi, P)
    for p in P.points:
        cv.dot(p)
    return cv.svg()


def render_points(P: PointSet) -> str:
    return render_cover(Cover(P, []))


def render_tiling(pat: TilingPattern, size: int = 8) -> str:
    """Window [0, size)^2 of the tiling: every translate meeting the window, plus its points."""
    tor = pat.torus
    offs = pat.shape.offsets
    cells = {tor.cell(p) for p in pat.placements}
    lo, hi = (0, 0), (size - 1, size - 1)
    cv = _Canvas(lo, hi)
    k = 0
    xs = [o[0] for o in offs]
    ys = [o[1] for o in offs]
    for tx in range(-max(xs), size - min(xs)):
        for ty in range(-max(ys), size - min(ys)):
            if tor.cell((tx, ty)) not in cells:
                continue
            pts = [(tx + o[0], ty + o[1]) for o in offs]
            if not any(0 <= x < size and 0 <= y < size for x, y in pts):
                continue
            color = PALETTE[k % len(PALETTE)]
            k += 1
            if pat.shape.name.endswith("circle"):
                r2 = offs[0][0] ** 2 + offs[0][1] ** 2
                cv.circle((tx, ty), math.sqrt(r2), color)
            else:
                cv.polyline(_ring_order(pts), color, closed=True)
    for x in range(size):
        for y in range(size):
            cv.dot((x, y))
    return cv.svg()


def render_json(obj: dict) -> str:
    """Dispatch on the JSON kind: cover, tiling pattern or bare point set."""
    if "curves" in obj and "pointset" in obj:
        return render_cover(Cover.from_json(obj))
    if "placements" in obj and "u" in obj:
        return render_tiling(TilingPattern.from_json(obj), int(obj.get("window", 8)))
    if "points" in obj and "d" in obj:
        return render_points(PointSet.from_json(obj))
    raise ValueError("unrecognised scene JSON")
