"""Periodic tilings of Z^2 by translates of a fixed shape.

A shape is the finite set of grid points on a curve. A pattern is a period
lattice L = aZ(1,0) + Z(b,c) plus placements inside the fundamental domain;
the translates ``shape + placement + L`` either partition Z^2 (exact tiling)
or cover it with a declared number of new points per curve (tile-like).
Patterns are found by exact-cover search on the torus Z^2 / L.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .config import CAPS, CapExceeded
from .families import FixedShape, make_curve
from .geometry import Point, grid_points
from .solver import BoundsReport, Cover, cover_from_curves

EXACT = "exact-tiling"
TILE_LIKE = "tile-like-covering"


@dataclass(frozen=True)
class Shape:
    name: str
    offsets: tuple[Point, ...]

    def __post_init__(self):
        offs = tuple(sorted(set(tuple(o) for o in self.offsets)))
        if not offs or len(offs) != len(self.offsets):
            raise ValueError("shape offsets must be nonempty and duplicate-free")
        if len(offs) > CAPS.fixed_shape_offsets:
            raise CapExceeded(f"shape has {len(offs)} offsets, cap {CAPS.fixed_shape_offsets}")
        object.__setattr__(self, "offsets", offs)

    @property
    def point_count(self) -> int:
        return len(self.offsets)

    def family(self) -> FixedShape:
        return FixedShape(self.offsets, self.name)

    def to_json(self):
        return {"name": self.name, "offsets": [list(o) for o in self.offsets]}


SHAPES = {
    "unit-circle": Shape("unit-circle", ((1, 0), (-1, 0), (0, 1), (0, -1))),
    "sqrt2-circle": Shape("sqrt2-circle", ((1, 1), (1, -1), (-1, 1), (-1, -1))),
    "radius2-circle": Shape("radius2-circle", ((2, 0), (-2, 0), (0, 2), (0, -2))),
    "square2": Shape("square2", ((0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1))),
    "smallest-l": Shape("smallest-l", ((0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2), (0, 1))),
}

# new points per curve in a tile-like covering (exact tilings use the point count)
TILE_LIKE_DENSITY = {"square2": Fraction(7)}


def get_shape(name_or_offsets) -> Shape:
    if isinstance(name_or_offsets, Shape):
        return name_or_offsets
    if isinstance(name_or_offsets, str):
        key = name_or_offsets.lower().replace("_", "-")
        aliases = {"unitcircle": "unit-circle", "sqrt2circle": "sqrt2-circle", "radius2circle": "radius2-circle",
                   "smallestl": "smallest-l"}
        key = aliases.get(key.replace("-", ""), key)
        if key not in SHAPES:
            raise KeyError(f"unknown shape {name_or_offsets!r}")
        return SHAPES[key]
    return Shape("custom", tuple(tuple(o) for o in name_or_offsets))


@dataclass(frozen=True)
class Torus:
    """Z^2 modulo the lattice spanned by (a, 0) and (b, c), 0 <= b < a."""

    a: int
    b: int
    c: int

    @property
    def det(self) -> int:
        return self.a * self.c

    def cell(self, p: Sequence[int]) -> int:
        x, y = p
        q, r = divmod(y, self.c)
        return r * self.a + (x - q * self.b) % self.a

    def rep(self, cell: int) -> Point:
        r, x = divmod(cell, self.a)
        return (x, r)

    def in_lattice(self, p: Sequence[int]) -> bool:
        return self.cell(p) == 0


@dataclass(frozen=True)
class TilingPattern:
    shape: Shape
    u: Point
    v: Point
    placements: tuple[Point, ...]
    kind: str = EXACT

    @property
    def torus(self) -> Torus:
        return Torus(self.u[0], self.v[0], self.v[1])

    @property
    def det(self) -> int:
        return abs(self.u[0] * self.v[1] - self.u[1] * self.v[0])

    def points_per_curve(self) -> Fraction:
        return Fraction(self.det, len(self.placements))

    def to_json(self) -> dict:
        return {
            "shape": self.shape.name if self.shape.name in SHAPES else [list(o) for o in self.shape.offsets],
            "offsets": [list(o) for o in self.shape.offsets],
            "u": list(self.u),
            "v": list(self.v),
            "placements": [list(p) for p in self.placements],
            "kind": self.kind,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TilingPattern":
        sh = obj["shape"]
        shape = get_shape(sh) if isinstance(sh, str) else Shape("custom", tuple(tuple(o) for o in sh))
        return cls(shape, tuple(obj["u"]), tuple(obj["v"]), tuple(tuple(p) for p in obj["placements"]),
                   obj.get("kind", EXACT))


def _bases(max_period: int) -> Iterator[Torus]:
    """Hermite-normal-form bases ordered by determinant, then lexicographically."""
    for det in range(1, max_period * max_period + 1):
        for a in range(1, det + 1):
            if det % a:
                continue
            c = det // a
            for b in range(a):
                yield Torus(a, b, c)


def _exact_cover(ncells: int, rows: list[frozenset], need: int | None = None, limit: int = 10**6):
    """Knuth's Algorithm X: rows covering every cell exactly once (first solution).

    Columns are chosen by smallest index among the uncovered cells with the
    fewest rows, rows in list order, so the result is deterministic.
    """
    by_cell: list[list[int]] = [[] for _ in range(ncells)]
    for r, cells in enumerate(rows):
        for c in cells:
            by_cell[c].append(r)
    covered = [False] * ncells
    alive = [True] * len(rows)
    chosen: list[int] = []
    nodes = [0]

    def rec() -> bool:
        nodes[0] += 1
        if nodes[0] > limit:
            raise CapExceeded("tiling search budget exceeded")
        best_opts = None
        for c in range(ncells):
            if covered[c]:
                continue
            opts = [r for r in by_cell[c] if alive[r]]
            if best_opts is None or len(opts) < len(best_opts):
                best_opts = opts
                if len(opts) <= 1:
                    break
        if best_opts is None:
            return True
        for r in best_opts:
            killed = []
            for c in rows[r]:
                covered[c] = True
                for r2 in by_cell[c]:
                    if alive[r2]:
                        alive[r2] = False
                        killed.append(r2)
            chosen.append(r)
            if rec():
                return True
            chosen.pop()
            for r2 in killed:
                alive[r2] = True
            for c in rows[r]:
                covered[c] = False
        return False

    return list(chosen) if rec() else None


def _cover_exactly_k(ncells: int, rows: list[frozenset], k: int, limit: int = 10**6):
    """Choose exactly k rows whose union is every cell (rows may overlap)."""
    by_cell: list[list[int]] = [[] for _ in range(ncells)]
    for r, cells in enumerate(rows):
        for c in cells:
            by_cell[c].append(r)
    size = max(len(r) for r in rows)
    count = [0] * ncells
    chosen: list[int] = []
    nodes = [0]

    def rec(uncovered: int) -> bool:
        nodes[0] += 1
        if nodes[0] > limit:
            raise CapExceeded("tiling search budget exceeded")
        if uncovered == 0:
            return len(chosen) <= k
        left = k - len(chosen)
        if left * size < uncovered:
            return False
        best = min((c for c in range(ncells) if not count[c]), key=lambda c: len(by_cell[c]))
        for r in by_cell[best]:
            newly = sum(1 for c in rows[r] if not count[c])
            for c in rows[r]:
                count[c] += 1
            chosen.append(r)
            if rec(uncovered - newly):
                return True
            chosen.pop()
            for c in rows[r]:
                count[c] -= 1
        return False

    return list(chosen) if rec(ncells) else None


def iter_periodic_tilings(shape, max_period: int = 8, kind: str = EXACT, budget: int = 10**6):
    """First pattern on each torus, tori in canonical order (determinant, then basis)."""
    shape = get_shape(shape)
    if max_period > CAPS.max_period:
        raise CapExceeded(f"max period {max_period} above cap {CAPS.max_period}")
    if kind not in (EXACT, TILE_LIKE):
        raise ValueError(f"unknown pattern kind {kind!r}")
    k = shape.point_count
    density = TILE_LIKE_DENSITY.get(shape.name, Fraction(k)) if kind == TILE_LIKE else Fraction(k)
    for tor in _bases(max_period):
        det = tor.det
        need = Fraction(det) / density
        if need.denominator != 1 or det < k:
            continue
        rows, reps = [], []
        for t in range(det):
            x, y = tor.rep(t)
            cells = frozenset(tor.cell((x + o[0], y + o[1])) for o in shape.offsets)
            if len(cells) != k:
                continue  # the shape wraps onto itself on this torus
            rows.append(cells)
            reps.append((x, y))
        if not rows:
            continue
        if kind == EXACT:
            sol = _exact_cover(det, rows, limit=budget)
        else:
            sol = _cover_exactly_k(det, rows, int(need), limit=budget)
        if sol is not None and len(sol) == need:
            places = tuple(sorted(reps[r] for r in sol))
            yield TilingPattern(shape, (tor.a, 0), (tor.b, tor.c), places, kind)


def find_periodic_tiling(shape, max_period: int = 8, kind: str = EXACT, budget: int = 10**6) -> TilingPattern | None:
    """First pattern in canonical order (determinant, basis, placements), or None.

    None means "no pattern up to this period", not "no tiling exists".
    """
    return next(iter_periodic_tilings(shape, max_period, kind, budget), None)


def validate_pattern(pat: TilingPattern) -> tuple[bool, dict[int, int]]:
    """Multiplicity of every torus cell; exact tilings need all ones."""
    tor = pat.torus
    mult = [0] * tor.det
    for p in pat.placements:
        for o in pat.shape.offsets:
            mult[tor.cell((p[0] + o[0], p[1] + o[1]))] += 1
    hist = dict(sorted(Counter(mult).items()))
    if pat.kind == EXACT:
        ok = set(hist) == {1}
    else:
        density = TILE_LIKE_DENSITY.get(pat.shape.name, Fraction(pat.shape.point_count))
        ok = 0 not in hist and pat.points_per_curve() == density
    return ok, hist


def _translates_hitting(pat: TilingPattern, n: int, shift: Point) -> list[Point]:
    tor = pat.torus
    offs = pat.shape.offsets
    xs = [o[0] for o in offs]
    ys = [o[1] for o in offs]
    place_cells = {tor.cell((p[0] + shift[0], p[1] + shift[1])) for p in pat.placements}
    out = []
    for tx in range(1 - max(xs), n - min(xs) + 1):
        for ty in range(1 - max(ys), n - min(ys) + 1):
            if tor.cell((tx, ty)) not in place_cells:
                continue
            if any(1 <= tx + ox <= n and 1 <= ty + oy <= n for ox, oy in offs):
                out.append((tx, ty))
    return out


def _prune(translates: list[Point], offs, n: int) -> list[Point]:
    """Drop redundant translates, fewest grid points first, to a minimal cover."""
    def pts(t):
        return [(t[0] + ox, t[1] + oy) for ox, oy in offs if 1 <= t[0] + ox <= n and 1 <= t[1] + oy <= n]

    mult: Counter = Counter()
    for t in translates:
        mult.update(pts(t))
    keep = set(translates)
    for t in sorted(translates, key=lambda t: (len(pts(t)), t)):
        ps = pts(t)
        if all(mult[p] >= 2 for p in ps):
            keep.discard(t)
            mult.subtract(ps)
    return sorted(keep)


def clip_translates(pat: TilingPattern, n: int) -> list[Point]:
    """Translations of a minimal sub-cover of the n x n grid, best alignment of the pattern."""
    tor = pat.torus
    best = None
    for s in range(tor.det):
        shift = tor.rep(s)
        ts = _prune(_translates_hitting(pat, n, shift), pat.shape.offsets, n)
        if best is None or len(ts) < len(best):
            best = ts
    return best


def clip_to_grid(pat: TilingPattern, n: int) -> Cover:
    """Cover of the n x n grid by pattern translates (minimal, not necessarily minimum)."""
    P = grid_points((n, n))
    fam = pat.shape.family()
    curves = [make_curve(fam, {"translation": t}, P) for t in clip_translates(pat, n)]
    return cover_from_curves(P, curves, method=f"clipped {pat.kind}")


def best_clip(shape, n: int, max_period: int = 4, kind: str | None = None) -> tuple[TilingPattern, Cover]:
    """Smallest clipped cover over the first pattern of every torus up to ``max_period``."""
    shape = get_shape(shape)
    if kind is None:
        kind = TILE_LIKE if shape.name in TILE_LIKE_DENSITY else EXACT
    best = None
    for pat in iter_periodic_tilings(shape, max_period, kind):
        ts = clip_translates(pat, n)
        if best is None or len(ts) < len(best[1]):
            best = (pat, ts)
    if best is None:
        raise LookupError(f"no periodic pattern for {shape.name} up to period {max_period}")
    pat, ts = best
    P = grid_points((n, n))
    fam = shape.family()
    cover = cover_from_curves(P, [make_curve(fam, {"translation": t}, P) for t in ts], method=f"clipped {pat.kind}")
    return pat, cover


def small_curve_lower(shape, n: int) -> int:
    shape = get_shape(shape)
    per = TILE_LIKE_DENSITY.get(shape.name, shape.point_count)
    return math.ceil(Fraction(n * n) / per)


def small_curve_bounds(shape, n: int, pattern: TilingPattern | None = None) -> BoundsReport:
    shape = get_shape(shape)
    lower = small_curve_lower(shape, n)
    if pattern is None:
        pattern, cover = best_clip(shape, n)
    else:
        cover = clip_to_grid(pattern, n)
    return BoundsReport(lower, len(cover), None, f"clipped {pattern.kind}", cover)
