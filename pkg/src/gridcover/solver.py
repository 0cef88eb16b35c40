"""Exact minimum covers, greedy upper bounds and lower bounds.

Two independent exact routes:

* ``partition``: assign points one at a time to at most ``m`` groups, each
  group kept coverable by the family predicate;
* ``candidate``: exact set cover over :func:`enumerate_candidates`.

Both deepen ``m`` from a lower bound upward, so the first success is optimal.
"""

from __future__ import annotations

import math
import os
from collections import Counter
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .config import CapExceeded
from .families import (
    AlgebraicMaxDeg,
    Circle,
    ClosedConvex,
    CoverabilityUnknown,
    Curve,
    CurveFamily,
    FixedShape,
    Line,
    Monotone,
    Orthoconvex,
    StrictlyConvex,
    _bits,
    _popcount,
    enumerate_candidates,
    leq,
    make_curve,
)
from .geometry import INTERIOR, PointSet, convex_hull, hull_classify
from . import orthoconvex as ortho


class BudgetExhausted(RuntimeError):
    pass


@dataclass
class Cover:
    pointset: PointSet
    curves: list[Curve]
    disjoint: bool = False
    optimal: bool = False
    method: str = ""
    bounds: tuple[int, int] | None = None
    parallel: bool = False

    def __len__(self):
        return len(self.curves)

    def to_json(self) -> dict:
        out = {
            "pointset": self.pointset.to_json(),
            "curves": [c.to_json() for c in self.curves],
            "disjoint": self.disjoint,
            "optimal": self.optimal,
            "method": self.method,
        }
        if self.bounds is not None:
            out["bounds"] = {"lower": self.bounds[0], "upper": self.bounds[1]}
        if self.parallel:
            out["parallel"] = True
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Cover":
        b = obj.get("bounds")
        return cls(
            PointSet.from_json(obj["pointset"]),
            [Curve.from_json(c) for c in obj["curves"]],
            bool(obj.get("disjoint", False)),
            bool(obj.get("optimal", False)),
            obj.get("method", ""),
            (b["lower"], b["upper"]) if b else None,
            bool(obj.get("parallel", False)),
        )


@dataclass
class BoundsReport:
    lower: int
    upper: int
    exact: int | None = None
    method: str = ""
    cover: Cover | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} above upper bound {self.upper}")
        if self.exact is not None and not self.lower <= self.exact <= self.upper:
            raise ValueError("exact value outside its bounds")

    def to_json(self) -> dict:
        out = {"lower": self.lower, "upper": self.upper, "exact": self.exact, "method": self.method}
        if self.cover is not None:
            out["cover"] = self.cover.to_json()
        return out


def _pairwise_disjoint(curves) -> bool:
    seen: set[int] = set()
    for c in curves:
        if seen.intersection(c.covered):
            return False
        seen.update(c.covered)
    return True


def cover_from_curves(P: PointSet, curves: list[Curve], **kw) -> Cover:
    return Cover(P, list(curves), disjoint=_pairwise_disjoint(curves), **kw)


def verify_cover(cover: Cover) -> tuple[bool, dict]:
    """Recheck every witness against its coverage list and the union condition."""
    P = cover.pointset
    cache: dict = {}
    mismatches = []
    union: set[int] = set()
    for k, c in enumerate(cover.curves):
        try:
            got = tuple(c.family.covered_indices(c.witness, P, cache))
        except Exception as exc:  # malformed witness
            mismatches.append({"curve": k, "error": str(exc)})
            continue
        if got != tuple(c.covered):
            mismatches.append({"curve": k, "claimed": list(c.covered), "actual": list(got)})
        if not got:
            mismatches.append({"curve": k, "error": "curve covers no point"})
        union.update(got)
    uncovered = [list(P[i]) for i in range(len(P)) if i not in union]
    disjoint_ok = not cover.disjoint or _pairwise_disjoint(cover.curves)
    ok = not mismatches and not uncovered and disjoint_ok
    diag = {"uncovered": uncovered, "mismatches": mismatches}
    if not disjoint_ok:
        diag["disjoint"] = "coverage sets overlap although the cover is flagged disjoint"
    return ok, diag


# ---------------------------------------------------------------------------
# bounds

def grid_dims(P: PointSet) -> tuple[int, ...] | None:
    """Side lengths when P is a full axis box of lattice points, else None."""
    lo, hi = P.bbox()
    dims = tuple(h - l + 1 for l, h in zip(lo, hi))
    return dims if math.prod(dims) == len(P) else None


def max_coverage(P: PointSet, fam: CurveFamily, cands: list[Curve] | None = None) -> int | None:
    """Largest number of points of P on a single curve, when cheaply computable."""
    if cands:
        return max(len(c.covered) for c in cands)
    if len(P) <= 1:
        return len(P)
    if isinstance(fam, Orthoconvex) and P.d == 2:
        got = ortho.max_weight_polygon(P.points, [1] * len(P), fam.max_inner_corners)
        best = got[0] if got else 1
        if fam.allow_degenerate:
            best = max(best, max_collinear_axis(P))
        return best
    if isinstance(fam, Monotone):
        return len(longest_chain(P.points))
    if isinstance(fam, AlgebraicMaxDeg):
        return None
    if isinstance(fam, FixedShape):
        return len(fam.offsets)
    try:
        cands = enumerate_candidates(P, fam)
    except (CapExceeded, ValueError):
        return None
    return max(len(c.covered) for c in cands)


def max_collinear_axis(P: PointSet) -> int:
    return max(max(Counter(p[0] for p in P).values()), max(Counter(p[1] for p in P).values()))


def theorem_bound(P: PointSet, fam: CurveFamily) -> tuple[int, str] | None:
    """Closed-form grid lower bounds (convex and orthoconvex families)."""
    dims = grid_dims(P)
    if dims is None or len(dims) != 2:
        return None
    if type(fam) is ClosedConvex:
        return math.ceil(min(dims) / 2), "convex grid bound"
    if isinstance(fam, Orthoconvex) and dims[0] == dims[1] and not fam.allow_degenerate:
        n = dims[0]
        k = fam.max_inner_corners
        if k is not None and k <= 1:
            return math.ceil(2 * n / 5), "orthoconvex 2n/5 bound"
        if k is not None and k <= 2:
            return math.ceil(2 * n / 7), "orthoconvex 2n/7 bound"
        return math.ceil((n + 1) / 4), "orthoconvex (n+1)/4 bound"
    return None


def lower_bound_parts(P: PointSet, fam: CurveFamily, theorems: bool = True,
                      cands: list[Curve] | None = None) -> dict[str, int]:
    """Each available lower bound by name: "coverage" and, for grids, "theorem"."""
    if len(P) == 0:
        return {"coverage": 0}
    try:
        mc = max_coverage(P, fam, cands)
    except CapExceeded:
        mc = None
    parts = {"coverage": math.ceil(len(P) / mc) if mc else 1}
    if theorems:
        tb = theorem_bound(P, fam)
        if tb:
            parts["theorem"] = tb[0]
    return parts


def lower_bound(P: PointSet, fam: CurveFamily, theorems: bool = True, cands: list[Curve] | None = None) -> int:
    """Largest of the coverage-size bound and (optionally) the grid theorems."""
    return max(lower_bound_parts(P, fam, theorems, cands).values())


# ---------------------------------------------------------------------------
# greedy

def longest_chain(points) -> list:
    """Longest chain under coordinate-wise <= (quadratic DP, lexicographic order)."""
    pts = sorted(points)
    if not pts:
        return []
    best = [1] * len(pts)
    prev = [-1] * len(pts)
    for j in range(len(pts)):
        for i in range(j):
            if best[i] + 1 > best[j] and leq(pts[i], pts[j]):
                best[j], prev[j] = best[i] + 1, i
    j = max(range(len(pts)), key=lambda t: (best[t], -t))
    out = []
    while j >= 0:
        out.append(pts[j])
        j = prev[j]
    return out[::-1]


def _greedy_pick(P: PointSet, fam: CurveFamily, uncovered: set[int]) -> Curve:
    pts = [P[i] for i in sorted(uncovered)]
    if isinstance(fam, Orthoconvex):
        weights = [1 if i in uncovered else 0 for i in range(len(P))]
        got = ortho.max_weight_polygon(P.points, weights, fam.max_inner_corners)
        if got is None or got[0] == 0:
            return make_curve(fam, fam.witness([pts[0]], P), P)
        return make_curve(fam, {"polygon": got[1]}, P)
    if isinstance(fam, Monotone):
        return make_curve(fam, fam.witness(longest_chain(pts), P), P)
    if isinstance(fam, StrictlyConvex):
        return make_curve(fam, fam.witness(convex_hull(pts), P), P)
    if isinstance(fam, ClosedConvex):
        labels = hull_classify(pts)
        return make_curve(fam, fam.witness([p for p, l in zip(pts, labels) if l != INTERIOR], P), P)
    if isinstance(fam, AlgebraicMaxDeg):
        rest = set(uncovered)
        lines = []
        for _ in range(fam.degree):
            if not rest:
                break
            c = _greedy_pick(P, Line(), rest)
            a, v = c.witness["point"], c.witness["direction"]
            lines.append(_line_eq(a, v))
            rest -= set(c.covered)
        return make_curve(fam, {"lines": tuple(lines)}, P)
    raise TypeError(fam)


def _line_eq(a, v):
    from .families import canonical_line
    aa, bb = v[1], -v[0]
    return canonical_line(aa, bb, aa * a[0] + bb * a[1])


def _enumerable(P: PointSet, fam: CurveFamily, ortho: bool = False) -> list[Curve] | None:
    # orthoconvex enumeration is only worth it when the candidate route asked for it
    if isinstance(fam, Monotone) or (isinstance(fam, Orthoconvex) and not ortho and len(P) > 1):
        return None
    try:
        return enumerate_candidates(P, fam)
    except CapExceeded:
        return None


def greedy_cover(P: PointSet, fam: CurveFamily, cands: list[Curve] | None = None) -> Cover:
    """Repeatedly take the curve covering the most uncovered points.

    Ties go to the lexicographically smallest coverage set. Families without an
    enumerable candidate list use a family oracle for the best next curve.
    """
    n = len(P)
    if n == 0:
        return Cover(P, [], method="greedy")
    if cands is None:
        cands = _enumerable(P, fam)
    uncovered = set(range(n))
    curves = []
    while uncovered:
        if cands is not None:
            best = max(cands, key=lambda c: (len(uncovered.intersection(c.covered)), [-i for i in c.covered]))
            if not uncovered.intersection(best.covered):
                raise RuntimeError("candidate list does not cover the point set")
        else:
            best = _greedy_pick(P, fam, uncovered)
            if not uncovered.intersection(best.covered):
                raise RuntimeError("greedy oracle made no progress")
        curves.append(best)
        uncovered.difference_update(best.covered)
    return cover_from_curves(P, curves, method="greedy")


# ---------------------------------------------------------------------------
# exact search

@dataclass
class _Budget:
    nodes: int | None = None
    deadline: float | None = None
    used: int = 0

    def tick(self):
        self.used += 1
        if self.nodes is not None and self.used > self.nodes:
            raise BudgetExhausted("node budget exhausted")
        if self.deadline is not None and self.used % 256 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted("time budget exhausted")


def _setcover(n: int, masks: list[int], m: int, budget: _Budget, first: list[int] | None = None):
    """Pick at most m masks covering range(n); masks are tried in list order."""
    full = (1 << n) - 1
    cands_of = [[c for c in masks if c >> p & 1] for p in range(n)]
    maxsize = max(_popcount(c) for c in masks)
    failed: dict[int, int] = {}

    def rec(unc: int, k: int):
        if unc == 0:
            return []
        if k == 0:
            return None
        budget.tick()
        if _popcount(unc) > k * maxsize:
            return None
        if failed.get(unc, -1) >= k:
            return None
        p = min(_bits(unc), key=lambda q: len(cands_of[q]))
        for c in cands_of[p]:
            r = rec(unc & ~c, k - 1)
            if r is not None:
                return [c] + r
        failed[unc] = k
        return None

    if first is not None:
        for c in first:
            r = rec(full & ~c, m - 1)
            if r is not None:
                return [c] + r
        return None
    return rec(full, m)


def _setcover_branch(args):
    n, masks, m, firsts, nodes, deadline = args
    return _setcover(n, masks, m, _Budget(nodes, deadline), first=firsts)


def _partition(P: PointSet, fam: CurveFamily, m: int, budget: _Budget, capacity: int | None):
    """Split P into at most m coverable groups, or None."""
    n = len(P)
    pts = P.points
    cache: dict[int, bool] = {}

    def ok(mask: int) -> bool:
        r = cache.get(mask)
        if r is None:
            r = cache[mask] = fam.coverable([pts[i] for i in _bits(mask)])
        return r

    groups: list[int] = []
    sizes: list[int] = []

    def rec(unassigned: int, left: int) -> bool:
        if not unassigned:
            return True
        budget.tick()
        if capacity is not None:
            room = sum(capacity - s for s in sizes) + (m - len(groups)) * capacity
            if left > room:
                return False
        best_p, best_opts = -1, None
        can_open = len(groups) < m
        u = unassigned
        p = 0
        while u:
            if u & 1:
                bit = 1 << p
                opts = [g for g in range(len(groups)) if ok(groups[g] | bit)]
                if can_open:
                    opts.append(len(groups))
                if not opts:
                    return False
                if best_opts is None or len(opts) < len(best_opts):
                    best_p, best_opts = p, opts
                    if len(opts) == 1:
                        break
            u >>= 1
            p += 1
        bit = 1 << best_p
        for g in best_opts:
            if g == len(groups):
                groups.append(bit)
                sizes.append(1)
                if rec(unassigned & ~bit, left - 1):
                    return True
                groups.pop()
                sizes.pop()
            else:
                old = groups[g]
                groups[g] = old | bit
                sizes[g] += 1
                if rec(unassigned & ~bit, left - 1):
                    return True
                groups[g] = old
                sizes[g] -= 1
        return False

    if rec((1 << n) - 1, n):
        return list(groups)
    return None


def _default_method(P: PointSet, fam: CurveFamily) -> str:
    if isinstance(fam, (Line, Circle, FixedShape)):
        return "candidate"
    if isinstance(fam, Orthoconvex) and fam.max_inner_corners is not None and fam.max_inner_corners <= 2:
        lo, hi = P.bbox()
        if max(h - l for l, h in zip(lo, hi)) + 3 <= 8:
            return "candidate"
    return "partition"


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("GRIDCOVER_THREADS", "1") or 1)
    return max(1, threads)


def exact_min_cover(
    P: PointSet,
    fam: CurveFamily,
    budget: int | None = None,
    *,
    method: str = "auto",
    time_budget: float | None = None,
    threads: int | None = None,
    theorems: bool = True,
    upper: Cover | None = None,
    lower: int | None = None,
) -> Cover | BoundsReport:
    """A provably minimum cover, or a :class:`BoundsReport` when the budget runs out.

    ``budget`` caps search nodes and ``time_budget`` wall-clock seconds. With
    ``theorems=False`` the search starts from the coverage-size bound only, so
    closed-form grid bounds are re-derived rather than assumed. ``upper`` seeds
    the incumbent (e.g. a cover from local search). ``lower`` replaces the
    computed lower bound as the first size tried; ``lower=1`` makes the search
    refute every smaller size itself.
    """
    if len(P) == 0:
        return Cover(P, [], optimal=True, method="empty", bounds=(0, 0))
    if P.d != 2 and not isinstance(fam, (Line, Monotone)):
        fam.check_dim(P.d)
    if method == "auto":
        method = _default_method(P, fam)
    if method not in ("candidate", "partition"):
        raise ValueError(f"unknown method {method!r}")
    nthreads = _threads(threads)
    bud = _Budget(budget, time.monotonic() + time_budget if time_budget else None)
    cands = _enumerable(P, fam, method == "candidate") if method == "candidate" or not isinstance(fam, (ClosedConvex, AlgebraicMaxDeg)) else None
    if method == "candidate" and cands is None:
        raise CapExceeded("candidate enumeration is not available for this instance")
    lb = lower_bound(P, fam, theorems=theorems, cands=cands) if lower is None else max(1, lower)

    try:
        inc = greedy_cover(P, fam, cands)
    except CoverabilityUnknown as exc:
        raise CoverabilityUnknown(f"coverability unknown on this instance: {exc}") from exc
    if upper is not None and len(upper) < len(inc):
        inc = upper
    if isinstance(fam, Orthoconvex) and P.d == 2 and len(inc) > lb:
        for k in range(lb, len(inc)):
            found = orthoconvex_local_search(P, fam, k, time_budget=min(30.0, time_budget or 30.0), restarts=40)
            if found is not None:
                inc = found
                break
    ub = len(inc)
    lb = min(lb, ub)

    masks = None
    if method == "candidate":
        masks = [sum(1 << i for i in c.covered) for c in cands]
        by_mask = {m: c for m, c in zip(masks, cands)}
    capacity = max_coverage(P, fam, cands) if method == "partition" else None
    m = lb
    parallel = False
    try:
        while m < ub:
            if method == "candidate":
                if nthreads > 1:
                    sol = _parallel_setcover(len(P), masks, m, bud, nthreads)
                    parallel = True
                else:
                    sol = _setcover(len(P), masks, m, bud)
                if sol is not None:
                    curves = [by_mask[s] for s in sol]
            else:
                groups = _partition(P, fam, m, bud, capacity)
                sol = groups
                if groups is not None:
                    curves = [make_curve(fam, fam.witness(P.subset(_bits(g)), P), P) for g in groups]
            if sol is not None:
                return cover_from_curves(P, curves, optimal=True, method=method, bounds=(m, m), parallel=parallel)
            m += 1
    except BudgetExhausted as exc:
        best = Cover(inc.pointset, inc.curves, inc.disjoint, False, inc.method, (m, ub))
        return BoundsReport(m, ub, None, f"{method}: {exc}", best)
    return Cover(P, inc.curves, inc.disjoint, True, f"{method} ({inc.method} incumbent)", (ub, ub), parallel)


def _parallel_setcover(n, masks, m, bud: _Budget, workers: int):
    # split the branches on the first point across processes
    cands_of0 = [c for c in masks if c & 1]
    chunks = [cands_of0[i::workers] for i in range(workers)]
    args = [(n, masks, m, ch, None if bud.nodes is None else bud.nodes - bud.used, bud.deadline)
            for ch in chunks if ch]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        results = list(ex.map(_setcover_branch, args))
    for r in results:
        if r is not None:
            return r
    return None


# ---------------------------------------------------------------------------
# local search for orthoconvex covers

def orthoconvex_local_search(
    P: PointSet, fam: Orthoconvex, m: int, time_budget: float = 60.0, seed: int = 0,
    restarts: int | None = None,
) -> Cover | None:
    """Look for an m-curve cover by repeated best responses with random restarts.

    Each step re-optimises one curve against the points the other curves miss,
    using the exact polygon dynamic program. Returns None if nothing is found.
    With ``restarts`` set the run is deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    n = len(P)
    deadline = time.monotonic() + time_budget
    k = fam.max_inner_corners

    def best_for(weights):
        got = ortho.max_weight_polygon(P.points, weights, k)
        return got[1] if got else None

    def trace(poly):
        return set(fam.covered_indices({"polygon": poly}, P))

    tries = 0
    while time.monotonic() < deadline and (restarts is None or tries < restarts):
        tries += 1
        # random start: each curve maximises a random weighting
        polys = []
        for _ in range(m):
            polys.append(best_for([rng.randint(1, 8) for _ in range(n)]))
        traces = [trace(p) for p in polys]
        stall = 0
        while stall < 3 * m and time.monotonic() < deadline:
            improved = False
            for i in rng.sample(range(m), m):
                others = set().union(*(traces[j] for j in range(m) if j != i))
                missing = [q for q in range(n) if q not in others]
                if not missing:
                    return cover_from_curves(P, [make_curve(fam, {"polygon": polys[j]}, P) for j in range(m) if j != i]
                                             + [make_curve(fam, {"polygon": polys[i]}, P)], method="local-search")
                before = len(traces[i].intersection(missing))
                weights = [0] * n
                for q in missing:
                    weights[q] = 16 + rng.randint(0, 3)
                for q in others:
                    weights[q] = rng.randint(0, 1)
                poly = best_for(weights)
                tr = trace(poly)
                if len(tr.intersection(missing)) > before:
                    improved = True
                if len(tr.intersection(missing)) >= before:
                    polys[i], traces[i] = poly, tr
                if len(set().union(*traces)) == n:
                    return cover_from_curves(P, [make_curve(fam, {"polygon": p}, P) for p in polys],
                                             method="local-search")
            stall = 0 if improved else stall + 1
    return None
