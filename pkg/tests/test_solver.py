import math

import pytest
from hypothesis import given, settings, strategies as st

from _oracles import all_collinear, all_concyclic, brute_min_cover, circle_pred_radius, convex_position, shape_pred
from gridcover.families import Circle, ClosedConvex, FixedRadiusCircle, Line, Monotone, Orthoconvex, SkewLine
from gridcover.geometry import PointSet, grid_points
from gridcover.solver import (
    BoundsReport, Cover, exact_min_cover, greedy_cover, lower_bound, lower_bound_parts, verify_cover,
)
from gridcover.tilings import SHAPES

# minimum circle cover of the 3 x 3 grid, from the subset DP in _oracles
CIRCLE_3X3 = 3


def size(r):
    assert isinstance(r, Cover) and r.optimal
    assert verify_cover(r)[0]
    return len(r)


def test_line_examples():
    assert size(exact_min_cover(grid_points((3, 3)), Line())) == 3
    assert size(exact_min_cover(grid_points((2, 2, 2)), Line())) == 4


def test_convex_5x5():
    assert size(exact_min_cover(grid_points((5, 5)), ClosedConvex(), theorems=False)) == 3


def test_circle_3x3_matches_frozen_oracle():
    P = grid_points((3, 3))
    assert brute_min_cover(P.points, all_concyclic) == CIRCLE_3X3
    for method in ("candidate", "partition"):
        assert size(exact_min_cover(P, Circle(), method=method, lower=1)) == CIRCLE_3X3


def test_orthoconvex_5x5_one_corner():
    assert size(exact_min_cover(grid_points((5, 5)), Orthoconvex(1), theorems=False)) == 2


def test_greedy_examples():
    assert len(greedy_cover(grid_points((3, 3)), Line())) <= 4
    for n in (3, 4, 5):
        g = greedy_cover(grid_points((n, n)), SHAPES["unit-circle"].family())
        assert verify_cover(g)[0]
        assert len(g) >= math.ceil(n * n / 4)
    one = PointSet(2, ((4, 4),))
    for fam in (Line(), Circle(), ClosedConvex(), Orthoconvex(), Monotone()):
        assert len(greedy_cover(one, fam)) == 1


def test_lower_bound_examples():
    assert lower_bound(grid_points((5, 5)), Orthoconvex(1)) == 2
    parts = lower_bound_parts(grid_points((7, 7)), Orthoconvex(2))
    assert parts["theorem"] == 2
    # a single curve carries at most 24 of the 49 points
    assert parts["coverage"] == 3
    assert lower_bound(grid_points((4, 4)), SHAPES["square2"].family()) == 2


def test_verify_cover_diagnostics():
    c = exact_min_cover(grid_points((3, 3)), Line())
    assert verify_cover(c) == (True, {"uncovered": [], "mismatches": []})
    short = Cover(c.pointset, c.curves[:-1])
    ok, diag = verify_cover(short)
    assert not ok and diag["uncovered"]
    bad = c.curves[0]
    broken = type(bad)(bad.family, bad.witness, tuple(sorted(set(bad.covered) ^ {4})))
    ok, diag = verify_cover(Cover(c.pointset, [broken] + c.curves[1:]))
    assert not ok and diag["mismatches"]


def test_budget_gives_bounds_report():
    r = exact_min_cover(grid_points((5, 5)), ClosedConvex(), budget=20, theorems=False, lower=1)
    assert isinstance(r, BoundsReport)
    assert r.lower <= r.upper
    assert r.cover is not None and verify_cover(r.cover)[0]


def test_bounds_report_validation():
    with pytest.raises(ValueError):
        BoundsReport(3, 2)
    with pytest.raises(ValueError):
        BoundsReport(1, 2, exact=5)


def test_cover_json_round_trip():
    c = exact_min_cover(grid_points((4, 4)), Circle())
    js = c.to_json()
    assert Cover.from_json(js).to_json() == js
    assert js["bounds"] == {"lower": len(c), "upper": len(c)}


def test_parallel_matches_serial():
    P = grid_points((4, 4))
    a = exact_min_cover(P, Circle(), lower=1)
    b = exact_min_cover(P, Circle(), lower=1, threads=2)
    assert len(a) == len(b)
    assert b.parallel and not a.parallel
    assert verify_cover(b)[0]


def test_thread_env_fallback(monkeypatch):
    from gridcover.solver import _threads
    monkeypatch.setenv("GRIDCOVER_THREADS", "3")
    assert _threads(None) == 3
    assert _threads(2) == 2


def test_candidate_route_unavailable_for_chains():
    from gridcover.config import CapExceeded
    with pytest.raises(CapExceeded):
        exact_min_cover(grid_points((3, 3)), Monotone(), method="candidate")


# ---------------------------------------------------------------------------
# both solvers against the subset DP

ORACLES = [
    (Line(), all_collinear),
    (SkewLine(), lambda s: all_collinear(s) and (len(s) < 2 or (s[0][0] != s[1][0] and s[0][1] != s[1][1]))),
    (Circle(), all_concyclic),
    (ClosedConvex(), convex_position),
    (FixedRadiusCircle(2), circle_pred_radius(2)),
    (SHAPES["smallest-l"].family(), shape_pred(SHAPES["smallest-l"].offsets)),
    (SHAPES["radius2-circle"].family(), shape_pred(SHAPES["radius2-circle"].offsets)),
]


@pytest.mark.parametrize("dims", [(2, 3), (3, 3), (2, 5), (3, 4)])
@pytest.mark.parametrize("fam,pred", ORACLES, ids=lambda x: getattr(x, "name", ""))
def test_solvers_match_subset_dp(dims, fam, pred):
    P = grid_points(dims)
    want = brute_min_cover(P.points, pred)
    for method in ("candidate", "partition"):
        assert size(exact_min_cover(P, fam, method=method, lower=1)) == want


points_4x4 = st.sets(st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=11)


@settings(max_examples=30)
@given(points_4x4, st.sampled_from([0, 2]))
def test_random_subsets_match_subset_dp(pts, which):
    fam, pred = ORACLES[which]
    P = PointSet(2, tuple(pts))
    want = brute_min_cover(P.points, pred)
    assert size(exact_min_cover(P, fam, method="candidate", lower=1)) == want
    assert size(exact_min_cover(P, fam, method="partition", lower=1)) == want


@settings(max_examples=25)
@given(points_4x4, st.tuples(st.integers(1, 4), st.integers(1, 4)), st.sampled_from([Line(), Circle(), ClosedConvex()]))
def test_adding_a_point_never_helps(pts, extra, fam):
    small = PointSet(2, tuple(pts))
    big = PointSet(2, tuple(pts | {extra}))
    assert size(exact_min_cover(small, fam)) <= size(exact_min_cover(big, fam))


@settings(max_examples=25)
@given(points_4x4, st.sampled_from([Line(), Circle()]))
def test_sandwich_between_trivial_bounds(pts, fam):
    from gridcover.incidence import max_collinear
    P = PointSet(2, tuple(pts))
    v = size(exact_min_cover(P, fam))
    ell = max_collinear(P) if isinstance(fam, Line) else max(len(c.covered) for c in greedy_cover(P, fam).curves)
    assert math.ceil(len(P) / max(ell, 1)) <= v <= max(1, math.ceil(len(P) / 2))


def test_line_partition_in_three_dimensions():
    P = grid_points((2, 2, 3))
    assert size(exact_min_cover(P, Line(), method="partition", lower=1)) == 4
    assert size(exact_min_cover(P, Line(), method="candidate", lower=1)) == 4


def test_orthoconvex_unbounded_small_squares():
    for n in (4, 5, 6):
        assert size(exact_min_cover(grid_points((n, n)), Orthoconvex(), theorems=False)) == 2
