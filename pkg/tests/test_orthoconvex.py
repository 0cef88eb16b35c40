import functools

import pytest
from hypothesis import given, strategies as st

from gridcover.families import Orthoconvex
from gridcover.geometry import GridSpec
from gridcover.orthoconvex import (
    RectilinearPolygon, enumerate_orthoconvex, exposed_points, grid_lines_hit,
    inner_corner_count, is_good_sequence, is_orthoconvex,
)

L_VERTS = ((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2))
PLUS_VERTS = ((1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (2, 2), (2, 3), (1, 3), (1, 2), (0, 2), (0, 1), (1, 1))


def rect(x0, y0, x1, y1):
    return RectilinearPolygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


def test_enumeration_counts():
    assert len(enumerate_orthoconvex((2, 2), 0)) == 1
    assert len(enumerate_orthoconvex((3, 3), 0)) == 9
    for box in ((3, 3), (4, 3), (4, 4)):
        assert len(enumerate_orthoconvex(box, 1)) >= len(enumerate_orthoconvex(box, 0))


def test_rectangle_count_formula():
    # axis rectangles with positive area: C(k1, 2) * C(k2, 2)
    assert len(enumerate_orthoconvex((4, 5), 0)) == 6 * 10


def test_unit_square_covers_four_points():
    (sq,) = enumerate_orthoconvex((2, 2), 0)
    assert sorted(sq.boundary_points()) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_inner_corners():
    assert inner_corner_count(rect(0, 0, 1, 1)) == 0
    assert inner_corner_count(RectilinearPolygon(L_VERTS)) == 1
    plus = RectilinearPolygon(PLUS_VERTS)
    assert inner_corner_count(plus) == 4
    assert is_orthoconvex(plus)


def test_plus_needs_all_four_reflex_corners():
    pts = RectilinearPolygon(PLUS_VERTS).boundary_points()
    assert Orthoconvex().coverable(pts)
    assert Orthoconvex(4).coverable(pts)
    assert not Orthoconvex(3).coverable(pts)
    assert not Orthoconvex(2).coverable(pts)


def test_polygon_validation():
    with pytest.raises(ValueError):
        RectilinearPolygon(((0, 0), (2, 1), (0, 2)))
    # bow tie: self-intersecting
    with pytest.raises(ValueError):
        RectilinearPolygon(((0, 0), (2, 0), (2, 1), (1, 1), (1, -1), (3, -1), (3, 2), (0, 2)))


def test_lines_hit():
    assert grid_lines_hit(rect(1, 1, 2, 2), (3, 3)) == {("h", 1), ("h", 2), ("v", 1), ("v", 2)}
    L = RectilinearPolygon(tuple((x + 1, y + 1) for x, y in L_VERTS))
    assert len(grid_lines_hit(L, (5, 5))) == 6


def test_single_corner_curves_hit_few_lines():
    for poly in enumerate_orthoconvex((5, 5), 1):
        hits = grid_lines_hit(poly, (5, 5))
        assert len(hits) <= 6
        if inner_corner_count(poly) == 0:
            assert len(hits) == 4


def test_exposed_points():
    assert exposed_points([rect(1, 1, 3, 3)], (6, 6)) == set()
    # row 2 of the first rectangle crosses column 5 of the second
    got = exposed_points([rect(1, 2, 2, 3), rect(5, 5, 6, 6)], (6, 6))
    assert (5, 2) in got and (1, 5) in got
    covered = {p for r in (rect(1, 2, 2, 3), rect(5, 5, 6, 6)) for p in r.boundary_points()}
    assert not got & covered


def test_good_sequences():
    assert is_good_sequence([rect(1, 1, 3, 3)], (5, 5))
    assert is_good_sequence([rect(1, 1, 3, 3), rect(3, 1, 5, 2)], (5, 5))
    assert not is_good_sequence([rect(1, 1, 2, 2), rect(4, 4, 5, 5)], (5, 5))


def test_polygon_json_round_trip():
    p = RectilinearPolygon(L_VERTS)
    assert RectilinearPolygon.from_json(p.to_json()) == p


# The coverability DP against brute enumeration: every polygon in the box
# padded by one around a 4 x 4 point window.

@functools.lru_cache(maxsize=None)
def _boundaries(k):
    return [frozenset(p.boundary_points()) for p in enumerate_orthoconvex(GridSpec((6, 6)), k)]


@given(st.sets(st.tuples(st.integers(2, 5), st.integers(2, 5)), min_size=1, max_size=10),
       st.sampled_from([0, 1, 2, None]))
def test_dp_matches_enumeration(pts, k):
    brute = any(pts <= b for b in _boundaries(k))
    if len(pts) == 1:
        brute = True
    assert Orthoconvex(k).coverable(sorted(pts)) == brute
