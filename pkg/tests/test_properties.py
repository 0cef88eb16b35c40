import itertools
import random

from hypothesis import assume, given, settings, strategies as st

from _oracles import all_concyclic
from gridcover.families import (
    Circle, ClosedConvex, Curve, FixedShape, Line, Monotone, Orthoconvex, StrictlyConvex, enumerate_candidates,
    make_curve,
)
from gridcover.geometry import INTERIOR, PointSet, collinear, concyclic4, grid_points, hull_classify
from gridcover.orthoconvex import enumerate_orthoconvex, grid_lines_hit
from gridcover.solver import Cover, exact_min_cover
from gridcover.tilings import SHAPES

pts2 = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=7, unique=True)
families = st.sampled_from([Line(), Circle(), ClosedConvex(), StrictlyConvex(), Monotone(), Orthoconvex(1),
                            FixedShape(SHAPES["square2"].offsets)])


@settings(max_examples=80)
@given(pts2, families, st.randoms())
def test_coverability_is_hereditary(pts, fam, rnd):
    if not fam.coverable(pts):
        return
    sub = rnd.sample(pts, rnd.randint(1, len(pts)))
    assert fam.coverable(sub)


@settings(max_examples=80)
@given(pts2, families, st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_coverability_is_translation_invariant(pts, fam, t):
    moved = [(x + t[0], y + t[1]) for x, y in pts]
    assert fam.coverable(pts) == fam.coverable(moved)


@settings(max_examples=40)
@given(pts2, families, st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_translated_witness_covers_translated_points(pts, fam, t):
    assume(fam.coverable(pts))
    w = fam.witness(pts)
    w2 = fam.translate_witness(w, t)
    assert all(fam.on_curve(w2, (x + t[0], y + t[1])) for x, y in pts)


@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9)), min_size=3, max_size=3))
def test_collinear_ignores_order(trip):
    want = collinear(*trip)
    assert all(collinear(*p) == want for p in itertools.permutations(trip))


def test_concyclic4_matches_circumcircle_oracle():
    P = grid_points((4, 4)).points
    for quad in itertools.combinations(P, 4):
        if any(collinear(*t) for t in itertools.combinations(quad, 3)):
            continue
        assert concyclic4(*quad) == all_concyclic(list(quad))


def test_hull_interior_count():
    for n in range(2, 9):
        labels = hull_classify(grid_points((n, n)).points)
        assert labels.count(INTERIOR) == (n - 2) ** 2


@settings(max_examples=30)
@given(st.sets(st.tuples(st.integers(1, 5), st.integers(1, 5)), min_size=1, max_size=12),
       st.sampled_from([Line(), Circle(), ClosedConvex()]))
def test_cover_json_round_trip(pts, fam):
    P = PointSet(2, tuple(pts))
    c = exact_min_cover(P, fam)
    back = Cover.from_json(c.to_json())
    assert back.to_json() == c.to_json()
    for cv in back.curves:
        assert make_curve(cv.family, cv.witness, P).covered == cv.covered


@settings(max_examples=30)
@given(st.integers(3, 5), st.sampled_from([Line(), Circle(), Orthoconvex(2)]))
def test_curve_json_round_trip(n, fam):
    P = grid_points((n, n))
    for c in enumerate_candidates(P, fam)[:10]:
        assert Curve.from_json(c.to_json()).to_json() == c.to_json()


def test_one_corner_polygons_hit_at_most_six_lines():
    rng = random.Random(0)
    polys = enumerate_orthoconvex((6, 6), 1)
    for poly in rng.sample(polys, min(300, len(polys))):
        assert len(grid_lines_hit(poly, (6, 6))) <= 6
