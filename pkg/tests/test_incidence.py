import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gridcover import constructions as K
from gridcover.families import Circle, Line
from gridcover.geometry import PointSet, collinear, grid_points
from gridcover.incidence import (
    LineSet, blow_up, bound_diagnostic, build_counterexample, check_freedom, check_star_property,
    collinear_classes, count_incidences, max_collinear, points_per_line,
)
from gridcover.solver import exact_min_cover, greedy_cover


def test_converse_n2():
    P, L = build_counterexample(2)
    assert len(P) == 4 and len(L) == 2
    assert check_star_property(P, L)


def test_converse_n5_by_brute_triples():
    P, L = build_counterexample(5)
    assert len(P) == 25 and points_per_line(P, L) == [5] * 5
    for a, b, c in itertools.combinations(P.points, 3):
        if collinear(a, b, c):
            assert a[1] == b[1] == c[1]


def test_converse_n10():
    P, L = build_counterexample(10)
    assert len(P) == 100
    assert max_collinear(P) == 10
    assert check_star_property(P, L)
    assert sorted(k for _, k in collinear_classes(P)) == [10] * 10


def test_converse_rejects_n1():
    with pytest.raises(ValueError):
        build_counterexample(1)


def test_star_property_fails_on_the_grid():
    P = grid_points((3, 3))
    L = LineSet(((0, 1, 1), (0, 1, 2), (0, 1, 3)))
    assert not check_star_property(P, L)


def test_line_set_canonical_and_json():
    L = LineSet(((0, 2, 4), (0, 1, 2), (0, -1, -3)))
    assert len(L) == 2 and (0, 3, 9) in L
    assert LineSet.from_json(L.to_json()) == L


@pytest.mark.parametrize("P,want", [
    (grid_points((6, 6)), 6),
    (PointSet(2, ((0, 0), (1, 3), (4, 1), (2, 7))), 2),
    (PointSet(2, ((5, 5),)), 1),
])
def test_max_collinear(P, want):
    assert max_collinear(P) == want


def test_count_incidences():
    for n in (2, 4, 7):
        c = K.line_cover_grid((n, n))
        assert count_incidences(c.pointset, c.curves) == n * n
    assert count_incidences(grid_points((2, 2)), []) == 0


def test_count_incidences_rejects_bad_coverage():
    c = K.line_cover_grid((2, 2))
    bad = type(c.curves[0])(c.curves[0].family, c.curves[0].witness, (0, 0))
    with pytest.raises(ValueError):
        count_incidences(c.pointset, [bad])


def test_blow_up_rings():
    c = K.convex_ring_cover((3, 3))
    inst = blow_up(c.curves, 3)
    assert len(inst.points) == 25
    assert len(inst.curves) == 2 * 9
    assert inst.incidences >= 81
    assert inst.incidences == count_incidences(inst.points, inst.curves)


def test_blow_up_rejects_non_covers():
    c = K.line_cover_grid((3, 3))
    with pytest.raises(ValueError):
        blow_up(c.curves[:-1], 3)


@settings(max_examples=15)
@given(st.integers(2, 4), st.sampled_from([Line(), Circle()]))
def test_blow_up_of_any_cover(n, fam):
    c = greedy_cover(grid_points((n, n)), fam)
    inst = blow_up(c.curves, n)
    assert len(inst.points) == (2 * n - 1) ** 2
    assert inst.incidences >= n ** 4


def test_freedom_for_circles_and_lines():
    from gridcover.families import enumerate_candidates
    P = grid_points((5, 5))
    circles = enumerate_candidates(P, Circle())
    rep = check_freedom(circles, 2, 1)
    # distinct circles meet in at most two points, but many pass through a given pair
    assert rep.max_pair_intersection <= 2 and rep.max_multiplicity > 1 and not rep
    lines = enumerate_candidates(P, Line())
    # two points fix a line
    rep = check_freedom(lines, 2, 1)
    assert rep.ok and rep.mode == "exhaustive" and rep.max_pair_intersection <= 1


def test_identical_traces_fail():
    c = K.line_cover_grid((4, 4)).curves[0]
    assert not check_freedom([c, c], 2, 5)


def test_unit_circle_translates_multiplicity():
    from gridcover.families import enumerate_candidates
    from gridcover.tilings import SHAPES
    P = grid_points((4, 4))
    cands = enumerate_candidates(P, SHAPES["unit-circle"].family())
    rep = check_freedom(cands, 2, 2)
    # two lattice points are on at most two common unit circles
    assert rep.ok and rep.max_multiplicity == 2 and rep.max_pair_intersection == 2


def test_freedom_sampled_mode():
    c = exact_min_cover(grid_points((4, 4)), Line())
    rep = check_freedom(c.curves, 2, 1, universe_size=10 ** 6, samples=100)
    assert rep.mode == "sampled" and rep.ok


def test_bound_diagnostic():
    assert bound_diagnostic(8, 8) == pytest.approx(16 + 16)
    assert bound_diagnostic(5, 7, "circle-conjecture", 0.0) == bound_diagnostic(5, 7)
    assert bound_diagnostic(5, 7, "circle-conjecture", 1.0) > bound_diagnostic(5, 7)
    assert bound_diagnostic(8, 8, incidences=64) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        bound_diagnostic(3, 3, "szemeredi")
    with pytest.raises(ValueError):
        bound_diagnostic(0, 3)
