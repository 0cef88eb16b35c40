import pytest

from _oracles import all_collinear, all_concyclic, convex_position, shape_pred, subset_masks
from gridcover.families import (
    AlgebraicMaxDeg, Circle, ClosedConvex, CoverabilityUnknown, Curve, FixedRadiusCircle, FixedShape, Line,
    Monotone, Orthoconvex, SkewLine, StrictlyConvex, canonical_line, enumerate_candidates, is_coverable,
    make_curve, maximal_masks,
)
from gridcover.geometry import PointSet, grid_points
from gridcover.tilings import SHAPES

L_CURVE = [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2), (0, 1)]


def test_coverability_examples():
    assert is_coverable([(1, 1), (2, 2), (3, 3)], Line())
    assert not is_coverable([(1, 1), (1, 2), (2, 1)], Monotone())
    grid = grid_points((3, 3)).points
    assert not is_coverable(grid, ClosedConvex())
    assert is_coverable([p for p in grid if p != (2, 2)], ClosedConvex())
    assert is_coverable([(0, 1), (1, 0), (2, 1), (1, 2)], FixedRadiusCircle(1))


def test_fixed_radius_witness_center():
    fam = FixedRadiusCircle(1)
    w = fam.witness([(0, 1), (1, 0), (2, 1), (1, 2)])
    assert tuple(w["center"]) == (1, 1)


def test_half_integer_centres():
    fam = FixedRadiusCircle("1/2", lattice="half-integer")
    # the unit square's corners sit on a circle about (1/2, 1/2)
    assert fam.coverable([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert not FixedRadiusCircle("1/2").coverable([(0, 0), (1, 0), (0, 1), (1, 1)])


def test_skew_lines_reject_axis_directions():
    assert Line().coverable([(1, 1), (1, 5)])
    assert not SkewLine().coverable([(1, 1), (1, 5)])
    assert SkewLine().coverable([(1, 1), (2, 3)])


def test_monotone_chains():
    assert Monotone().coverable([(1, 1), (1, 2), (3, 2), (3, 7)])
    assert Monotone().coverable([(1, 1, 1), (2, 2, 1)])
    assert not Monotone().coverable([(1, 3), (2, 2)])


def test_strictly_convex_excludes_edge_points():
    assert StrictlyConvex().coverable([(1, 1), (3, 1), (1, 3), (3, 3)])
    assert not StrictlyConvex().coverable([(1, 1), (2, 1), (3, 1), (1, 3)])
    assert ClosedConvex().coverable([(1, 1), (2, 1), (3, 1), (1, 3)])


def test_planar_families_reject_other_dimensions():
    with pytest.raises(ValueError):
        is_coverable([(1, 1, 1), (2, 2, 2)], Circle())
    assert is_coverable([(1, 1, 1), (2, 2, 2)], Line())


def test_orthoconvex_coverability():
    assert Orthoconvex(1).coverable(L_CURVE)
    assert Orthoconvex(0).coverable([(0, 0), (2, 0), (2, 2)])
    # a plus sign works with the centre as an inner corner
    assert Orthoconvex().coverable([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])
    # the full 3 x 3 grid does not
    assert not Orthoconvex().coverable(grid_points((3, 3)).points)


def test_orthoconvex_beyond_cap_is_unknown():
    with pytest.raises(CoverabilityUnknown):
        Orthoconvex().coverable([(0, 0), (60, 3), (3, 60)])


def test_algebraic_degree():
    pts = [(1, 1), (2, 2), (3, 3), (1, 5), (2, 5)]
    assert AlgebraicMaxDeg(2).coverable(pts)
    assert not AlgebraicMaxDeg(1).coverable(pts)
    w = AlgebraicMaxDeg(2).witness(pts)
    assert len(w["lines"]) <= 2


def test_canonical_line_normalises_sign_and_gcd():
    assert canonical_line(-2, 4, 6) == canonical_line(1, -2, -3)
    assert canonical_line(0, -3, -6) == (0, 1, 2)


# ---------------------------------------------------------------------------
# candidates


def test_candidates_3x3_lines():
    cands = enumerate_candidates(grid_points((3, 3)), Line())
    sizes = sorted(len(c.covered) for c in cands)
    assert len(cands) == 20
    assert sizes.count(3) == 8 and sizes.count(2) == 12


def test_candidates_2x2_circle():
    cands = enumerate_candidates(grid_points((2, 2)), Circle())
    assert len(cands) == 1 and len(cands[0].covered) == 4


@pytest.mark.parametrize("fam", [Line(), Circle(), ClosedConvex(), Orthoconvex(1), FixedShape(SHAPES["unit-circle"].offsets)])
def test_singleton_candidate(fam):
    P = PointSet(2, ((3, 4),))
    assert len(enumerate_candidates(P, fam)) == 1


def _mask(idx):
    return sum(1 << i for i in idx)


ORACLE_PREDICATES = [
    (Line(), all_collinear),
    (Circle(), all_concyclic),
    (ClosedConvex(), convex_position),
    (FixedShape(SHAPES["smallest-l"].offsets), shape_pred(SHAPES["smallest-l"].offsets)),
    (FixedShape(SHAPES["unit-circle"].offsets), shape_pred(SHAPES["unit-circle"].offsets)),
]


@pytest.mark.parametrize("dims", [(3, 3), (2, 5), (3, 4)])
@pytest.mark.parametrize("fam,pred", ORACLE_PREDICATES, ids=lambda x: getattr(x, "name", ""))
def test_candidates_match_brute_force_maximal_sets(dims, fam, pred):
    P = grid_points(dims)
    want = set(maximal_masks(subset_masks(list(P.points), pred)))
    got = {_mask(c.covered) for c in enumerate_candidates(P, fam)}
    assert got == want


@pytest.mark.parametrize("fam", [
    Line(), SkewLine(), Circle(), FixedRadiusCircle(5), ClosedConvex(), StrictlyConvex(),
    Orthoconvex(), Orthoconvex(2), AlgebraicMaxDeg(2), FixedShape(SHAPES["square2"].offsets),
], ids=lambda f: f.name)
def test_coverage_lists_agree_with_point_predicate(fam):
    P = grid_points((4, 4))
    for c in enumerate_candidates(P, fam):
        brute = [i for i, p in enumerate(P.points) if fam.on_curve(c.witness, p)]
        assert list(c.covered) == brute
        assert fam.coverable([P[i] for i in c.covered])


@pytest.mark.parametrize("fam", [
    Line(), Circle(), FixedRadiusCircle(2), ClosedConvex(), Orthoconvex(1), AlgebraicMaxDeg(2),
    FixedShape(SHAPES["smallest-l"].offsets, "smallest-l"),
], ids=lambda f: f.name)
def test_curve_json_round_trip(fam):
    P = grid_points((3, 3))
    for c in enumerate_candidates(P, fam)[:5]:
        back = Curve.from_json(c.to_json())
        assert back.to_json() == c.to_json()
        assert make_curve(back.family, back.witness, P).covered == c.covered


def test_monotone_has_no_candidate_list():
    with pytest.raises(ValueError):
        enumerate_candidates(grid_points((2, 2)), Monotone())
