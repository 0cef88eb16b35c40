import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from gridcover import constructions as K
from gridcover.families import StrictlyConvex, leq
from gridcover.geometry import PointSet, grid_points
from gridcover.solver import verify_cover


def ok(cover):
    good, diag = verify_cover(cover)
    assert good, diag
    return len(cover)


@pytest.mark.parametrize("dims,want", [((3, 4), 3), ((2, 2, 2), 4), ((1, 7), 1), ((7,), 1), ((2, 2, 2, 2), 8)])
def test_line_covers(dims, want):
    assert K.line_cover_count(dims) == want
    assert ok(K.line_cover_grid(dims)) == want


@pytest.mark.parametrize("n,want", [(2, 2), (3, 4), (5, 8), (6, 10)])
def test_skew_lines(n, want):
    c = K.skew_line_cover(n)
    assert ok(c) == want
    assert all(all(v != 0 for v in cv.witness["direction"]) for cv in c.curves)


def test_skew_lines_need_two_rows():
    with pytest.raises(ValueError):
        K.skew_line_cover(1)


@pytest.mark.parametrize("dims,want", [((3, 4), 4), ((2, 2, 2), 2), ((9,), 9), ((5, 5), 5)])
def test_max_collinear(dims, want):
    P = grid_points(dims)
    assert K.max_points_on_line(dims) == want
    assert K.max_collinear_exhaustive(P) == want


@pytest.mark.parametrize("dims,want", [((2, 2), 2), ((2, 2, 2, 2), 6), ((2, 3), 2), ((2, 2, 2, 2, 2), 10), ((6,), 1)])
def test_chain_decomposition(dims, want):
    P = grid_points(dims)
    assert K.grid_width_formula(dims)[0] == want
    for method in ("matching",) + (("greedy2d",) if len(dims) <= 2 else ()):
        dec = K.monotone_cover(P, method=method)
        assert dec.is_valid() and len(dec) == want
        assert ok(dec.to_cover()) == want
    valid, count = K.check_grid_chains(dims)
    assert valid and count == want == K.grid_chain_count(dims)


def test_antichain_needs_singletons():
    P = PointSet(2, ((1, 3), (2, 2), (3, 1)))
    dec = K.monotone_cover(P)
    assert len(dec) == 3 and all(len(c) == 1 for c in dec.chains)


def test_rank_profile_shape():
    prof = K.rank_profile((3, 4, 2))
    assert sum(prof.counts) == 24
    assert prof.is_symmetric() and prof.is_unimodal()
    assert prof[prof.offset] == 1 and prof[prof.offset - 1] == 0


def _brute_width(pts):
    # largest antichain by checking subsets from the top size down
    n = len(pts)
    for r in range(n, 0, -1):
        for sub in itertools.combinations(pts, r):
            if all(not leq(a, b) and not leq(b, a) for a, b in itertools.combinations(sub, 2)):
                return r
    return 0


@settings(max_examples=40)
@given(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)), min_size=1, max_size=9))
def test_min_chains_equal_max_antichain(pts):
    P = PointSet(3, tuple(pts))
    dec = K.monotone_cover(P, method="matching")
    assert dec.is_valid()
    assert len(dec) == _brute_width(list(P.points))


@settings(max_examples=40)
@given(st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=12))
def test_planar_routes_agree(pts):
    P = PointSet(2, tuple(pts))
    a = K.monotone_cover(P, method="greedy2d")
    b = K.monotone_cover(P, method="matching")
    assert a.is_valid() and b.is_valid() and len(a) == len(b)


@pytest.mark.parametrize("dims,want", [((5, 5), 3), ((4, 7), 2), ((3, 3, 3), 2), ((1, 6), 1), ((2, 9, 4, 3), 1)])
def test_convex_rings(dims, want):
    assert K.convex_ring_count(dims) == want
    assert ok(K.convex_ring_cover(dims)) == want


@pytest.mark.parametrize("n,want", [(1, 1), (2, 3), (3, 6)])
def test_concentric_circles(n, want):
    assert K.concentric_circle_count(n) == want
    assert ok(K.concentric_circle_cover(n)) == want


def test_concentric_radii_for_n3():
    c = K.concentric_circle_cover(3)
    radii = sorted(cv.witness["r2"] for cv in c.curves if tuple(cv.witness["center"]) == (1, 1))
    assert radii == [1, 2, 4, 5, 8]


def test_concentric_count_is_normalised_bounded():
    vals = [K.concentric_circle_count(2 ** e) * math.sqrt(math.log(2 ** e)) / 4 ** e for e in range(4, 11)]
    assert max(vals) / min(vals) < 3


@pytest.mark.parametrize("n,want", [(1, 1), (2, 1), (3, 3), (4, 3)])
def test_peeling(n, want):
    c = K.strictly_convex_peel(n)
    assert ok(c) == want
    fam = StrictlyConvex()
    for layer in K.peel_layers(grid_points((n, n))):
        assert fam.coverable(layer)


def test_peeling_3x3_layers():
    layers = K.peel_layers(grid_points((3, 3)))
    assert sorted(layers[0]) == [(1, 1), (1, 3), (3, 1), (3, 3)]
    assert sorted(layers[1]) == [(1, 2), (2, 1), (2, 3), (3, 2)]
    assert layers[2] == [(2, 2)]


@pytest.mark.parametrize("n,k,want", [(5, 2, 3), (6, 3, 2), (7, 3, 3), (5, 1, 5), (4, 9, 1)])
def test_bundles(n, k, want):
    c = K.algebraic_bundle_cover(n, k)
    assert ok(c) == want
    assert all(len(cv.witness["lines"]) <= k for cv in c.curves)


def test_vanishing():
    P = grid_points((2, 2))
    assert K.verify_vanishing([(0, 1, 1), (0, 1, 2)], P) == [True] * 4
    assert K.verify_vanishing([(0, 1, 1)], P) == [p[1] == 1 for p in P.points]
    for n, k in ((7, 3), (10, 4)):
        P = grid_points((n, n))
        got = [False] * len(P)
        for cv in K.algebraic_bundle_cover(n, k).curves:
            got = [a or b for a, b in zip(got, K.verify_vanishing(cv.witness["lines"], P))]
        assert all(got)
