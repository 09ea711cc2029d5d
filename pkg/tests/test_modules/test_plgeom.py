"""Tests for rational polyhedral geometry."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st
from sympy import totient

from modules.errors import CarrierMismatchError, DimensionError, OutsideCarrierError
from modules.exactnum import den
from modules.plgeom import (
    AffineFunctional,
    AffineMap,
    RationalSimplex,
    SimplicialComplex,
    common_refinement,
    image_of_simplex,
    overlay,
    rational_points_with_denominator,
    subdivide_by_hyperplane,
    triangulate_cube,
)


def interval(a, b):
    return RationalSimplex(((F(a),), (F(b),)))


def split_interval(*cuts):
    points = [F(0), *map(F, cuts), F(1)]
    return SimplicialComplex(1, tuple(interval(a, b) for a, b in zip(points, points[1:])))


ANTI_DIAGONAL = SimplicialComplex(2, (
    RationalSimplex(((0, 0), (1, 0), (0, 1))),
    RationalSimplex(((1, 0), (0, 1), (1, 1))),
))


def vertex_sets(complex_):
    return {frozenset(s.vertices) for s in complex_.simplices}


def test_triangulate_cube():
    """Test the Kuhn triangulations of the supported cubes."""
    assert len(triangulate_cube(1)) == 1
    assert vertex_sets(triangulate_cube(2)) == {
        frozenset({(0, 0), (1, 0), (1, 1)}),
        frozenset({(0, 0), (0, 1), (1, 1)}),
    }
    cube = triangulate_cube(3)
    assert len(cube) == 6
    assert cube.volume() == 1
    with pytest.raises(DimensionError):
        triangulate_cube(4)


def test_simplex_validation():
    """Test that simplices reject dependent or out-of-cube vertices."""
    with pytest.raises(DimensionError):
        RationalSimplex(((0, 0), (F(1, 2), F(1, 2)), (1, 1)))
    with pytest.raises(DimensionError):
        RationalSimplex(((0,), (2,)))
    triangle = RationalSimplex(((0, 0), (1, 0), (1, 1)))
    assert triangle.volume() == F(1, 2)
    assert triangle.contains((F(1, 2), F(1, 4)))
    assert not triangle.contains((F(1, 4), F(1, 2)))


def test_common_refinement_identical():
    """Test refining a complex against itself."""
    square = triangulate_cube(2)
    assert common_refinement(square, square) == square


def test_common_refinement_merges_breakpoints():
    """Test the 1-D merge of breakpoints."""
    refined = common_refinement(split_interval(F(1, 2)), split_interval(F(1, 3)))
    assert [v[0] for v in refined.vertices()] == [F(0), F(1, 3), F(1, 2), F(1)]
    assert refined.volume() == 1


def test_common_refinement_of_crossing_diagonals():
    """Test that the two diagonal triangulations refine to a four-triangle fan."""
    refined = common_refinement(triangulate_cube(2), ANTI_DIAGONAL)
    assert len(refined) == 4
    assert (F(1, 2), F(1, 2)) in refined.vertices()
    assert all(s.volume() == F(1, 4) for s in refined.simplices)


def test_common_refinement_rejects_different_carriers():
    """Test that carriers must agree."""
    half = SimplicialComplex(1, (interval(0, F(1, 2)),))
    with pytest.raises(CarrierMismatchError):
        common_refinement(half, triangulate_cube(1))


@pytest.mark.slow
@given(st.tuples(
    st.fractions(F(-1, 2), F(3, 2), max_denominator=30),
    st.fractions(F(-1, 2), F(3, 2), max_denominator=30),
))
@settings(max_examples=1000, deadline=None)
def test_refinement_keeps_membership(point):
    """Test that refinement does not change which points lie in the carrier."""
    square = triangulate_cube(2)
    refined = common_refinement(square, ANTI_DIAGONAL)
    assert refined.contains(point) == square.contains(point)


def test_subdivide_by_hyperplane():
    """Test cutting along a hyperplane."""
    cut = subdivide_by_hyperplane(triangulate_cube(1), AffineFunctional((2,), -1))
    assert [v[0] for v in cut.vertices()] == [F(0), F(1, 2), F(1)]

    unchanged = subdivide_by_hyperplane(triangulate_cube(1), AffineFunctional((1,), 1))
    assert unchanged == triangulate_cube(1)

    h = AffineFunctional((1, -1), 0)
    square = subdivide_by_hyperplane(ANTI_DIAGONAL, h)
    assert len(square) == 4
    for cell in square.simplices:
        values = [h(v) for v in cell.vertices]
        assert all(v >= 0 for v in values) or all(v <= 0 for v in values)


def test_image_of_simplex():
    """Test hulls of vertex images, including a collapse."""
    triangle = RationalSimplex(((0, 0), (1, 0), (0, 1)))
    same = image_of_simplex(triangle, AffineMap.identity(2))
    assert same.as_simplex() == triangle
    assert not same.degenerate

    sheared = image_of_simplex(triangle, AffineMap(((1, 0), (1, 1)), (0, 0)))
    assert set(sheared.points) == {(0, 0), (1, 1), (0, 1)}

    collapsed = image_of_simplex(triangle, AffineMap(((1, 0), (0, 0)), (0, 0)))
    assert collapsed.degenerate
    assert collapsed.dimension == 1
    assert set(collapsed.points) == {(0, 0), (1, 0)}


def test_rational_points_with_denominator():
    """Test grid censuses on the interval and the square."""
    line = triangulate_cube(1)
    assert rational_points_with_denominator(line, 1) == [(F(0),), (F(1),)]
    assert rational_points_with_denominator(line, 4) == [(F(1, 4),), (F(3, 4),)]
    assert set(rational_points_with_denominator(triangulate_cube(2), 2)) == {
        (F(1, 2), 0), (0, F(1, 2)), (F(1, 2), 1), (1, F(1, 2)), (F(1, 2), F(1, 2)),
    }


def test_interval_census_matches_farey_count():
    """Test the cumulative census on [0,1] against 1 + sum of Euler phi."""
    line = triangulate_cube(1)
    for bound in range(1, 13):
        total = sum(len(rational_points_with_denominator(line, b)) for b in range(1, bound + 1))
        assert total == 1 + sum(int(totient(q)) for q in range(1, bound + 1))


@given(st.tuples(st.fractions(0, 1, max_denominator=40), st.fractions(0, 1, max_denominator=40)))
@settings(max_examples=100, deadline=None)
def test_unimodular_map_preserves_denominators(point):
    """Test den(Lp) = den(p) for a unimodular linear map."""
    amap = AffineMap(((2, 1), (1, 1)), (0, 0))
    assert amap.is_unimodular()
    assert den(amap.apply(point)) == den(point)


def test_complex_json_and_locate():
    """Test the JSON schema and point location."""
    half = SimplicialComplex(1, (interval(0, F(1, 2)),))
    assert half.to_json() == {"n": 1, "simplices": [[["0/1"], ["1/2"]]]}
    assert SimplicialComplex.from_json(half.to_json()) == half
    assert half.locate((F(1, 4),)) == 0
    with pytest.raises(OutsideCarrierError):
        half.locate((F(3, 4),))


def test_affine_functional_integral_multiple():
    """Test clearing denominators of a functional."""
    f = AffineFunctional((F(1, 2),), F(-1, 3))
    assert f.integral() == AffineFunctional((3,), -2)
    assert f.integral().is_integral
    assert not f.is_integral


def test_overlay_cells_have_disjoint_interiors():
    """Test that overlapping triangles become cells that tile their union."""
    lower = RationalSimplex(((0, 0), (1, 0), (0, 1)))
    right = RationalSimplex(((0, 0), (1, 0), (1, 1)))
    tiled = overlay(2, [lower, right])
    assert tiled.volume() == F(3, 4)
    grid = [(F(i, 8), F(j, 8)) for i in range(9) for j in range(9)]
    for point in grid:
        assert tiled.contains(point) == (lower.contains(point) or right.contains(point))
        interiors = [s for s in tiled.simplices if all(f(point) > 0 for f in s.functionals)]
        assert len(interiors) <= 1
