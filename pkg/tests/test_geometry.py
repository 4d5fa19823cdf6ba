import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from goldbach_poly import geometry as G
from goldbach_poly.errors import ApexInBaseHyperplane, DegenerateSegment, DimensionMismatch

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


def brute_minkowski_summand_exists(vertices):
    """Reference: for each lattice polygon A in the bounding box, form the
    lattice Minkowski difference B = {b : b + A inside P} and test A + B = P.

    Independent of the edge-splitting oracle.
    """
    P = G.hull_vertices(vertices)
    xs = [v[0] for v in P.vertices]
    ys = [v[1] for v in P.vertices]
    box = [(a, b) for a in range(max(xs) - min(xs) + 1) for b in range(max(ys) - min(ys) + 1)]
    shifts = [(a, b) for a in range(min(xs) - 8, max(xs) + 1) for b in range(min(ys) - 8, max(ys) + 1)]
    seen = set()
    for k in range(2, 5):
        for pts in itertools.combinations(box, k):
            A = G.hull_vertices(pts).vertices
            if len(A) < 2 or A in seen:
                continue
            seen.add(A)
            B = [s for s in shifts
                 if all(G.in_convex_hull((a[0] + s[0], a[1] + s[1]), P.vertices) for a in A)]
            if len(B) >= 2 and G.minkowski_sum(A, G.hull_vertices(B).vertices) == P:
                return True
    return False


def test_gcd_helpers():
    assert G.gcd_of_vector([4, 6, 0]) == 2
    assert G.gcd_of_vector([0, 0]) == 0
    assert G.gcd_of_family([]) == 0
    assert G.gcd_of_family([(2, 4), (6, 3)]) == 1


def test_hull_of_square_with_interior_point():
    hull = G.hull_vertices(SQUARE + [(0, 0), (1, 0)])
    assert hull.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert G.hull_vertices([(0, 0), (2, 2), (1, 1)]).vertices == ((0, 0), (2, 2))


def test_hull_in_three_dimensions_drops_interior_points():
    pts = [(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2), (0, 1, 0), (1, 0, 1)]
    assert G.hull_vertices(pts).vertices == ((0, 0, 0), (0, 0, 2), (0, 2, 0), (2, 0, 0))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=9), st.randoms())
def test_hull_is_idempotent_and_order_free(pts, rnd):
    hull = G.hull_vertices(pts)
    assert G.hull_vertices(list(hull.vertices)) == hull
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert G.hull_vertices(shuffled) == hull
    for p in pts:
        assert G.in_convex_hull(p, hull.vertices)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        G.hull_vertices([(0, 0), (1, 0, 0)])


def test_matrix_format():
    assert G.format_matrix([(1, 4), (1, 2)]) == "| 1 4 |\n| 1 2 |"
    assert G.parse_points("0,0; 1,0") == [(0, 0), (1, 0)]


def test_segment_criterion():
    assert G.segment_indecomposable((0, 0), (3, 4))
    assert not G.segment_indecomposable((0, 0), (2, 4))
    assert G.segment_indecomposable((1, 1, 1), (2, 3, 4))
    with pytest.raises(DegenerateSegment):
        G.segment_indecomposable((1, 1), (1, 1))


def test_pyramid_criterion():
    # triangle with apex (4,4,5) over the base segment 0 -> (2,0,0)
    assert G.pyramid_indecomposable([(0, 0, 0), (2, 0, 0)], (4, 4, 5))
    assert not G.pyramid_indecomposable([(0, 0), (2, 0)], (0, 2))
    with pytest.raises(ApexInBaseHyperplane):
        G.pyramid_indecomposable([(0, 0), (2, 0)], (1, 0))


def test_square_is_decomposable_with_valid_witness():
    v = G.polygon_summands_2d(G.hull_vertices(SQUARE))
    assert v.decomposable
    A, B = v.witness
    assert G.minkowski_sum(A, B) == G.hull_vertices(SQUARE)
    assert len(A) >= 2 and len(B) >= 2


def test_unit_triangle_is_indecomposable():
    assert G.polygon_summands_2d(G.hull_vertices([(0, 0), (1, 0), (0, 1)])).indecomposable


def test_doubled_simplex_is_decomposable():
    v = G.decide_indecomposable([(0, 0), (2, 0), (0, 2)])
    assert v.decomposable


def test_oracle_agrees_with_independent_box_search():
    # small polygons: hexagon, trapezoid, quadrilaterals, triangles
    shapes = [
        [(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)],
        [(0, 0), (3, 0), (2, 1), (1, 1)],
        [(0, 0), (2, 1), (1, 2)],
        [(0, 0), (2, 0), (3, 1), (1, 1)],
        [(0, 0), (2, 0), (0, 1)],
        [(0, 0), (1, 0), (1, 2), (0, 1)],
    ]
    for shape in shapes:
        v = G.polygon_summands_2d(G.hull_vertices(shape))
        assert not v.unknown
        assert v.decomposable == brute_minkowski_summand_exists(shape), shape


def test_oracle_respects_budget():
    big = G.hull_vertices([(0, 0), (60, 0), (60, 60), (0, 60), (30, 70)])
    assert G.polygon_summands_2d(big, budget=3).unknown


def test_decide_single_point_and_segments():
    assert G.decide_indecomposable([(1, 2, 3)]).indecomposable
    seg = G.decide_indecomposable([(0, 0, 0), (2, 2, 0)])
    assert seg.decomposable
    A, B = seg.witness
    assert G.minkowski_sum(A, B) == G.hull_vertices([(0, 0, 0), (2, 2, 0)])


def test_goldbach_condition_on_square():
    bad = G.goldbach_condition_check(SQUARE, [(1, 4), (2, 0)])
    assert not bad.holds
    assert bad.conditions == {"i": "holds", "ii": "fails", "iii": "holds"}
    good = G.goldbach_condition_check(SQUARE, [(3, 0), (0, 2)])
    assert good.holds
    assert G.goldbach_condition_check(SQUARE, []).status == G.FAILS


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=3, max_size=6))
def test_decomposable_witnesses_always_reconstruct(pts):
    hull = G.hull_vertices(pts)
    if len(hull.vertices) < 2:
        return
    v = G.decide_indecomposable(list(hull.vertices))
    if v.decomposable and v.witness:
        A, B = v.witness
        assert G.minkowski_sum(A, B) == hull
        assert min(len(A), len(B)) >= 2


@pytest.mark.parametrize("a,b", [(4, 6), (5, 0), (7, 3)])
def test_segment_oracle_and_gcd(a, b):
    v = G.polygon_summands_2d(G.hull_vertices([(0, 0), (a, b)]))
    assert v.indecomposable == (math.gcd(a, b) == 1)


def test_reference_pyramids():
    assert G.pyramid_indecomposable([(1, 1), (1, 4)], (0, 0))
    assert not G.pyramid_indecomposable([(2, 0), (0, 2)], (0, 0))


def test_singleton_witness_fails_on_support_condition():
    v = G.goldbach_condition_check([(0, 0), (2, 2)], [(1, 4)])
    assert v.status == G.FAILS
    assert v.conditions["i"] == "holds" and v.conditions["ii"] == "fails"
