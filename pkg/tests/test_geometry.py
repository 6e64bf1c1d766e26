from itertools import combinations

import pytest
from hypothesis import given, settings

from pptope.errors import GeneralPositionError, PreconditionError
from pptope.geometry import (
    EmbeddedGraph,
    Point,
    PointSet,
    complete_to_ppt,
    convex_hull,
    det3,
    faces,
    hull_edges,
    in_convex_position,
    is_noncrossing,
    is_pointed,
    is_pointed_at,
    is_pointed_pseudo_triangulation,
    is_pseudo_triangulation,
    orientation,
    segments_cross,
)

from conftest import PENTAGON, QUAD, TRI_PLUS_ONE, TRIANGLE, UNIT_SQUARE, point_sets


def P(x, y):
    return Point.of(x, y)


def test_orientation_examples():
    assert det3(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orientation(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orientation(P(0, 0), P(1, 1), P(2, 2)) == 0
    assert det3(P(0, 0), P(0, 2), P(3, 1)) == -6
    assert orientation(P(0, 0), P(0, 2), P(3, 1)) == -1


def test_collinear_triple_rejected_with_indices():
    with pytest.raises(GeneralPositionError) as exc:
        PointSet([(5, 5), (0, 0), (1, 1), (2, 2)])
    assert set(exc.value.triple) <= {0, 1, 2, 3} and len(exc.value.triple) == 3


def test_duplicate_points_rejected():
    with pytest.raises(GeneralPositionError):
        PointSet([(0, 0), (1, 0), (0, 0)])


def test_cached_orientation_matches_determinant():
    ps = PointSet(PENTAGON + [(2, 2)])
    for i, j, k in combinations(range(len(ps)), 3):
        for a, b, c in ((i, j, k), (j, i, k), (k, j, i)):
            assert ps.orient(a, b, c) == orientation(ps[a], ps[b], ps[c])


def test_segment_crossing():
    ps = PointSet([(0, 0), (2, 2), (0, 2), (2, 0)])
    assert segments_cross((0, 1), (2, 3), ps)
    sq = PointSet(UNIT_SQUARE)
    assert not segments_cross((0, 1), (0, 3), sq)
    assert segments_cross((0, 2), (1, 3), sq)


def test_pointedness_examples():
    ps = PointSet([(0, 0), (1, 0), (0, 1)])
    assert is_pointed_at(EmbeddedGraph(ps, [(0, 1), (0, 2)]), 0)
    ps = PointSet([(0, 0), (1, 0), (-1, 1), (-1, -1)])
    assert not is_pointed_at(EmbeddedGraph(ps, [(0, 1), (0, 2), (0, 3)]), 0)
    sq = PointSet([(0, 0), (10, 0), (10, 10), (0, 10), (4, 3)])
    g = EmbeddedGraph(sq, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)])
    assert not is_pointed(g)
    assert not is_pointed_at(g, 4)


@given(point_sets(4, 7))
def test_hull_vertices_always_pointed(ps):
    g = EmbeddedGraph(ps, ps.pairs())
    for v in convex_hull(ps):
        assert is_pointed_at(g, v)


def test_triangle_basics():
    ps = PointSet(TRIANGLE)
    g = EmbeddedGraph(ps, ps.pairs())
    assert is_pointed(g) and is_noncrossing(g)
    fd = faces(g)
    assert len(fd.bounded) == 1 and fd.bounded[0].convex_corners == 3
    assert len(fd.outer) == 1
    assert is_pointed_pseudo_triangulation(g)


def test_square_with_both_diagonals_crosses():
    ps = PointSet(UNIT_SQUARE)
    assert not is_noncrossing(EmbeddedGraph(ps, ps.pairs()))


def test_square_hull_face_has_four_corners():
    ps = PointSet(UNIT_SQUARE)
    g = EmbeddedGraph(ps, hull_edges(ps))
    (face,) = faces(g).bounded
    assert face.convex_corners == 4
    assert is_pointed(g) and is_noncrossing(g)
    assert not is_pseudo_triangulation(g)
    assert not is_pointed_pseudo_triangulation(g)


def test_pseudo_triangle_face():
    ps = PointSet([(0, 0), (6, 0), (3, 5), (3, 1)])
    g = EmbeddedGraph(ps, [(0, 1), (1, 2), (2, 3), (0, 3)])
    (face,) = faces(g).bounded
    assert face.convex_corners == 3 and face.is_simple


def test_quad_with_diagonal_is_ppt():
    ps = PointSet(UNIT_SQUARE)
    assert is_pointed_pseudo_triangulation(EmbeddedGraph(ps, list(hull_edges(ps)) + [(0, 2)]))


def test_hull_examples():
    assert sorted(convex_hull(PointSet(UNIT_SQUARE))) == [0, 1, 2, 3]
    assert sorted(convex_hull(PointSet(TRI_PLUS_ONE))) == [0, 1, 2]
    assert in_convex_position(PointSet(QUAD))
    assert not in_convex_position(PointSet(TRI_PLUS_ONE))


@given(point_sets(3, 7))
def test_hull_matches_all_left_oracle(ps):
    n = len(ps)
    oracle = set()
    for i in range(n):
        for j in range(n):
            if i != j and all(ps.orient(i, j, k) > 0 for k in range(n) if k not in (i, j)):
                oracle.add(tuple(sorted((i, j))))
    assert hull_edges(ps) == frozenset(oracle)
    h = convex_hull(ps)
    assert all(ps.orient(h[k], h[(k + 1) % len(h)], h[(k + 2) % len(h)]) > 0 for k in range(len(h)))


def test_completion_examples():
    tri = PointSet(TRIANGLE)
    assert complete_to_ppt(EmbeddedGraph(tri, [])).edges == frozenset(tri.pairs())
    pent = PointSet(PENTAGON)
    g = complete_to_ppt(EmbeddedGraph(pent, []))
    assert len(g.edges) == 7 and is_pointed_pseudo_triangulation(g)
    sq = PointSet(UNIT_SQUARE)
    t = EmbeddedGraph(sq, list(hull_edges(sq)) + [(0, 2)])
    assert complete_to_ppt(t) == t


def test_completion_rejects_non_pointed():
    ps = PointSet([(0, 0), (10, 0), (10, 10), (0, 10), (4, 3)])
    with pytest.raises(PreconditionError):
        complete_to_ppt(EmbeddedGraph(ps, [(0, 4), (1, 4), (2, 4), (3, 4)]))


@settings(max_examples=60)
@given(point_sets(3, 8))
def test_completion_gives_ppt_from_empty(ps):
    g = complete_to_ppt(EmbeddedGraph(ps, []))
    assert len(g.edges) == 2 * len(ps) - 3
    assert is_pseudo_triangulation(g) and is_pointed(g)


def test_graph_rejects_bad_edges():
    ps = PointSet(TRIANGLE)
    with pytest.raises(PreconditionError):
        EmbeddedGraph(ps, [(0, 3)])
    with pytest.raises(PreconditionError):
        EmbeddedGraph(ps, [(0, 1), (1, 0)])
    with pytest.raises(PreconditionError):
        EmbeddedGraph(ps, [(1, 1)])
