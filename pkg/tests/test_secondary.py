import pytest

from pptope.errors import PreconditionError
from pptope.expansion import NormHeuristic, make_f, realize_polytope
from pptope.geometry import EmbeddedGraph, PointSet, hull_edges
from pptope.pptenum import PPT, enumerate_ppts
from pptope.secondary import (
    affine_map_check,
    almost_hull_delta,
    ccw_reindex,
    gkz_affine_dimension,
    gkz_from_motion,
    gkz_vector,
)

from conftest import HEXAGON, PENTAGON, TRI_PLUS_ONE, TRIANGLE, UNIT_SQUARE, convex_ngon


def square_ppt(diag):
    ps = PointSet(UNIT_SQUARE)
    return ps, PPT.of(EmbeddedGraph(ps, list(hull_edges(ps)) + [diag]))


def test_unit_square_gkz():
    ps, t = square_ppt((0, 2))
    assert gkz_vector(ps, t) == (2, 1, 2, 1)
    ps, t = square_ppt((1, 3))
    assert gkz_vector(ps, t) == (1, 2, 1, 2)


def test_triangle_gkz():
    ps = PointSet(TRIANGLE)
    t = PPT.of(EmbeddedGraph(ps, ps.pairs()))
    area = ps.det(0, 1, 2)
    assert gkz_vector(ps, t) == (area, area, area)


def test_requires_ccw_convex_position():
    with pytest.raises(PreconditionError):
        gkz_vector(PointSet([(0, 0), (0, 1), (1, 1), (1, 0)]), None)
    with pytest.raises(PreconditionError):
        ccw_reindex(PointSet(TRI_PLUS_ONE))


def test_square_vertices_map_to_gkz():
    ps = PointSet(UNIT_SQUARE)
    P = realize_polytope(ps)
    images = {gkz_from_motion(ps, P.f, vx.v) for vx in P.vertices.values()}
    assert images == {(2, 1, 2, 1), (1, 2, 1, 2)}


@pytest.mark.parametrize("pts", [UNIT_SQUARE, PENTAGON])
def test_almost_hull_identity(pts):
    ps = PointSet(pts)
    P = realize_polytope(ps)
    for vx in P.vertices.values():
        assert all(almost_hull_delta(ps, P.f, vx))


def test_hexagon_gkz_vectors():
    ps, _ = ccw_reindex(PointSet(HEXAGON))
    fg = enumerate_ppts(ps)
    vecs = {k: gkz_vector(ps, t) for k, t in fg.ppts.items()}
    assert len(set(vecs.values())) == 14
    for a, b, _, _ in fg.edges():
        assert sum(1 for x, y in zip(vecs[a], vecs[b]) if x != y) == 4


def test_pentagon_gkz_dimension():
    ps = PointSet(PENTAGON)
    vecs = [gkz_vector(ps, t) for t in enumerate_ppts(ps).ppts.values()]
    assert gkz_affine_dimension(vecs) == 2


@pytest.mark.parametrize("n", [4, 5, 6])
def test_affine_map_both_schemes(n):
    ps, _ = ccw_reindex(PointSet(convex_ngon(n)))
    assert affine_map_check(ps)
    assert affine_map_check(ps, make_f(ps, NormHeuristic()))
