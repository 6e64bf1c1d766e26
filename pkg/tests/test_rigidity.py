from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pptope.errors import PreconditionError
from pptope.exact import rank
from pptope.geometry import EmbeddedGraph, Point, PointSet, complete_to_ppt, hull_edges
from pptope.pptenum import enumerate_ppts
from pptope.rigidity import (
    Normalization,
    all_strains,
    dof,
    flex_space,
    four_point_stress,
    infinitesimally_rigid,
    is_laman,
    is_self_stress,
    motion,
    rigidity_matrix,
    strain,
    stress_from_affine_dependence,
    stress_space,
)

from conftest import PENTAGON, TRIANGLE, UNIT_SQUARE, point_sets, rational_point_sets, rationals


def test_rigidity_rank_examples():
    tri = PointSet([(0, 0), (1, 0), (0, 1)])
    assert rank(rigidity_matrix(EmbeddedGraph(tri, tri.pairs()))) == 3
    sq = PointSet(UNIT_SQUARE)
    assert rank(rigidity_matrix(EmbeddedGraph(sq, hull_edges(sq)))) == 4
    pent = PointSet(PENTAGON)
    for t in enumerate_ppts(pent).ppts.values():
        assert rank(rigidity_matrix(t.graph)) == 7


def test_trivial_motions_have_zero_strain():
    ps = PointSet(PENTAGON)
    shift = motion([(3, -2)] * len(ps))
    rot = tuple(Point(-p.y, p.x) for p in ps)
    assert all(s == 0 for s in all_strains(ps, shift).values())
    assert all(s == 0 for s in all_strains(ps, rot).values())


def test_dilation_strain_is_squared_length():
    sq = PointSet(UNIT_SQUARE)
    s = all_strains(sq, tuple(sq))
    assert s[(0, 2)] == 2
    assert all(v > 0 for v in s.values())


def test_flex_space_examples():
    tri = PointSet(TRIANGLE)
    assert flex_space(EmbeddedGraph(tri, tri.pairs())) == []
    sq = PointSet(UNIT_SQUARE)
    assert dof(EmbeddedGraph(sq, hull_edges(sq))) == 1


def test_stress_space_examples():
    tri = PointSet(TRIANGLE)
    assert stress_space(EmbeddedGraph(tri, tri.pairs())) == []
    sq = PointSet(UNIT_SQUARE)
    (w,) = stress_space(EmbeddedGraph(sq, sq.pairs()))
    ratio = w[(0, 1)]
    expect = {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): 1, (0, 2): -1, (1, 3): -1}
    assert all(w[e] == ratio * v for e, v in expect.items())


def test_affine_dependence_stress():
    sq = PointSet(UNIT_SQUARE)
    w = stress_from_affine_dependence([1, -1, 1, -1], sq)
    assert w[(0, 1)] == w[(1, 2)] == w[(2, 3)] == w[(0, 3)] == -1
    assert w[(0, 2)] == w[(1, 3)] == 1
    assert all(v == 0 for v in stress_from_affine_dependence([0, 0, 0, 0], sq).values())
    with pytest.raises(PreconditionError):
        stress_from_affine_dependence([1, 1, -2], PointSet(TRIANGLE))


def test_four_point_stress_unit_square():
    w = four_point_stress(PointSet(UNIT_SQUARE))
    assert w == {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): 1, (0, 2): -1, (1, 3): -1}


def test_four_point_stress_interior_point():
    w = four_point_stress(PointSet([(0, 0), (4, 0), (0, 4), (1, 1)]))
    assert {e for e, v in w.items() if v < 0} == {(0, 3), (1, 3), (2, 3)}


def test_four_point_stress_scaling():
    pts = [(0, 0), (4, 0), (5, 3), (1, 4)]
    w1 = four_point_stress(PointSet(pts))
    w2 = four_point_stress(PointSet([(2 * x, 2 * y) for x, y in pts]))
    assert all(w2[e] == w1[e] / 16 for e in w1)


def test_laman_examples():
    tri = PointSet(TRIANGLE)
    assert is_laman(EmbeddedGraph(tri, tri.pairs()))
    sq = PointSet(UNIT_SQUARE)
    assert not is_laman(EmbeddedGraph(sq, sq.pairs()))


def test_normalization_apply_removes_trivial_part():
    ps = PointSet(PENTAGON)
    v = motion([(1, 2), (0, 5), ("1/2", 3), (-1, 1), (4, 4)])
    norm = Normalization.default(ps)
    w = norm.apply(ps, v)
    assert norm.holds(w)
    assert all_strains(ps, w) == all_strains(ps, v)


def test_normalization_rejects_equal_heights():
    ps = PointSet([(0, 0), (3, 0), (1, 2)])
    with pytest.raises(PreconditionError):
        Normalization(0, 1).validate(ps)
    assert Normalization.default(ps) == Normalization(0, 2)


@settings(max_examples=150)
@given(rational_point_sets(4))
def test_four_point_stress_is_equilibrium(ps):
    w = four_point_stress(ps)
    assert is_self_stress(ps, w)
    (basis,) = stress_space(EmbeddedGraph(ps, ps.pairs()))
    e0 = (0, 1)
    assert all(basis[e] * w[e0] == w[e] * basis[e0] for e in w)


@settings(max_examples=100)
@given(point_sets(4, 7), st.data())
def test_stress_orthogonal_to_every_strain_vector(ps, data):
    v = motion([(data.draw(rationals), data.draw(rationals)) for _ in range(len(ps))])
    s = all_strains(ps, v)
    for q in combinations(range(len(ps)), 4):
        w = four_point_stress(ps, q)
        assert sum(w[e] * s[e] for e in w) == 0


@settings(max_examples=50)
@given(point_sets(3, 7), st.data())
def test_integer_strains_match_direct_formula(ps, data):
    v = motion([(data.draw(rationals), data.draw(rationals)) for _ in range(len(ps))])
    s = all_strains(ps, v)
    assert all(s[(i, j)] == strain(ps, v, i, j) for i, j in ps.pairs())


@settings(max_examples=40)
@given(point_sets(3, 8))
def test_completed_ppt_is_minimally_rigid(ps):
    g = complete_to_ppt(EmbeddedGraph(ps, []))
    assert is_laman(g)
    assert infinitesimally_rigid(g)
    assert flex_space(g) == []
