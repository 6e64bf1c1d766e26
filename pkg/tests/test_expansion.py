from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pptope.errors import InvalidPerturbationError, NotInImageError
from pptope.expansion import (
    DetProduct,
    Explicit,
    NormHeuristic,
    brute_force_rays,
    check_quadruple_equations,
    check_validity,
    closure_violations,
    cone_extreme_rays,
    delta_space_check,
    expansive_flex,
    feasible,
    make_f,
    ray_signature,
    realize_polytope,
    reconstruct_motion,
    tight_set,
    vertex_for_ppt,
)
from pptope.geometry import EmbeddedGraph, Point, PointSet, hull_edges
from pptope.pptenum import PPT, enumerate_ppts
from pptope.rigidity import Normalization, add_motions, all_strains, four_point_stress, motion

from conftest import (
    PENTAGON,
    QUAD,
    QUAD_PLUS_ONE,
    TRI_PLUS_ONE,
    TRI_PLUS_TWO,
    TRIANGLE,
    UNIT_SQUARE,
    point_sets,
    rationals,
)

ORIGIN = Point.of(0, 0)


def test_det_product_table_unit_square():
    f = make_f(PointSet(UNIT_SQUARE), DetProduct(ORIGIN, ORIGIN))
    assert f[(0, 1)] == f[(0, 2)] == f[(0, 3)] == 0
    assert f[(1, 2)] == f[(1, 3)] == f[(2, 3)] == 1


def test_norm_heuristic_value():
    f = make_f(PointSet([(0, 0), (1, 0), (0, 1)]), NormHeuristic())
    assert f[(0, 1)] == Fraction(1, 2)


def test_explicit_passthrough():
    ps = PointSet(TRIANGLE)
    vals = {(0, 1): 3, (0, 2): Fraction(1, 7), (1, 2): -2}
    assert make_f(ps, Explicit(vals)) == {e: Fraction(v) for e, v in vals.items()}


def test_zero_table_is_invalid_everywhere():
    ps = PointSet(PENTAGON)
    rep = check_validity(ps, {e: Fraction(0) for e in ps.pairs()})
    assert not rep.valid
    assert len(rep.witnesses) == 5 and all(r == 0 for _, r in rep.witnesses)


@pytest.mark.parametrize("scheme", [None, NormHeuristic()])
def test_schemes_give_unit_quadruple_sums(scheme):
    ps = PointSet(TRI_PLUS_TWO)
    rep = check_validity(ps, make_f(ps, scheme))
    assert rep.valid and all(r == 1 for _, r in rep.values)


def test_hand_solved_triangle_vertex():
    ps = PointSet([(0, 0), (0, 2), (3, 1)])
    f = make_f(ps, DetProduct(ORIGIN, ORIGIN))
    assert f == {(0, 1): 0, (0, 2): 0, (1, 2): 36}
    t = PPT.of(EmbeddedGraph(ps, ps.pairs()))
    vx = vertex_for_ppt(ps, f, t, Normalization(0, 1))
    assert vx.v == (Point.of(0, 0), Point.of(0, 0), Point.of(6, -18))


def test_square_vertex_is_strict_on_other_diagonal():
    ps = PointSet(UNIT_SQUARE)
    f = make_f(ps)
    t = PPT.of(EmbeddedGraph(ps, list(hull_edges(ps)) + [(0, 2)]))
    vx = vertex_for_ppt(ps, f, t)
    assert all_strains(ps, vx.v)[(1, 3)] > f[(1, 3)]


def test_zero_table_collapses_to_apex():
    ps = PointSet(UNIT_SQUARE)
    t = PPT.of(EmbeddedGraph(ps, list(hull_edges(ps)) + [(0, 2)]))
    with pytest.raises(InvalidPerturbationError):
        vertex_for_ppt(ps, {e: Fraction(0) for e in ps.pairs()}, t)


def test_small_polytopes():
    P = realize_polytope(PointSet(TRIANGLE))
    assert (len(P.vertices), len(P.bounded_edges), len(P.rays)) == (1, 0, 3)
    P = realize_polytope(PointSet(QUAD))
    assert (len(P.vertices), len(P.bounded_edges), len(P.rays)) == (2, 1, 8)


def test_sign_law_both_four_point_order_types():
    # K4 minus kl is a vertex exactly when w_kl < 0
    for pts in (QUAD, TRI_PLUS_ONE):
        ps = PointSet(pts)
        w = four_point_stress(ps)
        P = realize_polytope(ps)
        full = frozenset(ps.pairs())
        missing = {next(iter(full - vx.ppt.edges)) for vx in P.vertices.values()}
        assert missing == {e for e, x in w.items() if x < 0}


@pytest.mark.parametrize("pts", [TRIANGLE, QUAD, TRI_PLUS_ONE, PENTAGON, QUAD_PLUS_ONE])
def test_polytope_structure(pts):
    ps = PointSet(pts)
    n = len(ps)
    P = realize_polytope(ps)
    f = P.f
    hull = hull_edges(ps)
    for vx in P.vertices.values():
        assert len(tight_set(ps, f, vx.v)) == 2 * n - 3
        assert hull <= tight_set(ps, f, vx.v)
    for r in P.rays:
        s = all_strains(ps, r.direction)
        assert not all(s[e] == 0 for e in hull)
        # recession direction: feasible from every vertex
        for vx in P.vertices.values():
            assert feasible(ps, f, add_motions(vx.v, r.direction))


def test_cone_rays_small():
    assert len(cone_extreme_rays(PointSet(TRIANGLE))) == 3
    ps = PointSet(QUAD)
    assert ray_signature(cone_extreme_rays(ps)) == ray_signature(brute_force_rays(ps))


@pytest.mark.parametrize("pts", [TRIANGLE, QUAD, TRI_PLUS_ONE, PENTAGON, QUAD_PLUS_ONE, TRI_PLUS_TWO])
def test_ray_tight_sets_are_closed(pts):
    ps = PointSet(pts)
    for r in cone_extreme_rays(ps):
        assert closure_violations(ps, r.tight_pairs) == []


def test_closure_detects_missing_completion():
    ps = PointSet(UNIT_SQUARE)
    assert closure_violations(ps, frozenset({(0, 2), (1, 3)}))
    assert closure_violations(ps, frozenset(hull_edges(ps)))
    assert closure_violations(ps, frozenset(ps.pairs())) == []


# --- expansive motions -----------------------------------------------------

def test_convex_polygon_has_no_expansive_motion():
    ps = PointSet(PENTAGON)
    assert expansive_flex(EmbeddedGraph(ps, hull_edges(ps))) is None


def test_open_arc_expands():
    ps = PointSet([(0, 0), (4, 0), (5, 3), (1, 2)])
    g = EmbeddedGraph(ps, [(0, 1), (1, 2), (2, 3)])
    m = expansive_flex(g)
    s = all_strains(ps, m)
    assert all(x >= 0 for x in s.values())
    assert all(s[e] == 0 for e in g.edges)
    assert all(s[e] > 0 for e in hull_edges(ps) - g.edges)


def test_single_edge_tether():
    ps = PointSet(TRIANGLE)
    g = EmbeddedGraph(ps, [(0, 1)])
    s = all_strains(ps, expansive_flex(g))
    assert s[(0, 1)] == 0 and s[(0, 2)] > 0 and s[(1, 2)] > 0


# --- strain coordinates ----------------------------------------------------

def test_dilation_is_in_image():
    ps = PointSet(PENTAGON)
    assert check_quadruple_equations(ps, all_strains(ps, tuple(ps))).in_image


def test_f_itself_is_not_a_strain_vector():
    ps = PointSet(QUAD_PLUS_ONE)
    f = make_f(ps)
    res = check_quadruple_equations(ps, f)
    assert all(r == 1 for _, r in res.residuals)
    with pytest.raises(NotInImageError):
        reconstruct_motion(ps, f)


@settings(max_examples=60)
@given(point_sets(3, 6), st.data())
def test_reconstruction_round_trip(ps, data):
    v = motion([(data.draw(rationals), data.draw(rationals)) for _ in range(len(ps))])
    norm = Normalization.default(ps)
    assert reconstruct_motion(ps, all_strains(ps, v), norm) == norm.apply(ps, v)


def test_slack_coordinates():
    ps = PointSet(QUAD_PLUS_ONE)
    P = realize_polytope(ps)
    vx = next(iter(P.vertices.values()))
    assert delta_space_check(ps, P.f, vx)
    # push off the vertex along a non-flex motion: some slack turns positive
    bumped = type(vx)(vx.ppt, add_motions(vx.v, tuple(Point(-p.x, -p.y) for p in ps), Fraction(1, 1000)))
    assert not delta_space_check(ps, P.f, bumped)
    assert not delta_space_check(ps, {e: Fraction(0) for e in ps.pairs()}, vx)


@settings(max_examples=25)
@given(point_sets(4, 6))
def test_random_sets_realize(ps):
    P = realize_polytope(ps)
    assert len(P.vertices) == len(enumerate_ppts(ps))
    for vx in P.vertices.values():
        assert delta_space_check(ps, P.f, vx)
