"""Run every applicable invariant check on one point set and report pass/fail per check."""

from __future__ import annotations

import traceback
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .errors import InvariantViolation, PreconditionError
from .expansion import (
    Polytope,
    brute_force_rays,
    check_validity,
    closure_violations,
    cone_extreme_rays,
    delta_space_check,
    expansive_flex,
    make_f,
    quadruple_sum,
    ray_signature,
    realize_polytope,
)
from .geometry import EmbeddedGraph, PointSet, hull_edges, in_convex_position
from .pptenum import flip
from .rigidity import all_strains, four_point_stress, is_laman
from .secondary import affine_map_check, ccw_reindex

ORACLE_MAX_N = 5


@dataclass
class CheckResult:
    name: str
    passed: bool | None  # None = skipped
    detail: str = ""


@dataclass
class VerifyReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed is not False for r in self.results)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if r.passed is False]

    def to_json(self) -> dict:
        status = {True: "pass", False: "fail", None: "skipped"}
        return {"ok": self.ok,
                "checks": [{"name": r.name, "status": status[r.passed], "detail": r.detail}
                           for r in self.results]}


def _run(report: VerifyReport, name: str, fn: Callable[[], str | bool | None]):
    try:
        res = fn()
    except (InvariantViolation, PreconditionError, AssertionError) as exc:
        report.results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
        return
    except Exception as exc:  # a crash is a failed check, not a crashed report
        tb = traceback.format_exception_only(type(exc), exc)[-1].strip()
        report.results.append(CheckResult(name, False, tb))
        return
    if res is None:
        report.results.append(CheckResult(name, None, "not applicable"))
    elif isinstance(res, str):
        report.results.append(CheckResult(name, True, res))
    else:
        report.results.append(CheckResult(name, bool(res)))


def verify(ps: PointSet, f=None) -> VerifyReport:
    """All checks for one input; ``f`` defaults to the centroid determinant-product table."""
    n = len(ps)
    f = f if f is not None else make_f(ps)
    report = VerifyReport()
    state: dict = {}

    def four_point_identity():
        bad = [q for q in combinations(range(n), 4) if quadruple_sum(ps, q, f) != 1]
        assert not bad, f"quadruple sums differ from 1 on {bad[:3]}"
        return f"{len(list(combinations(range(n), 4)))} quadruples"

    def validity():
        rep = check_validity(ps, f)
        assert rep.valid, f"nonpositive quadruples {rep.witnesses[:3]}"
        return True

    def polytope():
        P = realize_polytope(ps, f)
        state["P"] = P
        return f"{len(P.vertices)} vertices, {len(P.bounded_edges)} flips, {len(P.rays)} rays"

    def need_polytope() -> Polytope:
        if "P" not in state:
            raise PreconditionError("polytope was not realized")
        return state["P"]

    def simplicity():
        P = need_polytope()
        deg = {k: 0 for k in P.vertices}
        for a, b, _, _ in P.bounded_edges:
            deg[a] += 1
            deg[b] += 1
        for r in P.rays:
            deg[r.vertex] += 1
        for k, vx in P.vertices.items():
            tight = [e for e, s in all_strains(ps, vx.v).items() if s == f[e]]
            assert len(tight) == 2 * n - 3, f"vertex {k} has {len(tight)} tight constraints"
            assert deg[k] == 2 * n - 3, f"vertex {k} has {deg[k]} incident edges and rays"
        return True

    def flip_involution():
        P = need_polytope()
        for k, t in P.flip_graph.ppts.items():
            for e in t.interior_edges():
                t2, ins = flip(t, e)
                back, out = flip(t2, ins)
                assert back.key == k and out == e, f"flip of {e} in {k} is not undone"
        return True

    def laman():
        P = need_polytope()
        assert all(is_laman(t.graph) for t in P.flip_graph.ppts.values())
        return True

    def bounded_face():
        P = need_polytope()
        hull = hull_edges(ps)
        for k, vx in P.vertices.items():
            s = all_strains(ps, vx.v)
            assert all(s[e] == f[e] for e in hull), f"vertex {k} leaves a hull constraint"
        for r in P.rays:
            s = all_strains(ps, r.direction)
            assert any(s[e] != 0 for e in hull), "a ray keeps every hull edge tight"
            assert all(x >= 0 for x in s.values()), "ray direction is not expansive"
            assert s[r.hull_edge] > 0, "ray does not open its removed hull edge"
        return True

    def stress_orthogonality():
        P = need_polytope()
        for vx in P.vertices.values():
            s = all_strains(ps, vx.v)
            for q in combinations(range(n), 4):
                w = four_point_stress(ps, q)
                assert sum(w[e] * s[e] for e in w) == 0, f"stress on {q} not orthogonal to strains"
        return True

    def delta_space():
        P = need_polytope()
        for k, vx in P.vertices.items():
            assert delta_space_check(ps, f, vx), f"slack coordinates fail at {k}"
        return True

    def ray_closure():
        P = need_polytope()
        rays = cone_extreme_rays(ps, flip_graph=P.flip_graph)
        state["rays"] = rays
        for r in rays:
            bad = closure_violations(ps, r.tight_pairs)
            assert not bad, bad[0]
        return f"{len(rays)} extreme rays"

    def ray_oracle():
        if n > ORACLE_MAX_N:
            return None
        rays = state.get("rays") or cone_extreme_rays(ps)
        assert ray_signature(rays) == ray_signature(brute_force_rays(ps)), "ray sets differ"
        return True

    def expansive_unfolding():
        empty = EmbeddedGraph(ps, [])
        m = expansive_flex(empty)
        s = all_strains(ps, m)
        assert all(x >= 0 for x in s.values()) and all(s[e] > 0 for e in hull_edges(ps))
        assert expansive_flex(EmbeddedGraph(ps, hull_edges(ps))) is None
        return True

    def secondary():
        if not in_convex_position(ps) or n < 4:
            return None
        ccw, _ = ccw_reindex(ps)
        assert affine_map_check(ccw), "affine image differs from the GKZ vector"
        return True

    _run(report, "four-point stress identity", four_point_identity)
    _run(report, "perturbation validity", validity)
    _run(report, "vertex correspondence and flip edges", polytope)
    _run(report, "simple polyhedron", simplicity)
    _run(report, "flip involution", flip_involution)
    _run(report, "laman count", laman)
    _run(report, "maximal bounded face", bounded_face)
    _run(report, "stress orthogonality", stress_orthogonality)
    _run(report, "slack coordinates", delta_space)
    _run(report, "ray tight-set closure", ray_closure)
    _run(report, "extreme rays match oracle", ray_oracle)
    _run(report, "expansive unfolding", expansive_unfolding)
    _run(report, "secondary polytope map", secondary)
    return report
