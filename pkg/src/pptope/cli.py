"""Command-line interface: ``ppt <command> ...``.

Exit status is 2 for malformed input (including collinear triples), 1 when a
structural invariant fails, 0 otherwise.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .assoc1d import (
    GTable,
    check_g_validity,
    enumerate_trees,
    facet_parallel_report,
    tree_to_bracketing,
    vertex_for_tree,
)
from .errors import GeneralPositionError, InvariantViolation, PreconditionError
from .exact import format_rational
from .expansion import DetProduct, NormHeuristic, cone_extreme_rays, expansive_flex, make_f, realize_polytope
from .geometry import Point, edge, hull_edges, is_noncrossing, is_pointed
from .pptenum import PPT, collapse, enumerate_ppts, pte_mechanism, rigid_components, seed_ppt
from .render import render_svg
from .rigidity import Normalization, all_strains
from .secondary import ccw_reindex, gkz_from_motion, gkz_vector
from . import serialize as io
from .verify import verify

DEFAULT_MAX_N = 10


def _max_n() -> int:
    raw = os.environ.get("PPT_MAX_N", str(DEFAULT_MAX_N))
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"PPT_MAX_N must be an integer, got {raw!r}")


def _load_points(path, cap: bool = True):
    ps = io.load_points(path)
    if len(ps) < 3:
        raise PreconditionError("need at least three points")
    if cap and len(ps) > _max_n():
        raise PreconditionError(f"{len(ps)} points exceed PPT_MAX_N = {_max_n()}")
    return ps


def _xy(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise PreconditionError(f"expected X,Y, got {text!r}")
    return Point(*(io.rational_in(p) for p in parts))


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(p) for p in text.split(","))
    except ValueError:
        raise PreconditionError(f"expected I,J, got {text!r}")
    return i, j


def _norm(args, ps):
    if getattr(args, "norm", None) is None:
        return Normalization.default(ps)
    return Normalization(*_pair(args.norm)).validate(ps)


def _f_table(args, ps):
    scheme = args.scheme
    if scheme == "norm":
        if args.a or args.b:
            raise PreconditionError("--a/--b only apply to the det scheme")
        return make_f(ps, NormHeuristic())
    if scheme.startswith("file="):
        return make_f(ps, io.scheme_from_json(io.load_json(scheme[5:])))
    if scheme != "det":
        raise PreconditionError(f"unknown scheme {scheme!r}; use det, norm or file=PATH")
    c = DetProduct.centroid(ps).a
    a = _xy(args.a) if args.a else c
    b = _xy(args.b) if args.b else c
    return make_f(ps, DetProduct(a, b))


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    elif not args.quiet:
        sys.stdout.write(text)


def _note(args, msg: str):
    if not args.quiet:
        print(msg, file=sys.stderr)


# --- commands --------------------------------------------------------------

def cmd_enumerate(args) -> int:
    ps = _load_points(args.points)
    fg = enumerate_ppts(ps)
    print(len(fg))
    if args.out:
        text = io.flip_graph_to_dot(fg) if args.format == "dot" else io.dumps(io.flip_graph_to_json(fg))
        Path(args.out).write_text(text)
    return 0


def cmd_polytope(args) -> int:
    ps = _load_points(args.points)
    P = realize_polytope(ps, _f_table(args, ps), _norm(args, ps))
    out = io.polytope_to_json(P)
    if args.minimize:
        # sum <p_i, v_i> over realized vertices; a demo functional only
        def value(k):
            return sum((p.x * v.x + p.y * v.y for p, v in zip(ps, P.vertices[k].v)), 0)
        best = min(P.flip_graph.nodes, key=lambda k: (value(k), k))
        out["minimizer"] = {"ppt": [list(e) for e in best], "value": format_rational(value(best))}
    _emit(args, io.dumps(out))
    _note(args, f"{len(P.vertices)} vertices, {len(P.bounded_edges)} bounded edges, {len(P.rays)} rays")
    return 0


def cmd_cone_rays(args) -> int:
    ps = _load_points(args.points)
    rays = cone_extreme_rays(ps, _norm(args, ps))
    out = {"count": len(rays),
           "rays": [{"direction": io.motion_to_json(r.direction)["motion"],
                     "tight": [list(e) for e in sorted(r.tight_pairs)]} for r in rays]}
    _emit(args, io.dumps(out))
    _note(args, f"{len(rays)} extreme rays")
    return 0


def cmd_verify(args) -> int:
    ps = _load_points(args.points)
    report = verify(ps, _f_table(args, ps))
    _emit(args, io.dumps(report.to_json()))
    for r in report.results:
        mark = {True: "PASS", False: "FAIL", None: "SKIP"}[r.passed]
        _note(args, f"{mark}  {r.name}" + (f"  ({r.detail})" if r.detail else ""))
    return 0 if report.ok else 1


def cmd_render(args) -> int:
    ps = _load_points(args.points, cap=False)
    g = io.graph_from_json(io.load_json(args.graph), ps) if args.graph else seed_ppt(ps).graph
    shade, dashed = [], []
    if args.remove:
        he = edge(*_pair(args.remove))
        if he not in hull_edges(ps):
            raise PreconditionError(f"{he} is not a hull edge")
        mech = pte_mechanism(PPT.of(g), he, _norm(args, ps))
        shade = rigid_components(mech)
        collapse(mech)  # asserts the components account for every zero-strain pair
        g, dashed = mech.graph, [he]
    _emit(args, render_svg(g, shade, dashed))
    return 0


def cmd_assoc1d(args) -> int:
    if args.g:
        g = io.gtable_from_json(io.load_json(args.g))
    else:
        if args.n < 2:
            raise PreconditionError("--n must be at least 2")
        if args.n > _max_n():
            raise PreconditionError(f"n = {args.n} exceeds PPT_MAX_N = {_max_n()}")
        g = GTable.square(args.n)
    val = check_g_validity(g)
    out = {"table": io.gtable_to_json(g), "valid": val.valid,
           "crossing_violations": [list(q) for q in val.crossing_violations],
           "transitive_violations": [list(q) for q in val.transitive_violations]}
    if val.valid:
        trees = enumerate_trees(g.n)
        out["count"] = len(trees)
        out["trees"] = [{"edges": [list(e) for e in t.key()],
                         "bracketing": tree_to_bracketing(t),
                         "v": [format_rational(x) for x in vertex_for_tree(g, t).v]} for t in trees]
        if g.n >= 3:
            out["parallel_facet_pairs"] = [[list(p.first), list(p.second)]
                                           for p in facet_parallel_report(g)]
    _emit(args, io.dumps(out))
    _note(args, f"{out.get('count', 0)} trees" if val.valid else "g-table is not valid")
    return 0


def cmd_secondary(args) -> int:
    ps = _load_points(args.points)
    ccw, perm = ccw_reindex(ps)
    P = realize_polytope(ccw)
    rows, agree = [], True
    for k in P.flip_graph.nodes:
        vx = P.vertices[k]
        a = gkz_vector(ccw, vx.ppt)
        agree &= gkz_from_motion(ccw, P.f, vx.v) == a
        rows.append(([(perm[i], perm[j]) for i, j in k], a))
    out = io.gkz_to_json(rows)
    out["order"] = perm
    out["affine_map_agrees"] = agree
    _emit(args, io.dumps(out))
    if not agree:
        raise InvariantViolation("affine image of a vertex differs from its GKZ vector")
    _note(args, f"{len(rows)} triangulations")
    return 0


def cmd_expand(args) -> int:
    ps = _load_points(args.points)
    g = io.graph_from_json(io.load_json(args.graph), ps)
    if not (is_pointed(g) and is_noncrossing(g)):
        raise PreconditionError("graph must be pointed and non-crossing")
    m = expansive_flex(g, _norm(args, ps))
    missing = sorted(hull_edges(ps) - g.edges)
    if m is None:
        out = {"motion": None, "missing_hull_edges": []}
    else:
        out = {"motion": io.motion_to_json(m)["motion"],
               "strains": io.pair_map_to_json(all_strains(ps, m)),
               "missing_hull_edges": [list(e) for e in missing]}
    _emit(args, io.dumps(out))
    _note(args, "no expansive motion: every hull edge is present" if m is None
          else f"expansive motion opening {len(missing)} hull edges")
    return 0


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ppt", description="Exact pseudo-triangulation polytopes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the artifact here instead of stdout")
    common.add_argument("--quiet", action="store_true", help="no summary lines, no stdout artifact")
    scheme = argparse.ArgumentParser(add_help=False)
    scheme.add_argument("--scheme", default="det", help="det | norm | file=PATH (default det)")
    scheme.add_argument("--a", help="X,Y for the det scheme (default centroid)")
    scheme.add_argument("--b", help="X,Y for the det scheme (default centroid)")
    norm = argparse.ArgumentParser(add_help=False)
    norm.add_argument("--norm", help="I,J anchor indices of the tie-down")

    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("enumerate", parents=[common], help="enumerate pointed pseudo-triangulations")
    s.add_argument("points")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("polytope", parents=[common, scheme, norm], help="realize the polytope")
    s.add_argument("points")
    s.add_argument("--minimize", action="store_true", help="report argmin of sum <p_i, v_i> over vertices")
    s.set_defaults(func=cmd_polytope)

    s = sub.add_parser("cone-rays", parents=[common, norm], help="extreme rays of the expansion cone")
    s.add_argument("points")
    s.set_defaults(func=cmd_cone_rays)

    s = sub.add_parser("verify", parents=[common, scheme], help="run every invariant check")
    s.add_argument("points")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", parents=[common, norm], help="SVG drawing of a graph")
    s.add_argument("points")
    s.add_argument("--graph", help="edge file (default: a greedy pseudo-triangulation)")
    s.add_argument("--remove", help="I,J hull edge to remove; shades the rigid components")
    s.add_argument("--format", choices=["svg"], default="svg")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("assoc1d", parents=[common], help="1D associahedron of alternating trees")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--n", type=int)
    grp.add_argument("--g", help="g-table JSON file")
    s.set_defaults(func=cmd_assoc1d)

    s = sub.add_parser("secondary", parents=[common], help="GKZ vectors for points in convex position")
    s.add_argument("points")
    s.set_defaults(func=cmd_secondary)

    s = sub.add_parser("expand", parents=[common, norm], help="expansive motion of a pointed graph")
    s.add_argument("points")
    s.add_argument("graph")
    s.set_defaults(func=cmd_expand)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GeneralPositionError as exc:
        print(f"error: {exc} (indices {', '.join(map(str, exc.triple))})", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
