"""JSON and DOT encodings.

Rationals are written as bare ints or ``"num/den"`` strings, so every
``parse(emit(x))`` round trip is exact.  Pairs are keyed ``"i-j"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .assoc1d import GTable
from .errors import PreconditionError
from .exact import format_rational
from .expansion import DetProduct, Explicit, NormHeuristic, Polytope
from .geometry import EmbeddedGraph, Point, PointSet, edge
from .pptenum import FlipGraph


def rational_in(x) -> Fraction:
    """Parse a JSON scalar; floats are read via their decimal text."""
    if isinstance(x, bool):
        raise PreconditionError(f"expected a rational, got {x!r}")
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, (int, str)):
        try:
            return Fraction(x.strip() if isinstance(x, str) else x)
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"bad rational {x!r}") from exc
    raise PreconditionError(f"expected a rational, got {x!r}")


def rational_out(q: Fraction):
    return format_rational(q)


def pair_key(e) -> str:
    i, j = e
    return f"{i}-{j}"


def parse_pair_key(s: str) -> tuple[int, int]:
    try:
        a, b = s.split("-")
        return int(a), int(b)
    except ValueError as exc:
        raise PreconditionError(f"bad pair key {s!r}") from exc


def _pair_list(x) -> tuple[int, int]:
    if not (isinstance(x, (list, tuple)) and len(x) == 2 and all(isinstance(i, int) for i in x)):
        raise PreconditionError(f"expected an index pair, got {x!r}")
    return x[0], x[1]


# --- point sets and graphs -------------------------------------------------

def points_to_json(ps: PointSet) -> dict:
    return {"points": [[rational_out(p.x), rational_out(p.y)] for p in ps]}


def _coords(raw) -> list[tuple[Fraction, Fraction]]:
    if not isinstance(raw, list):
        raise PreconditionError("'points' must be a list of [x, y] pairs")
    out = []
    for k, p in enumerate(raw):
        if not (isinstance(p, list) and len(p) == 2):
            raise PreconditionError(f"point {k} is not an [x, y] pair")
        out.append((rational_in(p[0]), rational_in(p[1])))
    return out


def points_from_json(obj: Any) -> PointSet:
    """Accepts ``{"points": [...]}`` or a bare list of pairs."""
    raw = obj.get("points") if isinstance(obj, dict) else obj
    if raw is None:
        raise PreconditionError("missing 'points'")
    return PointSet([Point(x, y) for x, y in _coords(raw)])


def graph_to_json(g: EmbeddedGraph, with_points: bool = False) -> dict:
    out = {"edges": [list(e) for e in g.key()]}
    if with_points:
        out.update(points_to_json(g.base))
    return out


def graph_from_json(obj: Any, base: PointSet | None = None) -> EmbeddedGraph:
    if not isinstance(obj, dict) or "edges" not in obj:
        raise PreconditionError("missing 'edges'")
    if base is None:
        base = points_from_json(obj)
    return EmbeddedGraph(base, [_pair_list(e) for e in obj["edges"]])


# --- motions, stresses, strains --------------------------------------------

def motion_to_json(m) -> dict:
    return {"motion": [[rational_out(v.x), rational_out(v.y)] for v in m]}


def motion_from_json(obj: Any) -> tuple:
    raw = obj.get("motion") if isinstance(obj, dict) else obj
    if raw is None:
        raise PreconditionError("missing 'motion'")
    return tuple(Point(x, y) for x, y in _coords(raw))


def pair_map_to_json(values: Mapping) -> dict:
    return {pair_key(e): rational_out(values[e]) for e in sorted(values)}


def pair_map_from_json(obj: Mapping) -> dict:
    if not isinstance(obj, dict):
        raise PreconditionError("expected an object keyed by 'i-j'")
    return {edge(*parse_pair_key(k)): rational_in(v) for k, v in obj.items()}


# --- perturbation schemes and g-tables --------------------------------------

def scheme_from_json(obj: Any):
    if not isinstance(obj, dict):
        raise PreconditionError("perturbation file must be a JSON object")
    kind = obj.get("scheme", "explicit")
    if kind == "det":
        a, b = (Point(*(rational_in(c) for c in obj[k])) for k in ("a", "b"))
        return DetProduct(a, b)
    if kind == "norm":
        return NormHeuristic()
    if kind == "explicit":
        return Explicit(pair_map_from_json(obj.get("f", {})))
    raise PreconditionError(f"unknown scheme {kind!r}")


def gtable_to_json(g: GTable) -> dict:
    if g.scheme == "square":
        return {"n": g.n, "scheme": "square"}
    return {"n": g.n, "g": {pair_key(p): rational_out(g.g[p]) for p in sorted(g.g)}}


def gtable_from_json(obj: Any) -> GTable:
    if not isinstance(obj, dict) or not isinstance(obj.get("n"), int):
        raise PreconditionError("g-table needs an integer 'n'")
    n = obj["n"]
    if obj.get("scheme") == "square":
        return GTable.square(n)
    if "g" not in obj:
        raise PreconditionError("g-table needs 'g' or scheme 'square'")
    return GTable.explicit(n, {parse_pair_key(k): rational_in(v) for k, v in obj["g"].items()})


# --- polytopes and flip graphs ---------------------------------------------

def _key_json(k) -> list:
    return [list(e) for e in k]


def polytope_to_json(P: Polytope) -> dict:
    verts = [{"ppt": _key_json(k), "v": motion_to_json(P.vertices[k].v)["motion"]}
             for k in P.flip_graph.nodes]
    edges = [[_key_json(a), _key_json(b), {"out": list(eo), "in": list(ei)}]
             for a, b, eo, ei in P.bounded_edges]
    rays = [{"vertex": _key_json(r.vertex), "hull_edge": list(r.hull_edge),
             "direction": motion_to_json(r.direction)["motion"],
             "tight": [list(e) for e in sorted(r.tight_pairs)]}
            for r in P.rays]
    return {"vertices": verts, "edges": edges, "rays": rays}


def flip_graph_to_json(fg: FlipGraph) -> dict:
    index = {k: i for i, k in enumerate(fg.nodes)}
    return {"count": len(fg), "ppts": [_key_json(k) for k in fg.nodes],
            "flips": [[index[a], index[b], {"out": list(eo), "in": list(ei)}]
                      for a, b, eo, ei in fg.edges()]}


def flip_graph_to_dot(fg: FlipGraph) -> str:
    """Nodes are numbered in BFS order; each flip edge is labelled ``-e/+e'``."""
    index = {k: i for i, k in enumerate(fg.nodes)}
    lines = ["graph flips {"]
    for k in fg.nodes:
        label = " ".join(pair_key(e) for e in k)
        lines.append(f'  t{index[k]} [label="{label}"];')
    for a, b, eo, ei in fg.edges():
        lines.append(f'  t{index[a]} -- t{index[b]} [label="-{pair_key(eo)}/+{pair_key(ei)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def gkz_to_json(rows) -> dict:
    """``rows``: iterable of (ppt key, gkz vector)."""
    return {"triangulations": [{"ppt": _key_json(k), "gkz": [rational_out(x) for x in a]}
                               for k, a in rows]}


# --- files -----------------------------------------------------------------

def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc


def load_points(path) -> PointSet:
    """JSON, or plain text with one ``x y`` pair per line (``#`` starts a comment)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from exc
    if text.lstrip().startswith(("{", "[")):
        return points_from_json(load_json(path))
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].replace(",", " ").split()
        if not line:
            continue
        if len(line) != 2:
            raise PreconditionError(f"{path}:{lineno}: expected two coordinates")
        rows.append(Point(rational_in(line[0]), rational_in(line[1])))
    return PointSet(rows)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
