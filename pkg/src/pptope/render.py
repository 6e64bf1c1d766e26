"""Deterministic SVG drawings of embedded graphs.

This is the only place coordinates become floats.  The viewport is the
bounding box padded by 10% on each side, with the y-axis pointing up.
"""

from __future__ import annotations

from typing import Iterable

from .geometry import EmbeddedGraph, PointSet, convex_hull

WIDTH = 400


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _frame(ps: PointSet):
    xs = [p.x for p in ps]
    ys = [p.y for p in ps]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1
    pad = span / 10
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    scale = WIDTH / float(max(x1 - x0, y1 - y0))
    w = float(x1 - x0) * scale
    h = float(y1 - y0) * scale

    def place(p):
        return float(p.x - x0) * scale, float(y1 - p.y) * scale

    return w, h, place


def render_svg(g: EmbeddedGraph, shade: Iterable[Iterable[int]] = (),
               highlight: Iterable = ()) -> str:
    """Points as labelled disks, edges as segments.

    ``shade`` lists point subsets whose convex hulls are filled (rigid
    components); ``highlight`` lists edges drawn dashed (e.g. a removed hull edge).
    """
    ps = g.base
    w, h, place = _frame(ps)
    xy = [place(p) for p in ps]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
           f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
           f'<rect width="{_fmt(w)}" height="{_fmt(h)}" fill="white"/>']
    for comp in sorted(sorted(c) for c in shade):
        if len(comp) < 3:
            continue
        hull = [comp[k] for k in convex_hull(ps.subset(comp))]
        pts = " ".join(f"{_fmt(xy[i][0])},{_fmt(xy[i][1])}" for i in hull)
        out.append(f'<polygon points="{pts}" fill="#d8d8d8" stroke="none"/>')
    for i, j in g.key():
        (ax, ay), (bx, by) = xy[i], xy[j]
        out.append(f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
                   f'stroke="black" stroke-width="2"/>')
    for i, j in sorted(tuple(sorted(e)) for e in highlight):
        (ax, ay), (bx, by) = xy[i], xy[j]
        out.append(f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
                   f'stroke="gray" stroke-width="1.5" stroke-dasharray="6,4"/>')
    for k, (x, y) in enumerate(xy):
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="9" fill="white" stroke="black"/>')
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(y + 4)}" font-size="11" font-family="sans-serif" '
                   f'text-anchor="middle">{k}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
