"""SVG rendering of planar enriched tropical intersections.

Floats appear only here, as drawing coordinates.
"""
from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

from .enriched import enriched_multiplicity
from .errors import DimensionMismatch
from .fields import FieldSpec
from .intersect import find_transverse_intersections
from .lattice import _hull2, interior_odd_points, boundary_odd_points, minkowski_sum_all
from .tropical import EnrichedHypersurface, curve_from_subdivision, dual_subdivision, newton_polytope

COLORS = ["#1f4fd1", "#d1261f", "#2a9d3a", "#8a3ab9"]
PANEL = 420
MARGIN = 30


def _clip_ray(p, d, box):
    """Point where the ray p + t d (t >= 0) leaves the box."""
    (x0, x1), (y0, y1) = box
    ts = []
    if d[0] > 0:
        ts.append((x1 - p[0]) / d[0])
    elif d[0] < 0:
        ts.append((x0 - p[0]) / d[0])
    if d[1] > 0:
        ts.append((y1 - p[1]) / d[1])
    elif d[1] < 0:
        ts.append((y0 - p[1]) / d[1])
    t = max(0.0, min(ts)) if ts else 0.0
    return (p[0] + t * d[0], p[1] + t * d[1])


class _Frame:
    def __init__(self, box, x_offset):
        (self.x0, self.x1), (self.y0, self.y1) = box
        span = max(self.x1 - self.x0, self.y1 - self.y0) or 1.0
        self.scale = (PANEL - 2 * MARGIN) / span
        self.dx = x_offset + MARGIN

    def __call__(self, p):
        return (
            round(self.dx + (p[0] - self.x0) * self.scale, 2),
            round(PANEL - MARGIN - (p[1] - self.y0) * self.scale, 2),
        )


def render_svg(surfaces: Sequence[EnrichedHypersurface], field: FieldSpec, dual_panel: bool = True) -> str:
    if any(f.dim != 2 for f in surfaces) or len(surfaces) != 2:
        raise DimensionMismatch("plots need two planar curves")
    data = find_transverse_intersections(surfaces, field)
    curves = [curve_from_subdivision(dual_subdivision(f), f) for f in surfaces]
    pts = [tuple(float(x) for x in d.point) for d in data]
    for c in curves:
        pts += [tuple(float(x) for x in v) for v in c.vertices]
        pts += [tuple(float(x) for x in line.point) for line in c.lines]
    if not pts:
        pts = [(0.0, 0.0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = max(2.0, 0.25 * max(max(xs) - min(xs), max(ys) - min(ys)))
    box = ((min(xs) - pad, max(xs) + pad), (min(ys) - pad, max(ys) + pad))
    frame = _Frame(box, 0)
    out = []
    width = 2 * PANEL if dual_panel else PANEL
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL}" font-family="sans-serif" font-size="11">')
    out.append(f'<rect x="0" y="0" width="{width}" height="{PANEL}" fill="white"/>')

    def line(a, b, color, w=2):
        (x1, y1), (x2, y2) = frame(a), frame(b)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{w}"/>')

    for idx, c in enumerate(curves):
        color = COLORS[idx % len(COLORS)]
        verts = [tuple(float(x) for x in v) for v in c.vertices]
        for e in c.edges:
            line(verts[e.start], verts[e.end], color, 1 + e.weight)
        for r in c.rays:
            line(verts[r.start], _clip_ray(verts[r.start], r.direction, box), color, 1 + r.weight)
        for ln in c.lines:
            p = tuple(float(x) for x in ln.point)
            line(_clip_ray(p, ln.direction, box), _clip_ray(p, (-ln.direction[0], -ln.direction[1]), box), color, 1 + ln.weight)
        for v in verts:
            x, y = frame(v)
            out.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="{color}"/>')
    for d in data:
        x, y = frame(tuple(float(t) for t in d.point))
        label = escape(f"m={d.m}: {enriched_multiplicity(d, field)}")
        out.append(f'<circle class="intersection" cx="{x}" cy="{y}" r="5" fill="black"/>')
        out.append(f'<text x="{x + 7}" y="{y - 7}">{label}</text>')
    if dual_panel:
        out.extend(_dual_panel(surfaces, data))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _dual_panel(surfaces, data) -> list:
    total = minkowski_sum_all([newton_polytope(f) for f in surfaces])
    xs = [v[0] for v in total.vertices]
    ys = [v[1] for v in total.vertices]
    frame = _Frame(((min(xs), max(xs)), (min(ys), max(ys))), PANEL)
    out = []
    ring = " ".join("%s,%s" % frame(v) for v in _hull2(list(total.vertices)))
    out.append(f'<polygon points="{ring}" fill="#f2f2f2" stroke="black"/>')
    for d in data:
        cell = _hull2(list(d.corners()))
        pts = " ".join("%s,%s" % frame(v) for v in cell)
        out.append(f'<polygon class="mixed-cell" points="{pts}" fill="#ffd27f" stroke="black"/>')
    for v in boundary_odd_points(total) + interior_odd_points(total):
        x, y = frame(v)
        out.append(f'<circle class="odd-point" cx="{x}" cy="{y}" r="4" fill="orange" stroke="black"/>')
    return out
