"""Static SVG pictures: the partitioned dual-complex circle and moment polygons."""

from __future__ import annotations

import math

from .cycle import Edge, Vertex, circle_position

_COLORS = ("#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2", "#b279a2")


def _angle(config, pt) -> float:
    return math.pi / 2 - 2 * math.pi * float(circle_position(config, pt)) / config.k


def _xy(cx, cy, r, a):
    return cx + r * math.cos(a), cy - r * math.sin(a)


def _arc(cx, cy, r, a0, a1, color, width) -> str:
    # clockwise sweep from a0 to a1 (angles decrease along the circle)
    span = (a0 - a1) % (2 * math.pi) or 2 * math.pi
    if span >= 2 * math.pi - 1e-9:
        return (f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="{color}" '
                f'stroke-width="{width}"/>')
    x0, y0 = _xy(cx, cy, r, a0)
    x1, y1 = _xy(cx, cy, r, a0 - span)
    large = 1 if span > math.pi else 0
    return (f'<path d="M {x0:.3f} {y0:.3f} A {r} {r} 0 {large} 1 {x1:.3f} {y1:.3f}" '
            f'fill="none" stroke="{color}" stroke-width="{width}"/>')


def _label(pt) -> str:
    if isinstance(pt, Edge):
        return f"t={pt.t}"
    return f"C{pt.component}"


def partition_svg(config, P, size: int = 480) -> str:
    cx = cy = size / 2
    r = size * 0.36
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#bbbbbb" stroke-width="2"/>']
    for i, c in enumerate(P.chambers):
        parts.append(_arc(cx, cy, r, _angle(config, c.lo), _angle(config, c.hi), _COLORS[i % len(_COLORS)], 6))
    for c in P.tails:
        parts.append(_arc(cx, cy, r, _angle(config, c.lo), _angle(config, c.hi), "#888888", 3))
    for b in P.boundaries:
        a = _angle(config, b.point)
        x0, y0 = _xy(cx, cy, r - 8, a)
        x1, y1 = _xy(cx, cy, r + 8, a)
        parts.append(f'<line x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}" stroke="black"/>')
        lx, ly = _xy(cx, cy, r + 22, a)
        parts.append(f'<text x="{lx:.3f}" y="{ly:.3f}" font-size="9" text-anchor="middle">{_label(b.point)}</text>')
    for i in range(config.k):
        a = _angle(config, Vertex(i))
        x, y = _xy(cx, cy, r, a)
        parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def polygon_svg(P, size: int = 400) -> str:
    xs = [float(x) for x, _ in P.vertices]
    ys = [float(y) for _, y in P.vertices]
    span = max(max(xs), max(ys), 1.0)
    scale = size * 0.8 / span
    pad = size * 0.1

    def tr(x, y):
        return pad + float(x) * scale, size - pad - float(y) * scale

    pts = " ".join(f"{a:.3f},{b:.3f}" for a, b in (tr(x, y) for x, y in P.vertices))
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<polygon points="{pts}" fill="#dbe9f6" stroke="#4c78a8" stroke-width="2"/>']
    for x in range(0, math.floor(max(xs)) + 1):
        for y in range(0, math.floor(max(ys)) + 1):
            a, b = tr(x, y)
            parts.append(f'<circle cx="{a:.3f}" cy="{b:.3f}" r="1.5" fill="#555555"/>')
    for x, y in P.vertices:
        a, b = tr(x, y)
        parts.append(f'<text x="{a + 4:.3f}" y="{b - 4:.3f}" font-size="10">({x}, {y})</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
