"""Deterministic SVG diagrams of rank-2 momentum polytopes.

Canvas is fixed at 800x800 with a 10% margin; the data box is the clipped
polytope plus all marked points, mapped with a uniform scale.  Output bytes
are a pure function of the inputs.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import RankUnsupportedError, WindowRequiredError
from .exact import Covector
from .spectrum import MomentumPolyhedron

SIZE = 800
MARGIN = 0.10


def _clip_by_halfspace(points, normal, offset):
    """Sutherland-Hodgman step over exact rationals."""
    if not points:
        return []
    out = []
    values = [normal.dot(p) - offset for p in points]
    for i, p in enumerate(points):
        q = points[(i + 1) % len(points)]
        vp, vq = values[i], values[(i + 1) % len(points)]
        if vp <= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            t = vp / (vp - vq)
            out.append((Fraction(1) - t) * p + t * q)
    dedup = []
    for p in out:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def clipped_region(poly: MomentumPolyhedron, window=None):
    """Polytope region as an exact polygon, clipped to the window box."""
    if poly.rank != 2:
        raise RankUnsupportedError("diagrams are drawn only at rank 2")
    if window is not None:
        (x0, x1), (y0, y1) = window
        box = [
            Covector([x0, y0]),
            Covector([x1, y0]),
            Covector([x1, y1]),
            Covector([x0, y1]),
        ]
    else:
        if not poly.is_bounded():
            raise WindowRequiredError(
                "rendering an unbounded polytope requires a window"
            )
        (x0, x1), (y0, y1) = poly.bounding_box()
        box = [
            Covector([x0 - 1, y0 - 1]),
            Covector([x1 + 1, y0 - 1]),
            Covector([x1 + 1, y1 + 1]),
            Covector([x0 - 1, y1 + 1]),
        ]
    region = box
    for hs in poly.ensure_halfspaces():
        region = _clip_by_halfspace(region, hs.normal, hs.offset)
    return region


def _fmt(x: float) -> str:
    return f"{x:.3f}"


class _Mapper:
    def __init__(self, xs, ys):
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        if x1 == x0:
            x0, x1 = x0 - 1.0, x1 + 1.0
        if y1 == y0:
            y0, y1 = y0 - 1.0, y1 + 1.0
        inner = SIZE * (1.0 - 2.0 * MARGIN)
        self.scale = inner / max(x1 - x0, y1 - y0)
        self.cx = 0.5 * (x0 + x1)
        self.cy = 0.5 * (y0 + y1)

    def map(self, x: float, y: float):
        px = SIZE / 2 + (x - self.cx) * self.scale
        py = SIZE / 2 - (y - self.cy) * self.scale
        return px, py


def render_diagram(
    poly: MomentumPolyhedron,
    levels,
    fixed_images,
    window=None,
) -> str:
    """SVG text: polytope region, integer grid, level markers, labeled
    fixed-point images."""
    region = clipped_region(poly, window=window)
    region_f = [tuple(map(float, p.entries)) for p in region]
    level_f = [(float(a), float(b)) for a, b in levels]
    fixed_f = [(name, float(v.entries[0]), float(v.entries[1])) for name, v in fixed_images]

    xs = [p[0] for p in region_f] + [p[0] for p in level_f] + [p[1] for p in fixed_f]
    ys = [p[1] for p in region_f] + [p[1] for p in level_f] + [p[2] for p in fixed_f]
    if not xs:
        xs, ys = [0.0], [0.0]
    pad = 0.5
    mapper = _Mapper([min(xs) - pad, max(xs) + pad], [min(ys) - pad, max(ys) + pad])

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]

    gx0, gx1 = math.ceil(min(xs) - pad), math.floor(max(xs) + pad)
    gy0, gy1 = math.ceil(min(ys) - pad), math.floor(max(ys) + pad)
    for gx in range(gx0, gx1 + 1):
        a = mapper.map(gx, min(ys) - pad)
        b = mapper.map(gx, max(ys) + pad)
        parts.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
            f'y2="{_fmt(b[1])}" stroke="#dddddd" stroke-width="1"/>'
        )
    for gy in range(gy0, gy1 + 1):
        a = mapper.map(min(xs) - pad, gy)
        b = mapper.map(max(xs) + pad, gy)
        parts.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" '
            f'y2="{_fmt(b[1])}" stroke="#dddddd" stroke-width="1"/>'
        )
    for gx in range(gx0, gx1 + 1):
        for gy in range(gy0, gy1 + 1):
            p = mapper.map(gx, gy)
            parts.append(
                f'<circle cx="{_fmt(p[0])}" cy="{_fmt(p[1])}" r="1.5" fill="#bbbbbb"/>'
            )

    if len(region_f) >= 2:
        coords = " ".join(
            f"{_fmt(px)},{_fmt(py)}" for px, py in (mapper.map(x, y) for x, y in region_f)
        )
        tag = "polygon" if len(region_f) >= 3 else "polyline"
        parts.append(
            f'<{tag} points="{coords}" fill="#cfe8ff" fill-opacity="0.6" '
            f'stroke="#1f77b4" stroke-width="2"/>'
        )

    for x, y in level_f:
        p = mapper.map(x, y)
        parts.append(
            f'<circle cx="{_fmt(p[0])}" cy="{_fmt(p[1])}" r="6" fill="#d62728"/>'
        )

    for name, x, y in fixed_f:
        p = mapper.map(x, y)
        parts.append(
            f'<rect x="{_fmt(p[0] - 5)}" y="{_fmt(p[1] - 5)}" width="10" height="10" '
            f'fill="#2ca02c"/>'
        )
        parts.append(
            f'<text x="{_fmt(p[0] + 8)}" y="{_fmt(p[1] - 8)}" font-family="monospace" '
            f'font-size="16" fill="#2ca02c">{name}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
