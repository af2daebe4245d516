"""Deterministic SVG rendering of peg-board diagrams.

Pegs are filled circles, components are polylines (the fundamental period
plus one lighter ghost translate for the wrapping component), overlays are
dashed.  Output is byte-stable: element order and coordinate formatting are
fixed functions of the input.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .curves import CurveDiagram
from .geometry import Box, Point, pegs_in_box
from .pairing import ArcLift, SlopeSpec, line_family
from .textfmt import canonicalize

SCALE = 60


def _fx(v: Fraction) -> str:
    return f"{float(v) * SCALE:.2f}"


def _fy(v: Fraction) -> str:
    return f"{-float(v) * SCALE:.2f}"  # flip so heights increase upward


def _polyline(points: Sequence[Point], color: str, width: str, dashed=False, opacity="1") -> str:
    coords = " ".join(f"{_fx(p.x)},{_fy(p.y)}" for p in points)
    dash = ' stroke-dasharray="6,4"' if dashed else ""
    return (
        f'<polyline points="{coords}" fill="none" stroke="{color}" '
        f'stroke-width="{width}" stroke-opacity="{opacity}"{dash}/>'
    )


def _overlay_lines(d: CurveDiagram, slope: SlopeSpec, window: Box) -> list[str]:
    fam = line_family(d, slope)
    out = []
    for k in fam.lift_indices(window):
        anchor, (dx, dy) = fam.anchor_dir(k)
        if dx == 0:
            a = Point(anchor.x, window.ymin)
            b = Point(anchor.x, window.ymax)
        else:
            ya = anchor.y + (window.xmin - anchor.x) * dy / dx
            yb = anchor.y + (window.xmax - anchor.x) * dy / dx
            a, b = Point(window.xmin, ya), Point(window.xmax, yb)
        out.append(_polyline([a, b], "#c0392b", "1.5", dashed=True))
    return out


def render_svg(d: CurveDiagram, overlay: Optional[SlopeSpec] = None,
               overlay_arc: Optional[ArcLift] = None) -> str:
    canon = canonicalize(d)
    box = canon.bbox().pad(Fraction(3, 4))
    window = Box(box.xmin, box.xmax + 1, min(box.ymin, Fraction(-3, 2)), max(box.ymax, Fraction(3, 2)))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="'
        f'{_fx(window.xmin)} {_fy(window.ymax)} '
        f'{float(window.xmax - window.xmin) * SCALE:.2f} '
        f'{float(window.ymax - window.ymin) * SCALE:.2f}">'
    ]
    parts.append(f'<!-- diagram: {canon.source} -->')
    for peg in pegs_in_box(window):
        parts.append(
            f'<circle cx="{_fx(peg.x)}" cy="{_fy(peg.y)}" r="4" fill="#222222"/>'
        )
    for i, c in enumerate(canon.components):
        color = "#1f77b4" if c.winding == 1 else "#2ca02c"
        pts = list(c.vertices) + ([] if c.winding == 1 else [c.vertices[0]])
        parts.append(_polyline(pts, color, "2.5"))
        if c.winding == 1:
            ghost = [p.translate(1) for p in pts]
            parts.append(_polyline(ghost, color, "2.5", opacity="0.3"))
    if overlay is not None:
        parts.extend(_overlay_lines(canon, overlay, window))
    if overlay_arc is not None:
        seg = overlay_arc.seg()
        lo = math.ceil(window.xmin - max(seg.a.x, seg.b.x))
        hi = math.floor(window.xmax - min(seg.a.x, seg.b.x))
        for k in range(lo, hi + 1):
            parts.append(_polyline([seg.a.translate(k), seg.b.translate(k)], "#9467bd", "1.5", dashed=True))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
