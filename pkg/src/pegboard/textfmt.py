"""Line-oriented text format for curve diagrams.

Format (UTF-8):

    # comments start with a hash
    component winding=1
    v -1/2 0
    v 1/2 0
    component winding=0
    v ...

Coordinates are integers or fractions a/b.  Parsing runs the full validator;
emission is canonical: the wrapping component first (re-based at its seam
crossing), then the closed components sorted by their lowest vertex.
"""

from __future__ import annotations

from fractions import Fraction

from .curves import (
    Component,
    CurveDiagram,
    anchor_at_seam,
    validate,
    _canonical_cycle,
    _strip_offset,
)
from .geometry import Point


class CurveFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InvariantViolation(ValueError):
    """The parsed diagram fails validation; the report is attached."""

    def __init__(self, report):
        super().__init__(report.summary())
        self.report = report


def _parse_fraction(token: str, line: int, column: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise CurveFormatError(f"bad rational {token!r}", line, column)


def parse_curve_text(text: str, source: str = "text") -> CurveDiagram:
    components: list[Component] = []
    winding = None
    vertices: list[Point] = []

    def flush(line_no):
        nonlocal winding, vertices
        if winding is None:
            return
        if len(vertices) < 2:
            raise CurveFormatError("component needs at least two vertices", line_no)
        components.append(Component(tuple(vertices), winding))
        winding, vertices = None, []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "component":
            flush(line_no)
            if len(parts) != 2 or not parts[1].startswith("winding="):
                raise CurveFormatError("expected 'component winding=<0|1>'", line_no)
            value = parts[1].split("=", 1)[1]
            if value not in ("0", "1"):
                raise CurveFormatError(f"winding must be 0 or 1, got {value!r}", line_no,
                                       column=line.index("=") + 2)
            winding = int(value)
        elif parts[0] == "v":
            if winding is None:
                raise CurveFormatError("vertex before any component header", line_no)
            if len(parts) != 3:
                raise CurveFormatError("expected 'v <x> <y>'", line_no)
            x = _parse_fraction(parts[1], line_no, line.index(parts[1]) + 1)
            y = _parse_fraction(parts[2], line_no, line.rindex(parts[2]) + 1)
            vertices.append(Point(x, y))
        else:
            raise CurveFormatError(f"unrecognized directive {parts[0]!r}", line_no)
    flush(len(text.splitlines()))
    if not components:
        raise CurveFormatError("no components found", 1)
    diagram = CurveDiagram(tuple(components), source)
    report = validate(diagram)
    if not report.ok:
        raise InvariantViolation(report)
    return diagram


def _fmt(value: Fraction) -> str:
    return str(value)


def canonicalize(d: CurveDiagram) -> CurveDiagram:
    """Canonical component order and parameterization for emission."""
    gamma0 = anchor_at_seam(d.gamma0())
    closed = []
    for c in d.acyclic():
        k = _strip_offset(c)
        closed.append(c.translate(-k) if k else c)
    closed.sort(key=_canonical_cycle)
    return CurveDiagram((gamma0, *closed), d.source)


def emit_curve_text(d: CurveDiagram) -> str:
    canon = canonicalize(d)
    lines = []
    for c in canon.components:
        lines.append(f"component winding={c.winding}")
        for p in c.vertices:
            lines.append(f"v {_fmt(p.x)} {_fmt(p.y)}")
    return "\n".join(lines) + "\n"
