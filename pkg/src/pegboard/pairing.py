"""Minimal-intersection pairing of a diagram with lines and peg-to-peg arcs.

Two kinds of pairing objects appear:

* a filling line family of slope p/q (lines with vertical spacing 1/q pushed
  off the seam by a canonical generic offset), whose minimal intersection
  count with the diagram is the Floer dimension of the p/q filling, and
* a peg-to-peg arc of slope p/q and height h, whose minimal count gives the
  graded dimension of the dual knot's knot homology at grading h.

Counts are taken in the quotient (torus for lines, cylinder for arcs) by
pairing one period of the wrapping component plus one copy of each closed
component against every relevant plane lift of the object.  Every removable
disk between the curve and the object is then cancelled: a pair of
intersection points adjacent along both the curve and one object lift gets
removed whenever the loop they bound has winding number zero around every
peg.  The removal order does not change the final count (tested property).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .geometry import (
    HALF,
    ONE,
    ZERO,
    Box,
    Point,
    Segment,
    pegs_in_box,
    rat,
    winding_number,
)
from .curves import Component, CurveDiagram

X_WRAP = Fraction(1)


class DegenerateIncidence(ValueError):
    """A non-transversal or collinear incidence that cannot be resolved."""


class ZeroSurgery(ValueError):
    """Graded operations refuse the 0-filling: its dual knot has no
    rationally defined grading, so only the flat count is reported."""


@dataclass(frozen=True)
class SlopeSpec:
    """A reduced slope p/q; q = 0 encodes the vertical slope 1/0."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("slope 0/0 is not a slope")
        if q < 0:
            p, q = -p, -q
        g = math.gcd(abs(p), q)
        if g > 1:
            p, q = p // g, q // g
        if q == 0:
            p = 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @staticmethod
    def parse(text: str) -> "SlopeSpec":
        s = text.strip()
        if "/" in s:
            a, b = s.split("/", 1)
            return SlopeSpec(int(a), int(b))
        return SlopeSpec(int(s), 1)

    @property
    def is_vertical(self) -> bool:
        return self.q == 0

    def value(self) -> Fraction:
        if self.is_vertical:
            raise ZeroDivisionError("vertical slope has no finite value")
        return Fraction(self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"


def valid_grading(p: int, h) -> bool:
    """Gradings for slope p/q live in Z + (p - 1)/2."""
    return (rat(h) - Fraction(p - 1, 2)).denominator == 1


@dataclass(frozen=True)
class ArcLift:
    """Peg-to-peg arc of slope p/q at grading height h (its midpoint height)."""

    slope: SlopeSpec
    height: Fraction

    def __post_init__(self):
        object.__setattr__(self, "height", rat(self.height))
        if not self.slope.is_vertical and self.slope.p == 0:
            raise ZeroSurgery("arcs of slope 0 are not defined")
        if not valid_grading(self.slope.p if not self.slope.is_vertical else 1, self.height):
            raise ValueError(
                f"height {self.height} is not in Z + ({self.slope.p}-1)/2 for slope {self.slope}"
            )

    def seg(self) -> Segment:
        if self.slope.is_vertical:
            return Segment(Point(ZERO, self.height - HALF), Point(ZERO, self.height + HALF))
        p, q = self.slope.p, self.slope.q
        a = Point(ZERO, self.height - Fraction(p, 2))
        b = Point(Fraction(q), self.height + Fraction(p, 2))
        return Segment(a, b)


@dataclass(frozen=True)
class IPoint:
    """One intersection of the curve with one plane lift of the object.

    pos is the parameter along the component (segment index plus fraction),
    lift the integer lift index, u the parameter along that lift.
    """

    comp: int
    pos: Fraction
    point: Point
    lift: int
    u: Fraction


@dataclass(frozen=True)
class CancelledBigon:
    x: IPoint
    y: IPoint
    loop: tuple[Point, ...]
    pegs_checked: tuple[Point, ...]


@dataclass(frozen=True)
class PairingReport:
    slope: SlopeSpec
    mode: str  # "surgery-line" or "arc"
    counts: dict
    total: int
    cancelled: tuple[CancelledBigon, ...]
    flags: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# Pairing objects


class _LineFamily:
    """The plane preimage of the slope-p/q filling curve, pushed off the seam.

    Slanted lines (p != 0, q >= 1) pass through (1/2 + delta, k/q); the
    vertical family is x = 1/2 + delta + k; the 0-filling uses horizontal
    lines on the half-integer rows, y = k + 1/2 + delta.
    """

    mode = "surgery-line"

    def __init__(self, slope: SlopeSpec, delta: Fraction):
        self.slope = slope
        self.delta = delta

    def anchor_dir(self, k: int) -> tuple[Point, tuple[Fraction, Fraction]]:
        p, q = self.slope.p, self.slope.q
        if self.slope.is_vertical:
            return Point(HALF + self.delta + k, ZERO), (ZERO, ONE)
        if p == 0:
            return Point(ZERO, Fraction(k) + HALF + self.delta), (ONE, ZERO)
        return Point(HALF + self.delta, Fraction(k, q)), (Fraction(q), Fraction(p))

    def lift_indices(self, box: Box) -> range:
        p, q = self.slope.p, self.slope.q
        if self.slope.is_vertical:
            lo = box.xmin - HALF - self.delta
            hi = box.xmax - HALF - self.delta
        elif p == 0:
            lo = box.ymin - HALF - self.delta
            hi = box.ymax - HALF - self.delta
        else:
            corners = [
                q * y - p * (x - HALF - self.delta)
                for x in (box.xmin, box.xmax)
                for y in (box.ymin, box.ymax)
            ]
            lo, hi = min(corners), max(corners)
        return range(math.ceil(lo), math.floor(hi) + 1)

    def translated_lift(self, k: int, w: int) -> int:
        """Index of the lift containing lift k shifted by (w, 0)."""
        if self.slope.is_vertical:
            return k + w
        if self.slope.p == 0:
            return k  # horizontal lines are translation invariant
        return k - self.slope.p * w

    def u_param(self, k: int, point: Point) -> Fraction:
        anchor, (dx, dy) = self.anchor_dir(k)
        if dx != 0:
            return (point.x - anchor.x) / dx
        return (point.y - anchor.y) / dy

    def contains(self, k: int, point: Point) -> bool:
        anchor, (dx, dy) = self.anchor_dir(k)
        return (point.x - anchor.x) * dy == (point.y - anchor.y) * dx

    def grading_key(self, ip: IPoint):
        if self.slope.p == 0 and not self.slope.is_vertical:
            return ip.lift
        return ip.lift % abs(self.slope.p) if self.slope.p != 0 else ip.lift


class _ArcObject:
    """An arc and its horizontal translates; lift k is the base shifted by (k, 0)."""

    mode = "arc"

    def __init__(self, arc: ArcLift):
        self.arc = arc
        self.base = arc.seg()
        self.slope = arc.slope

    def anchor_dir(self, k: int):
        a = self.base.a.translate(k)
        b = self.base.b.translate(k)
        return a, (b.x - a.x, b.y - a.y)

    def lift_indices(self, box: Box) -> range:
        lo = box.xmin - max(self.base.a.x, self.base.b.x)
        hi = box.xmax - min(self.base.a.x, self.base.b.x)
        return range(math.ceil(lo), math.floor(hi) + 1)

    def translated_lift(self, k: int, w: int) -> int:
        return k + w

    def u_param(self, k: int, point: Point) -> Fraction:
        anchor, (dx, dy) = self.anchor_dir(k)
        if dx != 0:
            return (point.x - anchor.x) / dx
        return (point.y - anchor.y) / dy

    def contains(self, k: int, point: Point) -> bool:
        anchor, (dx, dy) = self.anchor_dir(k)
        if (point.x - anchor.x) * dy != (point.y - anchor.y) * dx:
            return False
        u = self.u_param(k, point)
        return ZERO <= u <= ONE

    def grading_key(self, ip: IPoint):
        return self.arc.height


PairObject = Union[_LineFamily, _ArcObject]


# ---------------------------------------------------------------------------
# Raw intersections


def _component_cycle(c: Component) -> tuple[list[Point], int]:
    """Vertex path (one traversal) and the cycle length in segments."""
    if c.winding == 1:
        return list(c.vertices), len(c.vertices) - 1
    return list(c.vertices) + [c.vertices[0]], len(c.vertices)


def _neighbor_points(c: Component, verts: Sequence[Point], i: int) -> tuple[Point, Point]:
    """Cyclic neighbors of vertex i (i < cycle length), lifted to the plane."""
    n = len(verts) - 1
    nxt = verts[i + 1]
    if i > 0:
        prev = verts[i - 1]
    elif c.winding == 1:
        prev = verts[n - 1].translate(-1)
    else:
        prev = verts[n - 1]
    return prev, nxt


def _segment_lift_intersections(obj: PairObject, k: int, c: Component, ci: int) -> list[IPoint]:
    """All counted intersections of component ci with object lift k."""
    verts, n = _component_cycle(c)
    anchor, (dx, dy) = obj.anchor_dir(k)
    out: list[IPoint] = []

    def side(p: Point) -> Fraction:
        return (p.x - anchor.x) * dy - (p.y - anchor.y) * dx

    for i in range(n):
        a, b = verts[i], verts[i + 1]
        sa, sb = side(a), side(b)
        if sa == 0 and sb == 0:
            raise DegenerateIncidence(
                f"curve segment {a}->{b} is collinear with object lift {k}"
            )
        if sa == 0:
            # Vertex exactly on the object's line: transversal iff the cyclic
            # neighbors straddle it; a same-side touch is removable, count 0.
            prev, _ = _neighbor_points(c, verts, i)
            sp = side(prev)
            if sp == 0:
                raise DegenerateIncidence(f"two consecutive vertices on object lift {k}")
            if (sp < 0) != (sb < 0):
                if obj.contains(k, a):
                    out.append(IPoint(ci, Fraction(i), a, k, obj.u_param(k, a)))
            continue
        if sb == 0:
            continue  # handled as the next segment's vertex case (or dropped at the period end)
        if (sa < 0) == (sb < 0):
            continue
        t = sa / (sa - sb)
        point = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
        if obj.contains(k, point):
            out.append(IPoint(ci, Fraction(i) + t, point, k, obj.u_param(k, point)))
    return out


def raw_intersections(d: CurveDiagram, obj: PairObject) -> list[IPoint]:
    """All transversal intersections, one record per quotient point."""
    points: list[IPoint] = []
    for ci, c in enumerate(d.components):
        cbox = c.bbox().pad(Fraction(1, 100))
        for k in obj.lift_indices(cbox):
            points.extend(_segment_lift_intersections(obj, k, c, ci))
    points.sort(key=lambda ip: (ip.comp, ip.pos, ip.lift))
    return points


# ---------------------------------------------------------------------------
# Generic offset selection

def _canonical_delta(d: CurveDiagram) -> Fraction:
    dens = [coord.denominator for c in d.components for p in c.vertices for coord in (p.x, p.y)]
    lcm = 1
    for v in dens:
        lcm = lcm * v // math.gcd(lcm, v)
    n_vertices = sum(len(c.vertices) for c in d.components)
    return Fraction(1, 2 * lcm * max(n_vertices, 1))


def _family_is_clean(d: CurveDiagram, fam: _LineFamily) -> bool:
    """No peg and no (translated) curve vertex on any relevant line."""
    box = d.bbox().pad(1)
    box = Box(box.xmin - 1, box.xmax + 1, box.ymin - abs(fam.slope.p) - 1, box.ymax + abs(fam.slope.p) + 1)
    for k in fam.lift_indices(box):
        anchor, (dx, dy) = fam.anchor_dir(k)

        def on_line(p: Point) -> bool:
            return (p.x - anchor.x) * dy == (p.y - anchor.y) * dx

        for c in d.components:
            for v in c.vertices:
                if on_line(v) or on_line(v.translate(1)) or on_line(v.translate(-1)):
                    return False
        if dx == 0:  # vertical line: pegs have integer x
            if (anchor.x).denominator == 1:
                return False
            continue
        i0 = math.floor(box.xmin)
        i1 = math.ceil(box.xmax)
        for i in range(i0, i1 + 1):
            y = anchor.y + (Fraction(i) - anchor.x) * dy / dx
            if (y - HALF).denominator == 1:
                return False
    return True


def line_family(d: CurveDiagram, slope: SlopeSpec) -> _LineFamily:
    """The filling family at the canonical offset, halved until incidence-free."""
    delta = _canonical_delta(d)
    for _ in range(80):
        fam = _LineFamily(slope, delta)
        if _family_is_clean(d, fam):
            return fam
        delta = delta / 2
    raise DegenerateIncidence(f"no clean offset found for slope {slope}")


# ---------------------------------------------------------------------------
# Bigon cancellation


def _forward_subarc(c: Component, x: IPoint, y: IPoint) -> tuple[list[Point], int]:
    """Plane polyline from x forward along the component to y.

    Returns (points, w) where w = 1 when a wrapping component's period end
    was passed: the endpoint then sits on the (1, 0)-translate of y's lift.
    Closed components wrap around their cycle with no translation (w = 0).
    """
    verts, n = _component_cycle(c)
    wrap_needed = y.pos <= x.pos
    pts = [x.point]
    idx = math.floor(x.pos) + 1
    wrapped = 0
    while True:
        if idx >= n:
            idx -= n
            wrapped += 1
        pos_here = Fraction(idx) + wrapped * n
        target = y.pos + (n if wrap_needed else 0)
        if pos_here >= target:
            break
        if wrapped > 1:
            raise RuntimeError("subarc longer than one traversal")
        shift = X_WRAP * wrapped if c.winding == 1 else ZERO
        pts.append(verts[idx].translate(shift))
        idx += 1
    w = 1 if (wrap_needed and c.winding == 1) else 0
    pts.append(y.point.translate(X_WRAP) if w else y.point)
    return pts, w


def _lifted_on_lift(obj: PairObject, target_lift: int, z: IPoint) -> Optional[Point]:
    """The plane point of quotient intersection z on the given object lift."""
    if isinstance(obj, _ArcObject):
        m = target_lift - z.lift
        return z.point.translate(m)
    fam: _LineFamily = obj
    if fam.slope.is_vertical:
        return z.point.translate(target_lift - z.lift)
    if fam.slope.p == 0:
        return None if z.lift != target_lift else z.point  # plus all translates; handled separately
    diff = z.lift - target_lift
    if diff % fam.slope.p != 0:
        return None
    return z.point.translate(diff // fam.slope.p)


def _piece_blocked(obj: PairObject, lift: int, a: Point, b: Point, pts: Sequence[IPoint],
                   skip: tuple[IPoint, IPoint]) -> bool:
    """Does any other intersection lie strictly between a and b on the lift?"""
    if a == b:
        return False
    horiz = isinstance(obj, _LineFamily) and obj.slope.p == 0 and not obj.slope.is_vertical

    def between(p: Point) -> bool:
        if min(a.x, b.x) < p.x < max(a.x, b.x):
            return True
        if a.x == b.x and min(a.y, b.y) < p.y < max(a.y, b.y):
            return True
        return False

    for z in pts:
        if z in skip:
            continue
        if horiz:
            if z.lift != lift:
                continue
            # Every horizontal translate of z lies on this same line.
            lo = math.ceil(min(a.x, b.x) - z.point.x)
            hi = math.floor(max(a.x, b.x) - z.point.x)
            for m in range(lo, hi + 1):
                if between(z.point.translate(m)):
                    return True
            continue
        zp = _lifted_on_lift(obj, lift, z)
        if zp is not None and between(zp):
            return True
    return False


def _bigon_loop(c: Component, obj: PairObject, x: IPoint, y: IPoint,
                pts: Sequence[IPoint]) -> Optional[tuple[tuple[Point, ...], tuple[Point, ...]]]:
    """Empty-bigon test for the ordered adjacent pair (x, y).

    Returns (loop, pegs_checked) when the forward subarc from x to y closes
    up with a piece of x's object lift into a loop of winding zero around
    every peg; None otherwise.
    """
    subarc, w = _forward_subarc(c, x, y)
    target = obj.translated_lift(y.lift, w)
    if isinstance(obj, _LineFamily) and obj.slope.p == 0 and not obj.slope.is_vertical:
        same = y.lift == x.lift
    else:
        same = target == x.lift
    if not same:
        return None
    end = subarc[-1]
    if _piece_blocked(obj, x.lift, end, x.point, pts, (x, y)):
        return None
    loop = list(subarc)
    if loop[-1] == loop[0]:
        loop = loop[:-1]
    if len(loop) < 2:
        return None
    box = Box.around(loop)
    pegs = pegs_in_box(box)
    for peg in pegs:
        if winding_number(loop, peg) != 0:
            return None
    return tuple(loop), tuple(pegs)


def _candidates(d: CurveDiagram, obj: PairObject, pts: list[IPoint]) -> list[tuple[IPoint, IPoint, tuple, tuple]]:
    out = []
    by_comp: dict[int, list[IPoint]] = {}
    for p in pts:
        by_comp.setdefault(p.comp, []).append(p)
    for ci, plist in by_comp.items():
        if len(plist) < 2:
            continue
        plist = sorted(plist, key=lambda ip: ip.pos)
        c = d.components[ci]
        k = len(plist)
        for i in range(k):
            x, y = plist[i], plist[(i + 1) % k]
            if x is y:
                continue
            found = _bigon_loop(c, obj, x, y, pts)
            if found is not None:
                out.append((x, y, found[0], found[1]))
    return out


def cancel_bigons(pts: list[IPoint], d: CurveDiagram, obj: PairObject,
                  order_seed: Optional[int] = None) -> tuple[list[IPoint], list[CancelledBigon]]:
    """Remove empty bigons until none remain; order is seed-controlled.

    The final count is independent of the removal order; the audit records
    each removed pair with its loop and the pegs certified to have winding
    zero.
    """
    rng = random.Random(order_seed) if order_seed is not None else None
    live = list(pts)
    audit: list[CancelledBigon] = []
    while True:
        cands = _candidates(d, obj, live)
        if not cands:
            return live, audit
        x, y, loop, pegs = cands[0] if rng is None else cands[rng.randrange(len(cands))]
        live = [p for p in live if p is not x and p is not y]
        audit.append(CancelledBigon(x, y, loop, pegs))


# ---------------------------------------------------------------------------
# Public pairing operations


def surgery_report(d: CurveDiagram, slope: SlopeSpec, order_seed: Optional[int] = None) -> PairingReport:
    """Minimal intersection count with the slope-p/q filling family."""
    fam = line_family(d, slope)
    pts = raw_intersections(d, fam)
    live, audit = cancel_bigons(pts, d, fam, order_seed)
    counts: dict = {}
    for ip in live:
        key = fam.grading_key(ip)
        counts[key] = counts.get(key, 0) + 1
    flags = ()
    if slope.p == 0 and not slope.is_vertical:
        flags = ("0-filling: dual knot not rationally null-homologous; grading ops refuse this slope",)
    return PairingReport(slope, "surgery-line", counts, len(live), tuple(audit), flags)


def surgery_dim(d: CurveDiagram, slope: SlopeSpec) -> int:
    return surgery_report(d, slope).total


def arc_report(d: CurveDiagram, arc: ArcLift, order_seed: Optional[int] = None) -> PairingReport:
    obj = _ArcObject(arc)
    pts = raw_intersections(d, obj)
    live, audit = cancel_bigons(pts, d, obj, order_seed)
    counts = {arc.height: len(live)} if live else {}
    return PairingReport(arc.slope, "arc", counts, len(live), tuple(audit))


def arc_points(d: CurveDiagram, arc: ArcLift) -> list[IPoint]:
    """Minimal-position intersection points with one arc (post cancellation)."""
    obj = _ArcObject(arc)
    live, _ = cancel_bigons(raw_intersections(d, obj), d, obj)
    return live


def grading_range(d: CurveDiagram, slope: SlopeSpec) -> list[Fraction]:
    """All gradings whose arc could meet the diagram, by bounding boxes."""
    if slope.p == 0 and not slope.is_vertical:
        raise ZeroSurgery("0-filling has no dual-knot gradings")
    box = d.bbox()
    p_eff = 1 if slope.is_vertical else slope.p
    off = Fraction(p_eff - 1, 2)
    halfspan = Fraction(abs(p_eff), 2)
    lo = math.floor(box.ymin - halfspan - off) - 1
    hi = math.ceil(box.ymax + halfspan - off) + 1
    return [Fraction(n) + off for n in range(lo, hi + 1)]


def dual_hfk_dims(d: CurveDiagram, slope: SlopeSpec) -> dict:
    """Graded dual-knot dimensions: minimal arc counts, nonzero entries only.

    The total over all gradings dominates the filling dimension (the first
    page of a spectral sequence cannot be smaller than its target).
    """
    if slope.p == 0 and not slope.is_vertical:
        raise ZeroSurgery("0-filling has no dual-knot gradings")
    dims: dict = {}
    for h in grading_range(d, slope):
        n = len(arc_points(d, ArcLift(slope, h)))
        if n:
            dims[h] = n
    return dims


def genus_of(d: CurveDiagram) -> int:
    """Top height met by the vertical arcs (0 for the horizontal line)."""
    dims = dual_hfk_dims(d, SlopeSpec(1, 0))
    if not dims:
        return 0
    top = max(dims)
    return int(top) if top > 0 else 0
