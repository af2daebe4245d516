"""Exact rational planar geometry on the cover of the marked cylinder.

Everything in this module works over `fractions.Fraction`; there is no
floating point anywhere, so incidence questions (does a segment hit a peg,
does a loop wind around a point) have exact answers.

The marked cylinder is the strip [-1/2, 1/2] x R with punctures ("pegs") on
the middle column; its planar cover is R^2 with pegs at (i, j + 1/2) for all
integers i, j.  The deck translation of the cylinder cover is (x, y) ->
(x + 1, y); quotienting further by (x, y) -> (x, y + 1) gives the marked
torus used when pairing with filling lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class CollinearOverlap(ValueError):
    """Two segments share a subsegment of positive length."""


class PointOnLoop(ValueError):
    """Winding number queried at a point lying on the loop itself."""


class UnboundedQuery(ValueError):
    """A lift enumeration was asked for over a degenerate or infinite box."""


Rat = Fraction

HALF = Fraction(1, 2)
ONE = Fraction(1)
ZERO = Fraction(0)


def rat(value) -> Fraction:
    """Coerce ints, Fractions, or strings like '-3/4' to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))

    def translate(self, dx, dy=ZERO) -> "Point":
        return Point(self.x + rat(dx), self.y + rat(dy))

    def rotate180(self) -> "Point":
        """Image under the half turn about the origin."""
        return Point(-self.x, -self.y)

    def mirror(self) -> "Point":
        """Image under the vertical reflection (x, y) -> (x, -y)."""
        return Point(self.x, -self.y)

    def __repr__(self):
        return f"({self.x}, {self.y})"


def pt(x, y) -> Point:
    return Point(rat(x), rat(y))


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("degenerate segment: endpoints coincide")

    def translate(self, dx, dy=ZERO) -> "Segment":
        return Segment(self.a.translate(dx, dy), self.b.translate(dx, dy))

    def bbox(self) -> "Box":
        return Box(
            min(self.a.x, self.b.x),
            max(self.a.x, self.b.x),
            min(self.a.y, self.b.y),
            max(self.a.y, self.b.y),
        )

    def point_at(self, t: Fraction) -> Point:
        return Point(
            self.a.x + t * (self.b.x - self.a.x),
            self.a.y + t * (self.b.y - self.a.y),
        )


@dataclass(frozen=True)
class Box:
    xmin: Fraction
    xmax: Fraction
    ymin: Fraction
    ymax: Fraction

    def __post_init__(self):
        for name in ("xmin", "xmax", "ymin", "ymax"):
            object.__setattr__(self, name, rat(getattr(self, name)))

    def is_degenerate(self) -> bool:
        return self.xmin > self.xmax or self.ymin > self.ymax

    def intersects(self, other: "Box") -> bool:
        return not (
            self.xmax < other.xmin
            or other.xmax < self.xmin
            or self.ymax < other.ymin
            or other.ymax < self.ymin
        )

    def pad(self, amount) -> "Box":
        a = rat(amount)
        return Box(self.xmin - a, self.xmax + a, self.ymin - a, self.ymax + a)

    @staticmethod
    def around(points: Iterable[Point]) -> "Box":
        pts = list(points)
        if not pts:
            raise ValueError("empty point set has no bounding box")
        return Box(
            min(p.x for p in pts),
            max(p.x for p in pts),
            min(p.y for p in pts),
            max(p.y for p in pts),
        )


def is_peg(p: Point) -> bool:
    """A point is a peg iff x is an integer and y is a half-integer."""
    return p.x.denominator == 1 and (p.y - HALF).denominator == 1


def pegs_in_box(box: Box) -> list[Point]:
    """All pegs (i, j + 1/2) inside the closed box."""
    import math

    out = []
    i0 = math.ceil(box.xmin)
    i1 = math.floor(box.xmax)
    j0 = math.ceil(box.ymin - HALF)
    j1 = math.floor(box.ymax - HALF)
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            out.append(Point(Fraction(i), Fraction(j) + HALF))
    return out


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Signed area of the parallelogram spanned by (a - o) and (b - o)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def on_segment(p: Point, s: Segment) -> bool:
    """Exact test for p lying on the closed segment s."""
    if cross(s.a, s.b, p) != 0:
        return False
    return (
        min(s.a.x, s.b.x) <= p.x <= max(s.a.x, s.b.x)
        and min(s.a.y, s.b.y) <= p.y <= max(s.a.y, s.b.y)
    )


def segment_hits_peg(s: Segment) -> Optional[Point]:
    """Return a peg lying on the closed segment s, if any."""
    for peg in pegs_in_box(s.bbox()):
        if on_segment(peg, s):
            return peg
    return None


def segment_intersection(s1: Segment, s2: Segment):
    """Intersect two segments.

    Returns None when disjoint, or (point, transversal) where transversal is
    True exactly when the interiors cross at a single point with distinct
    directions.  Collinear segments overlapping in more than a point raise
    CollinearOverlap: that is a degenerate configuration the caller must
    perturb away, never silently resolved.
    """
    d1x = s1.b.x - s1.a.x
    d1y = s1.b.y - s1.a.y
    d2x = s2.b.x - s2.a.x
    d2y = s2.b.y - s2.a.y
    denom = d1x * d2y - d1y * d2x
    if denom == 0:
        if cross(s1.a, s1.b, s2.a) != 0:
            return None  # parallel, different lines
        # Collinear: compare parameter intervals along s1's direction.
        def param(p: Point) -> Fraction:
            if d1x != 0:
                return (p.x - s1.a.x) / d1x
            return (p.y - s1.a.y) / d1y

        lo2, hi2 = sorted((param(s2.a), param(s2.b)))
        lo, hi = max(ZERO, lo2), min(ONE, hi2)
        if lo > hi:
            return None
        if lo < hi:
            raise CollinearOverlap(f"segments overlap along a line: {s1} vs {s2}")
        return s1.point_at(lo), False
    t = ((s2.a.x - s1.a.x) * d2y - (s2.a.y - s1.a.y) * d2x) / denom
    u = ((s2.a.x - s1.a.x) * d1y - (s2.a.y - s1.a.y) * d1x) / denom
    if not (ZERO <= t <= ONE and ZERO <= u <= ONE):
        return None
    point = s1.point_at(t)
    transversal = ZERO < t < ONE and ZERO < u < ONE
    return point, transversal


def _closed_edges(loop: Sequence[Point]):
    n = len(loop)
    for i in range(n):
        a, b = loop[i], loop[(i + 1) % n]
        if a != b:
            yield a, b


def winding_number(loop: Sequence[Point], p: Point) -> int:
    """Signed winding number of a closed PL loop around p.

    Counts signed crossings of the horizontal ray going right from p, with a
    half-open rule at vertices so every transversal crossing is counted once.
    Raises PointOnLoop when p lies on the loop itself.
    """
    wind = 0
    for a, b in _closed_edges(loop):
        if on_segment(p, Segment(a, b)):
            raise PointOnLoop(f"{p} lies on the loop")
        if a.y <= p.y < b.y:
            if cross(a, b, p) > 0:  # edge passes strictly right of p, going up
                wind += 1
        elif b.y <= p.y < a.y:
            if cross(a, b, p) < 0:
                wind -= 1
    return wind


def winding_near(loop: Sequence[Point], base: Point, direction: tuple) -> int:
    """Winding number at base + eps * direction for all small enough eps > 0.

    Used to probe the two sides of a point that lies on the loop (a marker
    next to a shared arc endpoint).  The winding is constant for eps below
    the first parameter at which the probe ray meets an edge not through
    base, and that threshold is computed exactly.
    """
    dx, dy = rat(direction[0]), rat(direction[1])
    if dx == 0 and dy == 0:
        raise ValueError("probe direction must be nonzero")
    eps_cap = ONE
    for a, b in _closed_edges(loop):
        # cross(a, b, base + eps*d) = cross(a, b, base) + eps * c1; solve for 0.
        c0 = cross(a, b, base)
        c1 = (b.x - a.x) * dy - (b.y - a.y) * dx
        if c1 == 0:
            continue
        eps_hit = -c0 / c1
        if eps_hit <= 0:
            continue
        hit = Point(base.x + eps_hit * dx, base.y + eps_hit * dy)
        if on_segment(hit, Segment(a, b)):
            eps_cap = min(eps_cap, eps_hit)
    probe = Point(base.x + (eps_cap / 2) * dx, base.y + (eps_cap / 2) * dy)
    return winding_number(loop, probe)


#: Lattice specifications accepted by relevant_lifts.
LATTICE_HORIZONTAL = "horizontal"
LATTICE_VERTICAL = "vertical"
LATTICE_BOTH = "both"


def relevant_lifts(template: Sequence[Segment], box: Box, lattice) -> list[list[Segment]]:
    """Translates of a segment template whose bounding boxes meet the box.

    `lattice` is one of LATTICE_HORIZONTAL (steps of (1,0)), LATTICE_VERTICAL
    (steps of (0,1)), LATTICE_BOTH, or a vector (0, s) giving a vertical line
    family spacing s.  The returned list is complete: no translate touching
    the box is missed, and it is finite for any non-degenerate box.
    """
    if box.is_degenerate():
        raise UnboundedQuery(f"degenerate query box {box}")
    if not template:
        return []
    tb = Box.around([s.a for s in template] + [s.b for s in template])

    def t_range(span_lo, span_hi, box_lo, box_hi, step) -> range:
        import math

        lo = (box_lo - span_hi) / step
        hi = (box_hi - span_lo) / step
        return range(math.ceil(lo), math.floor(hi) + 1)

    out = []
    if lattice == LATTICE_HORIZONTAL:
        shifts = [(Fraction(k), ZERO) for k in t_range(tb.xmin, tb.xmax, box.xmin, box.xmax, ONE)]
    elif lattice == LATTICE_VERTICAL:
        shifts = [(ZERO, Fraction(k)) for k in t_range(tb.ymin, tb.ymax, box.ymin, box.ymax, ONE)]
    elif lattice == LATTICE_BOTH:
        shifts = [
            (Fraction(kx), Fraction(ky))
            for kx in t_range(tb.xmin, tb.xmax, box.xmin, box.xmax, ONE)
            for ky in t_range(tb.ymin, tb.ymax, box.ymin, box.ymax, ONE)
        ]
    else:
        sx, sy = rat(lattice[0]), rat(lattice[1])
        if sx != 0:
            raise UnboundedQuery("line-family lattices must be vertical (0, s)")
        if sy == 0:
            raise UnboundedQuery("lattice spacing must be nonzero")
        shifts = [(ZERO, k * sy) for k in t_range(tb.ymin, tb.ymax, box.ymin, box.ymax, sy)]
    for dx, dy in shifts:
        shifted = Box(tb.xmin + dx, tb.xmax + dx, tb.ymin + dy, tb.ymax + dy)
        if shifted.intersects(box):
            out.append([s.translate(dx, dy) for s in template])
    return out
