"""Exact rational 2D geometry: points, segments, cardinal-direction cones.

Every predicate here is decided with `fractions.Fraction`; no floats are
allowed anywhere in this module.  Denominators compound multiplicatively
along planning chains, so a single rounded comparison would corrupt the
segment bookkeeping built on top of these primitives.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

Rat = Fraction


def rat(value, denom=None) -> Rat:
    """Build an exact rational from ints, strings ("n" or "n/d"), or Fractions."""
    if denom is not None:
        return Fraction(value, denom)
    return Fraction(value)


def fmt_rat(x: Rat) -> str:
    """Canonical text form: "n" for integers, "n/d" otherwise (d > 0)."""
    return str(Fraction(x))


class Direction(Enum):
    LEFT = (-1, 0)
    RIGHT = (1, 0)
    UP = (0, 1)
    DOWN = (0, -1)

    @property
    def vector(self) -> "Point":
        return Point(Fraction(self.value[0]), Fraction(self.value[1]))


@dataclass(frozen=True)
class Point:
    x: Rat
    y: Rat

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, k: Rat) -> "Point":
        return Point(self.x * k, self.y * k)

    def cross(self, other: "Point") -> Rat:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Point") -> Rat:
        return self.x * other.x + self.y * other.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __str__(self) -> str:
        return f"({fmt_rat(self.x)},{fmt_rat(self.y)})"


def pt(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


def lex_key(p: Point):
    return (p.x, p.y)


@dataclass(frozen=True)
class Segment:
    """Closed segment with significant endpoint order; a == b is a point."""

    a: Point
    b: Point

    @property
    def direction(self) -> Point:
        return self.b - self.a

    def is_degenerate(self) -> bool:
        return self.a == self.b

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)

    def at(self, t: Rat) -> Point:
        return self.a + self.direction.scale(t)

    def midpoint(self) -> Point:
        return self.at(Fraction(1, 2))

    def length_sq(self) -> Rat:
        d = self.direction
        return d.dot(d)

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"


def seg(ax, ay, bx, by) -> Segment:
    return Segment(pt(ax, ay), pt(bx, by))


@dataclass(frozen=True)
class ActionCone:
    """Convex cone generated by a subset of the four cardinal directions.

    Because the generators are axis-aligned, the cone is always a product
    of one interval per axis; membership reduces to four sign tests.
    """

    directions: frozenset

    @classmethod
    def of(cls, *dirs: Direction) -> "ActionCone":
        return cls(frozenset(dirs))

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "ActionCone":
        return cls(frozenset(Direction[n] for n in names))

    def is_empty(self) -> bool:
        return not self.directions

    def axis_only(self) -> bool:
        h = {Direction.LEFT, Direction.RIGHT}
        v = {Direction.UP, Direction.DOWN}
        return self.directions <= h or self.directions <= v

    def axis_bounds(self):
        """((lo_x, hi_x), (lo_y, hi_y)) with None standing for +-infinity."""
        lo_x = None if Direction.LEFT in self.directions else Fraction(0)
        hi_x = None if Direction.RIGHT in self.directions else Fraction(0)
        lo_y = None if Direction.DOWN in self.directions else Fraction(0)
        hi_y = None if Direction.UP in self.directions else Fraction(0)
        return (lo_x, hi_x), (lo_y, hi_y)

    def names(self):
        order = [Direction.LEFT, Direction.RIGHT, Direction.UP, Direction.DOWN]
        return [d.name for d in order if d in self.directions]

    def __str__(self) -> str:
        return ",".join(self.names()) if self.directions else "none"


def cone_contains(cone: ActionCone, v: Point) -> bool:
    """True iff v is a nonnegative combination of the cone's generators.

    The zero vector is a member of every cone, the empty one included
    (it is the empty combination).
    """
    (lo_x, hi_x), (lo_y, hi_y) = cone.axis_bounds()
    if lo_x is not None and v.x < lo_x:
        return False
    if hi_x is not None and v.x > hi_x:
        return False
    if lo_y is not None and v.y < lo_y:
        return False
    if hi_y is not None and v.y > hi_y:
        return False
    return True


def collinear(p: Point, q: Point, r: Point) -> bool:
    return (q - p).cross(r - p) == 0


def point_on_segment(p: Point, s: Segment) -> bool:
    """Exact closed-segment membership: zero cross product, parameter in [0,1]."""
    if s.is_degenerate():
        return p == s.a
    d = s.direction
    if (p - s.a).cross(d) != 0:
        return False
    t = (p - s.a).dot(d)
    return 0 <= t <= d.dot(d)


def segment_contains_segment(outer: Segment, inner: Segment) -> bool:
    return point_on_segment(inner.a, outer) and point_on_segment(inner.b, outer)


def _param_on_line(origin: Point, d: Point, p: Point) -> Rat:
    # p assumed on the line origin + t*d; d nonzero.
    if d.x != 0:
        return (p.x - origin.x) / d.x
    return (p.y - origin.y) / d.y


def segments_collinear_overlap(s1: Segment, s2: Segment) -> Optional[Segment]:
    """Convex hull of the union when s1, s2 share a line and touch; else None.

    The result is oriented along s1 (along s2 if s1 is a point).
    """
    base = s1 if not s1.is_degenerate() else s2
    if base.is_degenerate():
        return Segment(s1.a, s1.a) if s1.a == s2.a else None
    d = base.direction
    for p in (s1.a, s1.b, s2.a, s2.b):
        if (p - base.a).cross(d) != 0:
            return None
    t1 = sorted([_param_on_line(base.a, d, s1.a), _param_on_line(base.a, d, s1.b)])
    t2 = sorted([_param_on_line(base.a, d, s2.a), _param_on_line(base.a, d, s2.b)])
    if t1[1] < t2[0] or t2[1] < t1[0]:
        return None
    lo, hi = min(t1[0], t2[0]), max(t1[1], t2[1])
    return Segment(base.at(lo), base.at(hi))


def subtract_segments(s: Segment, explored: list) -> list:
    """Maximal closed pieces of s left after removing the explored segments.

    Members of `explored` not collinear with s are ignored.  Pieces are the
    closures of the connected components of the set difference, ordered from
    s.a toward s.b; an uncovered isolated point survives as a degenerate
    piece.
    """
    if s.is_degenerate():
        for e in explored:
            if point_on_segment(s.a, e):
                return []
        return [s]
    d = s.direction
    intervals = []
    for e in explored:
        if (e.a - s.a).cross(d) != 0 or (e.b - s.a).cross(d) != 0:
            continue
        lo = _param_on_line(s.a, d, e.a)
        hi = _param_on_line(s.a, d, e.b)
        if lo > hi:
            lo, hi = hi, lo
        lo = max(lo, Fraction(0))
        hi = min(hi, Fraction(1))
        if lo > hi:
            continue
        intervals.append((lo, hi))
    if not intervals:
        return [s]
    intervals.sort()
    # Merge overlapping/abutting removed intervals.
    merged = [intervals[0]]
    for lo, hi in intervals[1:]:
        mlo, mhi = merged[-1]
        if lo <= mhi:
            merged[-1] = (mlo, max(mhi, hi))
        else:
            merged.append((lo, hi))
    # Closures of the connected components of [0,1] minus the removals.
    # Abutting removals were merged above, so every gap has positive length;
    # an interior removed point splits a stretch into two closed pieces that
    # share it.
    pieces = []
    cursor = Fraction(0)
    for lo, hi in merged:
        if lo > cursor:
            pieces.append((cursor, lo))
        cursor = max(cursor, hi)
        if cursor >= 1:
            break
    if cursor < 1:
        pieces.append((cursor, Fraction(1)))
    return [Segment(s.at(lo), s.at(hi)) for lo, hi in pieces]


class IntervalSet:
    """Sorted disjoint closed intervals with carve-then-claim bookkeeping.

    Same semantics as subtract_segments, one dimension down: carving
    returns the closures of the connected components left after removing
    the stored intervals, and claiming merges overlapping or abutting
    entries so gaps always have positive length.
    """

    def __init__(self):
        self.items: list = []

    def carve(self, lo, hi) -> list:
        if lo > hi:
            lo, hi = hi, lo
        if lo == hi:
            for l, h in self.items:
                if l <= lo <= h:
                    return []
            return [(lo, hi)]
        idx = bisect.bisect_left(self.items, (lo, lo)) - 1
        if idx < 0:
            idx = 0
        pieces = []
        cursor = lo
        for l, h in self.items[idx:]:
            if h < lo:
                continue
            if l > hi:
                break
            if l > cursor:
                pieces.append((cursor, min(l, hi)))
            cursor = max(cursor, h)
            if cursor >= hi:
                break
        if cursor < hi:
            pieces.append((cursor, hi))
        return pieces

    def claim(self, lo, hi):
        if lo > hi:
            lo, hi = hi, lo
        i = bisect.bisect_left(self.items, (lo, lo))
        if i > 0 and self.items[i - 1][1] >= lo:
            i -= 1
        j = i
        while j < len(self.items) and self.items[j][0] <= hi:
            lo = min(lo, self.items[j][0])
            hi = max(hi, self.items[j][1])
            j += 1
        self.items[i:j] = [(lo, hi)]


def segment_intersection(s1: Segment, s2: Segment):
    """Exact intersection of closed segments: None, a Point, or a Segment."""
    d1, d2 = s1.direction, s2.direction
    if s1.is_degenerate():
        return s1.a if point_on_segment(s1.a, s2) else None
    if s2.is_degenerate():
        return s2.a if point_on_segment(s2.a, s1) else None
    denom = d1.cross(d2)
    if denom == 0:
        if (s2.a - s1.a).cross(d1) != 0:
            return None
        t_lo = _param_on_line(s1.a, d1, s2.a)
        t_hi = _param_on_line(s1.a, d1, s2.b)
        if t_lo > t_hi:
            t_lo, t_hi = t_hi, t_lo
        lo, hi = max(t_lo, Fraction(0)), min(t_hi, Fraction(1))
        if lo > hi:
            return None
        if lo == hi:
            return s1.at(lo)
        return Segment(s1.at(lo), s1.at(hi))
    w = s2.a - s1.a
    t = w.cross(d2) / denom
    u = w.cross(d1) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        return s1.at(t)
    return None


def _interval_intersect(lo1, hi1, lo2, hi2):
    lo = lo1 if lo2 is None else (lo2 if lo1 is None else max(lo1, lo2))
    hi = hi1 if hi2 is None else (hi2 if hi1 is None else min(hi1, hi2))
    return lo, hi


def _axis_param_interval(lo, hi, base: Rat, step: Rat):
    """Solve lo <= base + step*t <= hi for t; None bounds mean unbounded."""
    if step == 0:
        if lo is not None and base < lo:
            return None
        if hi is not None and base > hi:
            return None
        return (None, None)
    t_from_lo = None if lo is None else (lo - base) / step
    t_from_hi = None if hi is None else (hi - base) / step
    if step > 0:
        return (t_from_lo, t_from_hi)
    return (t_from_hi, t_from_lo)


def reach_interval_on_segment(cone: ActionCone, origin: Point, target: Segment):
    """Parameter interval [t0,t1] of target reachable from origin in one move.

    Returns None when empty.  Only the cone constraint is applied; callers
    guarantee both endpoints stay inside the moving region (convexity).
    """
    (lo_x, hi_x), (lo_y, hi_y) = cone.axis_bounds()
    d = target.direction
    ix = _axis_param_interval(lo_x, hi_x, target.a.x - origin.x, d.x)
    if ix is None:
        return None
    iy = _axis_param_interval(lo_y, hi_y, target.a.y - origin.y, d.y)
    if iy is None:
        return None
    lo, hi = _interval_intersect(*ix, *iy)
    lo = Fraction(0) if lo is None else max(lo, Fraction(0))
    hi = Fraction(1) if hi is None else min(hi, Fraction(1))
    if lo > hi:
        return None
    return (lo, hi)


def reach_within_region(region, origin: Point, target: Segment) -> Optional[Segment]:
    """One-move-reachable subsegment of target from origin inside region."""
    iv = reach_interval_on_segment(region.actions, origin, target)
    if iv is None:
        return None
    return Segment(target.at(iv[0]), target.at(iv[1]))


def clip_segment_to_region(segment: Segment, region) -> Optional[Segment]:
    """Part of the segment inside the closed convex region, if any."""
    lo, hi = Fraction(0), Fraction(1)
    d = segment.direction
    vs = region.vertices
    for i in range(len(vs)):
        a, b = vs[i], vs[(i + 1) % len(vs)]
        edge_d = b - a
        c0 = edge_d.cross(segment.a - a)
        c1 = edge_d.cross(d)
        # Inside means c0 + t*c1 >= 0.
        if c1 == 0:
            if c0 < 0:
                return None
            continue
        bound = -c0 / c1
        if c1 > 0:
            lo = max(lo, bound)
        else:
            hi = min(hi, bound)
        if lo > hi:
            return None
    return Segment(segment.at(lo), segment.at(hi))


def _coreach_param_interval(cone: ActionCone, source: Segment, target: Segment):
    """u-interval of source points with a one-move successor on target.

    Feasibility of  target(t) - source(u) in cone,  (t,u) in [0,1]^2, is a
    small linear program; t is eliminated Fourier-Motzkin style, leaving an
    exact interval in u.
    """
    (lo_x, hi_x), (lo_y, hi_y) = cone.axis_bounds()
    sd, td = source.direction, target.direction
    # Constraints: lo <= (ta + t*td) - (sa + u*sd) <= hi, per axis.
    # Encode as t-bounds affine in u, plus pure-u constraints.
    lowers = []  # t >= c0 + c1*u
    uppers = []  # t <= c0 + c1*u
    u_lo, u_hi = Fraction(0), Fraction(1)

    def add(base, tcoef, ucoef, lo, hi):
        nonlocal u_lo, u_hi
        # lo <= base + tcoef*t - ucoef*u <= hi
        for bound, is_lower in ((lo, True), (hi, False)):
            if bound is None:
                continue
            if tcoef == 0:
                # lo <= base - ucoef*u  (resp. <=)
                if ucoef == 0:
                    if is_lower and base < bound:
                        u_lo, u_hi = Fraction(1), Fraction(0)
                    if not is_lower and base > bound:
                        u_lo, u_hi = Fraction(1), Fraction(0)
                    continue
                # is_lower: base - ucoef*u >= bound  ->  ucoef*u <= base-bound
                rhs = (base - bound) if is_lower else (bound - base)
                coef = ucoef if is_lower else -ucoef
                # coef*u <= rhs
                if coef > 0:
                    u_hi = min(u_hi, rhs / coef)
                elif coef < 0:
                    u_lo = max(u_lo, rhs / coef)
                elif rhs < 0:
                    u_lo, u_hi = Fraction(1), Fraction(0)
                continue
            c0 = (bound - base) / tcoef
            c1 = ucoef / tcoef
            if (tcoef > 0) == is_lower:
                lowers.append((c0, c1))
            else:
                uppers.append((c0, c1))

    add(target.a.x - source.a.x, td.x, sd.x, lo_x, hi_x)
    add(target.a.y - source.a.y, td.y, sd.y, lo_y, hi_y)
    lowers.append((Fraction(0), Fraction(0)))
    uppers.append((Fraction(1), Fraction(0)))
    for lc0, lc1 in lowers:
        for uc0, uc1 in uppers:
            # lc0 + lc1*u <= uc0 + uc1*u
            coef = lc1 - uc1
            rhs = uc0 - lc0
            if coef > 0:
                u_hi = min(u_hi, rhs / coef)
            elif coef < 0:
                u_lo = max(u_lo, rhs / coef)
            elif rhs < 0:
                return None
    if u_lo > u_hi:
        return None
    return (u_lo, u_hi)


def coreach_within_region(region, source_edge: Segment, target: Segment) -> list:
    """Subsegments of source_edge with a one-move path into target (in region).

    Convexity makes the answer a single maximal subsegment (possibly a
    point); the list is empty when no point of source_edge can move into
    target.  Orientation follows source_edge.
    """
    iv = _coreach_param_interval(region.actions, source_edge, target)
    if iv is None:
        return []
    return [Segment(source_edge.at(iv[0]), source_edge.at(iv[1]))]


def image_within_region(region, source: Segment, target_edge: Segment) -> list:
    """Forward one-move image of source onto target_edge inside region."""
    iv = _coreach_param_interval(_reverse_cone(region.actions), target_edge, source)
    if iv is None:
        return []
    return [Segment(target_edge.at(iv[0]), target_edge.at(iv[1]))]


_OPPOSITE = {
    Direction.LEFT: Direction.RIGHT,
    Direction.RIGHT: Direction.LEFT,
    Direction.UP: Direction.DOWN,
    Direction.DOWN: Direction.UP,
}


def _reverse_cone(cone: ActionCone) -> ActionCone:
    return ActionCone(frozenset(_OPPOSITE[d] for d in cone.directions))


def denominator_profile(points: Iterable[Point]):
    """(D, max_bits): lcm of coordinate denominators and peak bit length."""
    d = 1
    bits = 0
    for p in points:
        for c in (p.x, p.y):
            d = math.lcm(d, c.denominator)
            bits = max(bits, abs(c.numerator).bit_length(), c.denominator.bit_length())
    return d, bits
