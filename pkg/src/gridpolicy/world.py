"""Gridworld model: convex polygonal regions with action cones on [0,side]^2.

Validation is exact: convexity via cross products, coverage via area sums,
pairwise overlaps via polygon clipping, all in rational arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .geometry import (
    ActionCone,
    Direction,
    Point,
    Rat,
    Segment,
    fmt_rat,
    pt,
)


class WorldError(ValueError):
    pass


class ParseError(WorldError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Region:
    id: int
    vertices: tuple
    actions: ActionCone

    def edges(self) -> List[Segment]:
        vs = self.vertices
        return [Segment(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def area2(self) -> Rat:
        """Twice the signed area (positive for counterclockwise)."""
        vs = self.vertices
        total = Fraction(0)
        for i in range(len(vs)):
            p, q = vs[i], vs[(i + 1) % len(vs)]
            total += p.cross(q)
        return total

    def contains(self, p: Point) -> bool:
        """Closed membership test; requires a convex CCW vertex list."""
        vs = self.vertices
        for i in range(len(vs)):
            a, b = vs[i], vs[(i + 1) % len(vs)]
            if (b - a).cross(p - a) < 0:
                return False
        return True

    def bbox(self):
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def centroid(self) -> Point:
        n = len(self.vertices)
        sx = sum((v.x for v in self.vertices), Fraction(0))
        sy = sum((v.y for v in self.vertices), Fraction(0))
        return Point(sx / n, sy / n)


def region(rid: int, vertices, actions: ActionCone) -> Region:
    return Region(rid, tuple(vertices), actions)


@dataclass
class Gridworld:
    side: Rat
    regions: List[Region]
    initial: Point
    target_id: int

    @property
    def common_denominator(self) -> int:
        """lcm of all region-vertex coordinate denominators (the tiling's D)."""
        d = 1
        for r in self.regions:
            for v in r.vertices:
                d = math.lcm(d, v.x.denominator, v.y.denominator)
        return d

    @property
    def target(self) -> Region:
        return self.regions[self.target_id]

    def region_by_id(self, rid: int) -> Region:
        return self.regions[rid]

    def regions_containing(self, p: Point) -> List[Region]:
        out = []
        for r in self.regions:
            x0, y0, x1, y1 = r.bbox()
            if x0 <= p.x <= x1 and y0 <= p.y <= y1 and r.contains(p):
                out.append(r)
        return out


def _clip_polygon(poly: list, a: Point, b: Point) -> list:
    """Sutherland-Hodgman step: keep the part of poly left of a->b."""
    d = b - a
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        side_p = d.cross(p - a)
        side_q = d.cross(q - a)
        if side_p >= 0:
            out.append(p)
        if (side_p > 0 and side_q < 0) or (side_p < 0 and side_q > 0):
            t = side_p / (side_p - side_q)
            out.append(p + (q - p).scale(t))
    return out


def convex_intersection_area2(r1: Region, r2: Region) -> Rat:
    poly = list(r1.vertices)
    for e in r2.edges():
        poly = _clip_polygon(poly, e.a, e.b)
        if len(poly) < 3:
            return Fraction(0)
    total = Fraction(0)
    for i in range(len(poly)):
        total += poly[i].cross(poly[(i + 1) % len(poly)])
    return abs(total)


def validate(world: Gridworld) -> List[str]:
    """All broken model invariants, as human-readable strings (empty = valid)."""
    out = []
    side = world.side
    if side <= 0:
        out.append("grid side must be positive")
        return out
    ids = [r.id for r in world.regions]
    if ids != list(range(len(world.regions))):
        out.append("region ids must be 0..n-1 in order")
    for r in world.regions:
        vs = r.vertices
        if len(vs) < 3:
            out.append(f"region {r.id}: fewer than 3 vertices")
            continue
        for v in vs:
            if not (0 <= v.x <= side and 0 <= v.y <= side):
                out.append(f"region {r.id}: vertex {v} outside the grid")
                break
        if len(set(vs)) != len(vs):
            out.append(f"region {r.id}: repeated vertex")
            continue
        if r.area2() <= 0:
            out.append(f"region {r.id}: not counterclockwise or zero area")
            continue
        n = len(vs)
        for i in range(n):
            u = vs[(i + 1) % n] - vs[i]
            w = vs[(i + 2) % n] - vs[(i + 1) % n]
            if u.cross(w) < 0:
                out.append(f"region {r.id}: not convex at vertex {vs[(i + 1) % n]}")
                break
    if out:
        return out
    total = sum((r.area2() for r in world.regions), Fraction(0))
    if total != 2 * side * side:
        out.append(
            f"region areas sum to {fmt_rat(total / 2)}, expected {fmt_rat(side * side)}"
        )
    boxes = [r.bbox() for r in world.regions]
    for i in range(len(world.regions)):
        for j in range(i + 1, len(world.regions)):
            b1, b2 = boxes[i], boxes[j]
            if b1[2] <= b2[0] or b2[2] <= b1[0] or b1[3] <= b2[1] or b2[3] <= b1[1]:
                continue
            if convex_intersection_area2(world.regions[i], world.regions[j]) > 0:
                out.append(f"regions {i} and {j} overlap with positive area")
    if not (0 <= world.initial.x <= side and 0 <= world.initial.y <= side):
        out.append(f"initial state {world.initial} outside the grid")
    if not (0 <= world.target_id < len(world.regions)):
        out.append(f"target id {world.target_id} names no region")
    return out


# ---------------------------------------------------------------------------
# Text format (line oriented, '#' comments):
#   grid <side>
#   initial (<x>,<y>)
#   target <region-id>
#   region <id> actions <DIR>[,<DIR>...]|none
#     (<x1>,<y1>) (<x2>,<y2>) ...
# ---------------------------------------------------------------------------

_POINT_RE = re.compile(r"\(\s*(-?\d+(?:/\d+)?)\s*,\s*(-?\d+(?:/\d+)?)\s*\)")


def save(world: Gridworld) -> str:
    lines = [f"grid {fmt_rat(world.side)}"]
    lines.append(f"initial ({fmt_rat(world.initial.x)},{fmt_rat(world.initial.y)})")
    lines.append(f"target {world.target_id}")
    for r in world.regions:
        lines.append(f"region {r.id} actions {r.actions}")
        verts = " ".join(f"({fmt_rat(v.x)},{fmt_rat(v.y)})" for v in r.vertices)
        lines.append(f"  {verts}")
    return "\n".join(lines) + "\n"


def _parse_points(text: str, lineno: int) -> List[Point]:
    pts = []
    cursor = 0
    stripped = text.strip()
    if not stripped:
        raise ParseError(lineno, 1, "expected vertex list")
    for m in _POINT_RE.finditer(text):
        between = text[cursor : m.start()].strip()
        if between:
            raise ParseError(lineno, cursor + 1, f"unexpected text {between!r}")
        pts.append(pt(Fraction(m.group(1)), Fraction(m.group(2))))
        cursor = m.end()
    tail = text[cursor:].strip()
    if tail:
        raise ParseError(lineno, cursor + 1, f"unexpected text {tail!r}")
    return pts


def load(text: str) -> Gridworld:
    side = None
    initial = None
    target_id = None
    regions: List[Region] = []
    pending: Optional[tuple] = None  # (id, actions) awaiting a vertex line

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        words = line.split()
        head = words[0]
        if pending is not None and head not in ("region",) and line.startswith(" "):
            rid, cone = pending
            vertices = _parse_points(line, lineno)
            if len(vertices) < 3:
                raise ParseError(lineno, 1, "region needs at least 3 vertices")
            regions.append(Region(rid, tuple(vertices), cone))
            pending = None
            continue
        if pending is not None:
            raise ParseError(lineno, 1, f"region {pending[0]} is missing its vertex line")
        if head == "grid":
            if len(words) != 2:
                raise ParseError(lineno, 1, "expected: grid <side>")
            side = Fraction(words[1])
        elif head == "initial":
            pts = _parse_points(line[len("initial") :], lineno)
            if len(pts) != 1:
                raise ParseError(lineno, len("initial") + 1, "expected one point")
            initial = pts[0]
        elif head == "target":
            if len(words) != 2 or not words[1].lstrip("-").isdigit():
                raise ParseError(lineno, 1, "expected: target <region-id>")
            target_id = int(words[1])
        elif head == "region":
            if len(words) != 4 or words[2] != "actions":
                raise ParseError(lineno, 1, "expected: region <id> actions <dirs>")
            rid = int(words[1])
            if words[3] == "none":
                cone = ActionCone(frozenset())
            else:
                names = [w.strip() for w in words[3].split(",")]
                try:
                    cone = ActionCone.from_names(names)
                except KeyError as exc:
                    raise ParseError(lineno, line.find(words[3]) + 1, f"unknown direction {exc}")
            pending = (rid, cone)
        else:
            raise ParseError(lineno, 1, f"unknown directive {head!r}")
    if pending is not None:
        raise ParseError(len(text.splitlines()) + 1, 1, f"region {pending[0]} is missing its vertex line")
    if side is None:
        raise ParseError(1, 1, "missing 'grid' line")
    if initial is None:
        raise ParseError(1, 1, "missing 'initial' line")
    if target_id is None:
        raise ParseError(1, 1, "missing 'target' line")
    return Gridworld(side=side, regions=regions, initial=initial, target_id=target_id)


def export_prism(world: Gridworld, resolution: int) -> str:
    """Discretized PRISM mdp: integer states on a side*resolution*D lattice.

    One nondeterministic command per (region, direction); guards are the
    region's edge half-planes with denominators cleared.  A best-effort
    bridge: rational states between lattice points are not represented.
    """
    if resolution < 1:
        raise WorldError("resolution must be >= 1")
    d = world.common_denominator
    scale = resolution * d
    n_states = world.side * scale
    if n_states.denominator != 1:
        raise WorldError("side*resolution*D is not an integer")
    n_states = n_states.numerator

    def guard(r: Region) -> str:
        terms = []
        for e in r.edges():
            # (q-p) x ((X,Y)/scale - p) >= 0, cleared to integer coefficients.
            dx = (e.b.x - e.a.x) * d
            dy = (e.b.y - e.a.y) * d
            ax = e.a.x * scale
            ay = e.a.y * scale
            # dx*(Y - ay) - dy*(X - ax) >= 0
            cx = -dy
            cy = dx
            c0 = dy * ax - dx * ay
            assert cx.denominator == cy.denominator == c0.denominator == 1
            terms.append(f"({cx.numerator}*x + {cy.numerator}*y + {c0.numerator} >= 0)")
        return " & ".join(terms)

    ix = world.initial.x * scale
    iy = world.initial.y * scale
    ix = ix.numerator // ix.denominator
    iy = iy.numerator // iy.denominator
    lines = ["mdp", "", "module grid"]
    lines.append(f"  x : [0..{n_states}] init {ix};")
    lines.append(f"  y : [0..{n_states}] init {iy};")
    step = {
        Direction.LEFT: ("x > 0", "(x' = x - 1)"),
        Direction.RIGHT: (f"x < {n_states}", "(x' = x + 1)"),
        Direction.UP: (f"y < {n_states}", "(y' = y + 1)"),
        Direction.DOWN: ("y > 0", "(y' = y - 1)"),
    }
    for r in world.regions:
        lines.append(f"  // region {r.id}")
        g = guard(r)
        for dname in r.actions.names():
            bound, update = step[Direction[dname]]
            lines.append(f"  [] {g} & {bound} -> {update};")
    lines.append("endmodule")
    lines.append("")
    lines.append(f'label "target" = {guard(world.target)};')
    return "\n".join(lines) + "\n"
