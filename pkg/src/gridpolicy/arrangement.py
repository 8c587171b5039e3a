"""Random gridworld generation from linear predicates.

Predicates are chords of the square with integer endpoints on its boundary;
regions are the cells of the segment arrangement, extracted from a doubly
connected edge list with exact angular sorting (no floats).
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction
from typing import Dict, List, Tuple

from .geometry import Point, Segment, lex_key, pt, segment_intersection, ActionCone, Direction
from .world import Gridworld, Region

_DIR_ORDER = (Direction.LEFT, Direction.RIGHT, Direction.UP, Direction.DOWN)


def _angle_class(v: Point) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi); ties broken by cross product.
    if v.y > 0 or (v.y == 0 and v.x > 0):
        return 0
    return 1


def _ccw_cmp(v1: Point, v2: Point) -> int:
    h1, h2 = _angle_class(v1), _angle_class(v2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = v1.cross(v2)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def _boundary_points(n: int) -> List[Point]:
    out = [pt(x, 0) for x in range(n + 1)]
    out += [pt(n, y) for y in range(1, n + 1)]
    out += [pt(x, n) for x in range(n - 1, -1, -1)]
    out += [pt(0, y) for y in range(n - 1, 0, -1)]
    return out


def _wall_lines(n: int):
    return {
        (0, 1, 0),        # y = 0
        (0, 1, n),        # y = n
        (1, 0, 0),        # x = 0
        (1, 0, n),        # x = n
    }


def _line_key_int(p: Point, q: Point) -> Tuple[int, int, int]:
    from .subdivision import _line_key

    return _line_key(p, q)


def faces_of_arrangement(n, chords: List[Segment]) -> List[List[Point]]:
    """Bounded cells of the chord arrangement inside [0,n]^2, as CCW cycles."""
    side = Fraction(n)
    corners = [pt(0, 0), Point(side, Fraction(0)), Point(side, side), Point(Fraction(0), side)]
    walls = [Segment(corners[i], corners[(i + 1) % 4]) for i in range(4)]

    cut_points: Dict[int, set] = {i: {c.a, c.b} for i, c in enumerate(chords)}
    for i in range(len(chords)):
        for j in range(i + 1, len(chords)):
            hit = segment_intersection(chords[i], chords[j])
            if isinstance(hit, Point):
                cut_points[i].add(hit)
                cut_points[j].add(hit)
            elif isinstance(hit, Segment):
                for p in (hit.a, hit.b):
                    cut_points[i].add(p)
                    cut_points[j].add(p)

    atoms = set()

    def add_atoms(segment: Segment, points):
        d = segment.direction
        def along(p):
            return (p - segment.a).dot(d)
        pts = sorted(points, key=along)
        for a, b in zip(pts, pts[1:]):
            if a != b:
                atoms.add((a, b) if lex_key(a) < lex_key(b) else (b, a))

    for i, c in enumerate(chords):
        add_atoms(c, cut_points[i])
    for w in walls:
        on_wall = {w.a, w.b}
        for pts_ in cut_points.values():
            for p in pts_:
                if (p - w.a).cross(w.direction) == 0 and point_between(p, w):
                    on_wall.add(p)
        add_atoms(w, on_wall)

    # Directed edge structure with exact CCW rotation at every vertex.
    outgoing: Dict[Point, List[Point]] = {}
    for a, b in atoms:
        outgoing.setdefault(a, []).append(b)
        outgoing.setdefault(b, []).append(a)
    for v, nbrs in outgoing.items():
        nbrs.sort(key=functools.cmp_to_key(lambda p, q: _ccw_cmp(p - v, q - v)))

    next_edge: Dict[Tuple[Point, Point], Tuple[Point, Point]] = {}
    for v, nbrs in outgoing.items():
        k = len(nbrs)
        for i, w in enumerate(nbrs):
            # incoming (w -> v) continues to the clockwise-next neighbor
            next_edge[(w, v)] = (v, nbrs[(i - 1) % k])

    seen = set()
    faces = []
    for start in sorted(next_edge, key=lambda e: (lex_key(e[0]), lex_key(e[1]))):
        if start in seen:
            continue
        cycle = []
        e = start
        while True:
            seen.add(e)
            cycle.append(e[0])
            e = next_edge[e]
            if e == start:
                break
        area2 = Fraction(0)
        for i in range(len(cycle)):
            area2 += cycle[i].cross(cycle[(i + 1) % len(cycle)])
        if area2 > 0:
            faces.append(cycle)
    return faces


def point_between(p: Point, s: Segment) -> bool:
    d = s.direction
    t = (p - s.a).dot(d)
    return 0 <= t <= d.dot(d)


def _canonical_cycle(cycle: List[Point]) -> List[Point]:
    k = min(range(len(cycle)), key=lambda i: lex_key(cycle[i]))
    return cycle[k:] + cycle[:k]


def generate_random(
    n: int,
    num_predicates: int,
    seed,
    interior_initial: bool = False,
    allow_empty_cones: bool = False,
) -> Gridworld:
    """Deterministic random world: `num_predicates` chords on [0,n]^2.

    Chord endpoints are integer boundary points; every cell of the resulting
    arrangement becomes a region with a random nonempty action cone (empty
    cones only with allow_empty_cones).  The initial state sits on a region
    vertex on the grid boundary unless interior_initial is set.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if num_predicates < 1:
        raise ValueError("num_predicates must be >= 1")
    rng = random.Random(seed)
    boundary = _boundary_points(n)
    walls = _wall_lines(n)
    chords: List[Segment] = []
    used_lines = set()
    attempts = 0
    while len(chords) < num_predicates and attempts < 200 * num_predicates:
        attempts += 1
        a = boundary[rng.randrange(len(boundary))]
        b = boundary[rng.randrange(len(boundary))]
        if a == b:
            continue
        key = _line_key_int(a, b)
        if key in walls or key in used_lines:
            continue
        used_lines.add(key)
        chords.append(Segment(a, b))

    cycles = [_canonical_cycle(c) for c in faces_of_arrangement(n, chords)]
    cycles.sort(key=lambda cyc: [lex_key(v) for v in cyc])

    regions = []
    for rid, cyc in enumerate(cycles):
        if allow_empty_cones:
            mask = rng.randrange(0, 16)
        else:
            mask = rng.randrange(1, 16)
        dirs = frozenset(d for i, d in enumerate(_DIR_ORDER) if mask & (1 << i))
        regions.append(Region(rid, tuple(cyc), ActionCone(dirs)))

    target_id = rng.randrange(len(regions))

    side = Fraction(n)
    verts = sorted(
        {v for r in regions for v in r.vertices},
        key=lex_key,
    )
    if not interior_initial:
        candidates = [v for v in verts if v.x in (0, side) or v.y in (0, side)]
    else:
        candidates = verts
    initial = candidates[rng.randrange(len(candidates))]

    return Gridworld(side=side, regions=regions, initial=initial, target_id=target_id)
