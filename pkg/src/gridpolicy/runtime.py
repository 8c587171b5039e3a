"""Execute subgoal programs and cross-check them against a forward oracle.

A point on a shared edge belongs to both closed regions, so feasibility of
a move is checked against every region containing the current point.  A
Target alternative that cannot make strictly positive progress is skipped:
a zero-length hop would stall the interpreter and is never required by a
correctly synthesized program.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .dsl import Go, Program, Target
from .geometry import (
    IntervalSet,
    Point,
    Segment,
    clip_segment_to_region,
    cone_contains,
    image_within_region,
    point_on_segment,
    reach_within_region,
)
from .reachtree import Branch
from .subdivision import Subdivision, _line_param, _line_point
from .world import Gridworld, Region

REACHED = "reached"
STUCK = "stuck"
TRUNCATED = "truncated"


@dataclass
class Run:
    points: List[Point]
    moves: int
    status: str
    stuck_block: Optional[int] = None

    @property
    def final(self) -> Point:
        return self.points[-1]


def _closer_endpoint(segment: Segment, pref: Point) -> Point:
    da = segment.a - pref
    db = segment.b - pref
    return segment.a if da.dot(da) <= db.dot(db) else segment.b


def _go_translation(region: Region, point: Point, direction) -> Optional[Point]:
    """Farthest boundary point of region along direction, None if no progress."""
    if not cone_contains(region.actions, direction.vector):
        return None
    v = direction.vector
    t_max: Optional[Fraction] = None
    for e in region.edges():
        d = e.b - e.a
        c0 = d.cross(point - e.a)
        c1 = d.cross(v)
        if c1 < 0:
            bound = c0 / (-c1)
            t_max = bound if t_max is None else min(t_max, bound)
    if t_max is None or t_max <= 0:
        return None
    return point + v.scale(t_max)


def _choose_move(
    world: Gridworld,
    sub: Subdivision,
    block,
    point: Point,
    containing: List[Region],
) -> Optional[Point]:
    """Destination of the first feasible alternative of the first matching
    From, or None.  A Target is feasible when some region containing the
    point licenses a strictly positive move into it; a GO when a region
    carrying the From's source edge licenses positive translation."""
    instr = next(
        (f for f in block.body if point_on_segment(point, f.source)),
        None,
    )
    if instr is None:
        return None
    # Moves bind to the regions carrying the rule's source edge: a vertex
    # point can touch further regions, but the planner's edge model (and its
    # optimality argument) only ever crosses a region bordering the edge the
    # agent stands on.
    candidates = [
        r for r in containing if sub.find_edge_of_region(r.id, instr.source) is not None
    ]
    if not candidates:
        candidates = containing
    for alt in instr.alternatives:
        if isinstance(alt, Target):
            best = None
            best_d2 = None
            for r in candidates:
                # The target may lie on another region's boundary; only the
                # part inside r is reachable by a move confined to r.
                inside = clip_segment_to_region(alt.segment, r)
                if inside is None:
                    continue
                reach = reach_within_region(r, point, inside)
                if reach is None:
                    continue
                cand = _closer_endpoint(reach, alt.preference)
                d = cand - alt.preference
                d2 = d.dot(d)
                if best is None or d2 < best_d2:
                    best, best_d2 = cand, d2
            if best is not None and best != point:
                return best
        else:
            best = None
            best_len = None
            for r in candidates:
                q = _go_translation(r, point, alt.direction)
                if q is None:
                    continue
                d = q - point
                l2 = d.dot(d)
                if best is None or l2 > best_len:
                    best, best_len = q, l2
            if best is not None:
                return best
    return None


def step(
    world: Gridworld,
    sub: Subdivision,
    program: Program,
    point: Point,
    block_index: int,
) -> Tuple[str, Point, int]:
    """One interpreter step: ('reached'|'stuck'|'move', next_point, next_block).

    Touching the final block's goal (the target edge of a synthesized
    program) is terminal.  An earlier block is skipped once the point sits
    on its goal and none of its From rules can act; the second condition
    matters when a segment endpoint coincides with a vertex of a goal edge
    the play only properly reaches later.
    """
    blocks = program.blocks
    if not blocks:
        won = world.target.contains(point)
        return (REACHED if won else STUCK, point, block_index)
    containing = world.regions_containing(point)
    while block_index < len(blocks):
        block = blocks[block_index]
        on_goal = point_on_segment(point, block.goal)
        if on_goal and block_index == len(blocks) - 1 and world.target.contains(point):
            # Touching the final goal inside the target ends the play, except
            # that a pending rule may still slide the point along the
            # target's boundary: a corner contact inherited from the previous
            # segment completes its arrival this way, while any move leaving
            # the target is never taken from a winning state.
            dest = _choose_move(world, sub, block, point, containing)
            if dest is not None and world.target.contains(dest):
                return ("move", dest, block_index)
            return (REACHED, point, len(blocks))
        dest = _choose_move(world, sub, block, point, containing)
        if dest is not None:
            return ("move", dest, block_index)
        if on_goal:
            block_index += 1
            continue
        return (STUCK, point, block_index)
    return (STUCK, point, block_index)


def run(
    world: Gridworld,
    sub: Subdivision,
    program: Program,
    initial: Point,
    max_moves: int,
) -> Run:
    points = [initial]
    point = initial
    block = 0
    moves = 0
    while True:
        status, nxt, nblock = step(world, sub, program, point, block)
        if status == REACHED:
            return Run(points, moves, REACHED)
        if status == STUCK:
            return Run(points, moves, STUCK, stuck_block=nblock)
        if moves >= max_moves:
            return Run(points, moves, TRUNCATED)
        point, block = nxt, nblock
        points.append(point)
        moves += 1


def verify_optimal(
    world: Gridworld,
    sub: Subdivision,
    program: Program,
    branch: Branch,
) -> dict:
    """Theorem-1 check: the run must ride the branch and match its length."""
    budget = max(4 * branch.p + 16, 64)
    result = run(world, sub, program, world.initial, budget)
    ok = (
        result.status == REACHED
        and result.moves == branch.moves
        and len(result.points) == branch.p
        and all(
            point_on_segment(result.points[i], branch.segments[i])
            for i in range(branch.p)
        )
    )
    return {"ok": ok, "run_moves": result.moves, "branch_moves": branch.moves}


def _touches_target(world: Gridworld, sub: Subdivision, edge_id: int) -> bool:
    # Winning means standing on an edge of the target region, mirroring the
    # backward tree whose root children are exactly those edges.
    return world.target_id in sub.edge(edge_id).regions


def forward_min_moves(
    world: Gridworld,
    sub: Subdivision,
    initial: Point,
    max_depth: int,
) -> Optional[int]:
    """Independent shortest-path oracle: forward interval BFS over edges.

    Frontier k holds the boundary segments first reachable in exactly k
    moves, deduplicated per canonical edge against all earlier levels.
    Returns the least k whose frontier touches the closed target region.
    """
    if world.target.contains(initial):
        return 0
    claimed: dict = {}
    frontier: List[Tuple[int, Segment]] = []

    def push(eid: int, piece: Segment, source: Segment, out: list):
        line = sub.edge(eid).line
        ledger = claimed.get(eid)
        if ledger is None:
            ledger = claimed[eid] = IntervalSet()
        lo = _line_param(line, piece.a)
        hi = _line_param(line, piece.b)
        for plo, phi in ledger.carve(lo, hi):
            ledger.claim(plo, phi)
            part = Segment(_line_point(line, plo), _line_point(line, phi))
            # Mirror the backward tree: a lone point on the source piece is
            # the same state relabeled onto another edge, not a move.
            if part.is_degenerate() and point_on_segment(part.a, source):
                continue
            out.append((eid, part))

    start = Segment(initial, initial)
    nxt = []
    for r in world.regions_containing(initial):
        for eid in sub.region_edges(r.id):
            reach = reach_within_region(r, initial, sub.edge(eid).segment)
            if reach is not None:
                push(eid, reach, start, nxt)
    level = 1
    frontier = nxt
    while frontier and level <= max_depth:
        if any(_touches_target(world, sub, eid) for eid, piece in frontier):
            return level
        nxt = []
        for eid, piece in frontier:
            for rid in sub.edge(eid).regions:
                region = world.region_by_id(rid)
                for fid in sub.region_edges(rid):
                    for img in image_within_region(region, piece, sub.edge(fid).segment):
                        push(fid, img, piece, nxt)
        frontier = nxt
        level += 1
    return None
