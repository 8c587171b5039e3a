"""Compress a tree branch into a subgoal program.

Walking the branch toward the target: the first visit of a canonical edge
closes the open Do/Until block with that edge as its goal and starts the
next block, so each block navigates between two consecutive newly
discovered edges and the last block's goal is the target edge.  Inside a
block, every visited edge keeps one From rule; crossings of axis-only
regions become GO instructions, repeat visits of the same edge pair merge
into the current top target, and anything else pushes a fresh top target.

On a merge the preference becomes the merged endpoint contributed by the
newer segment: execution then presses toward the side the branch actually
progresses to, which is what makes loops wind inward instead of stalling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .dsl import DoUntil, FromInstr, Go, Program, Target, program_size
from .geometry import (
    Direction,
    Point,
    Segment,
    reach_within_region,
    segments_collinear_overlap,
)
from .reachtree import PSEUDO_EDGE, Branch, branch_law_violations
from .subdivision import Subdivision
from .world import Gridworld


class SynthesisError(ValueError):
    pass


def merge_preference(existing: Segment, incoming: Segment) -> Tuple[Segment, Point]:
    """Collinear union of two touching segments plus the new preference.

    The merged segment keeps the existing orientation; the preference is the
    merged endpoint the incoming segment contributed (the march direction of
    a loop).  When the incoming segment adds nothing the existing first
    endpoint is returned and callers keep their current preference.
    """
    hull = segments_collinear_overlap(existing, incoming)
    if hull is None:
        raise SynthesisError(
            f"segments {existing} and {incoming} are not collinear-touching"
        )
    base = existing if not existing.is_degenerate() else incoming
    if base.is_degenerate():
        return existing, existing.a
    d = base.direction
    lo, hi = hull.a, hull.b
    if (hi - lo).dot(d) < 0:
        lo, hi = hi, lo
    merged = Segment(lo, hi)
    if {lo, hi} == {existing.a, existing.b}:
        return merged, existing.a
    exist_pts = {existing.a, existing.b}
    inc_pts = {incoming.a, incoming.b}
    fresh = [p for p in (lo, hi) if p in inc_pts and p not in exist_pts]
    if len(fresh) == 1:
        return merged, fresh[0]
    if len(fresh) == 2:
        da = fresh[0] - existing.a
        db = fresh[1] - existing.a
        return merged, fresh[0] if da.dot(da) >= db.dot(db) else fresh[1]
    raise SynthesisError(f"cannot merge {existing} with {incoming}")


@dataclass
class _AltEntry:
    segment: Segment
    preference: Point
    edge_id: int


class _FromBuilder:
    def __init__(self, source: Segment):
        self.source = source
        self.targets: List[_AltEntry] = []  # priority order, top first
        self.gos: List[Direction] = []      # appended after targets

    def top(self) -> Optional[_AltEntry]:
        return self.targets[0] if self.targets else None

    def push_target(self, segment: Segment, preference: Point, edge_id: int):
        self.targets.insert(0, _AltEntry(segment, preference, edge_id))

    def add_go(self, direction: Direction):
        if direction not in self.gos:
            self.gos.append(direction)

    def build(self) -> FromInstr:
        alts = [Target(t.segment, t.preference) for t in self.targets]
        alts += [Go(d) for d in self.gos]
        return FromInstr(self.source, tuple(alts))


def _witness_direction(region, source: Segment, target: Segment) -> Optional[Direction]:
    """Axis direction of some concrete move from source into target."""
    for v in (source.a, source.midpoint(), source.b):
        reach = reach_within_region(region, v, target)
        if reach is None:
            continue
        for w in (reach.b, reach.a):
            d = w - v
            if d.x > 0:
                return Direction.RIGHT
            if d.x < 0:
                return Direction.LEFT
            if d.y > 0:
                return Direction.UP
            if d.y < 0:
                return Direction.DOWN
    return None


def synthesize(branch: Branch, world: Gridworld, sub: Subdivision) -> Program:
    problems = branch_law_violations(branch, world, sub)
    if problems:
        raise SynthesisError(problems[0])
    if branch.p == 1:
        return Program(())

    def edge_source(index: int) -> Segment:
        eid = branch.edges[index]
        if eid == PSEUDO_EDGE:
            return branch.segments[index]
        return sub.edge(eid).segment

    finished: List[DoUntil] = []
    open_body: List[_FromBuilder] = []
    by_edge = {}
    visited = set()

    def close_block(goal: Segment):
        nonlocal open_body, by_edge
        if open_body:
            finished.append(DoUntil(tuple(fb.build() for fb in open_body), goal))
        open_body, by_edge = [], {}

    for i in range(branch.p - 1):
        e_here = branch.edges[i]
        e_next = branch.edges[i + 1]
        if e_here not in visited:
            visited.add(e_here)
            close_block(edge_source(i))
        fb = by_edge.get(e_here)
        if fb is None:
            fb = _FromBuilder(edge_source(i))
            by_edge[e_here] = fb
            open_body.append(fb)
        region = world.region_by_id(branch.regions[i])
        s_next = branch.segments[i + 1]
        if region.actions.axis_only() and e_next != e_here:
            direction = _witness_direction(region, branch.segments[i], s_next)
            if direction is not None:
                fb.add_go(direction)
                continue
        top = fb.top()
        if (
            top is not None
            and e_next != e_here
            and top.edge_id == e_next
            and segments_collinear_overlap(top.segment, s_next) is not None
        ):
            merged, pref = merge_preference(top.segment, s_next)
            if merged.a == top.segment.a and merged.b == top.segment.b:
                pref = top.preference
            fb.targets[0] = _AltEntry(merged, pref, e_next)
        else:
            # Segment orientation is free; don't prefer an endpoint sitting
            # on the target region's boundary mid-branch, or the play would
            # finish there and undercut the remaining blocks.
            pref = s_next.a
            if i + 2 < branch.p and world.target.contains(pref) and not world.target.contains(s_next.b):
                pref = s_next.b
            fb.push_target(s_next, pref, e_next)
    close_block(edge_source(branch.p - 1))
    return Program(tuple(finished))


def size_bound_check(program: Program, world: Gridworld, branch: Branch) -> dict:
    """Instruction count against the per-edge-discovery budget of 12m."""
    q = len(set(branch.edges))
    bound = sum(12 * m for m in range(1, q + 1))
    instructions = program_size(program)["instructions"]
    return {"instructions": instructions, "bound": bound, "ok": instructions <= bound}
