"""Half-edge planar subdivision over a validated gridworld.

A canonical edge is a maximal boundary stretch shared by one fixed set of
regions: two regions inside the grid, one region along the outer wall.
Canonical edges are the unit of edge identity for the planner (explored-set
bookkeeping, VisitedEdges, loop counting); region polygons may subdivide
the same geometric stretch differently, so canonical edges are recovered
from the line arrangement rather than read off the polygons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .geometry import Point, Segment, lex_key, point_on_segment
from .world import Gridworld, WorldError, validate


def _line_key(p: Point, q: Point) -> Tuple[int, int, int]:
    """Normalized integer (A,B,C) with Ax + By = C along the line pq."""
    d = q - p
    a, b = -d.y, d.x
    c = a * p.x + b * p.y
    m = math.lcm(a.denominator, b.denominator, c.denominator)
    ai, bi, ci = int(a * m), int(b * m), int(c * m)
    g = math.gcd(ai, bi, ci)
    ai, bi, ci = ai // g, bi // g, ci // g
    if ai < 0 or (ai == 0 and bi < 0):
        ai, bi, ci = -ai, -bi, -ci
    return ai, bi, ci


def _line_param(key, p: Point) -> Fraction:
    a, b, _ = key
    return b * p.x - a * p.y


def _line_point(key, t: Fraction) -> Point:
    a, b, c = key
    den = Fraction(a * a + b * b)
    return Point((a * c + b * t) / den, (b * c - a * t) / den)


@dataclass(frozen=True)
class CanonicalEdge:
    id: int
    segment: Segment            # oriented with lexicographically smaller end first
    regions: tuple              # incident region ids (1 = grid boundary, else 2)
    line: tuple

    def is_boundary(self) -> bool:
        return len(self.regions) == 1


@dataclass(frozen=True)
class HalfEdge:
    id: int
    edge_id: int
    region_id: int
    twin: Optional[int]


class Subdivision:
    def __init__(self, world: Gridworld):
        problems = validate(world)
        if problems:
            raise WorldError(f"invalid world: {problems[0]}")
        self.world = world
        self.edges: List[CanonicalEdge] = []
        self.half_edges: List[HalfEdge] = []
        self._region_cycle: Dict[int, List[int]] = {}
        self._half_by_edge: Dict[int, List[int]] = {}
        self._build()

    # -- construction ------------------------------------------------------

    def _build(self):
        # Group every polygon edge by supporting line, remembering intervals.
        by_line: Dict[tuple, List[Tuple[Fraction, Fraction, int]]] = {}
        for r in self.world.regions:
            for e in r.edges():
                key = _line_key(e.a, e.b)
                lo = _line_param(key, e.a)
                hi = _line_param(key, e.b)
                if lo > hi:
                    lo, hi = hi, lo
                by_line.setdefault(key, []).append((lo, hi, r.id))

        for key in sorted(by_line):
            entries = by_line[key]
            cuts = sorted({v for lo, hi, _ in entries for v in (lo, hi)})
            run_regions = None
            run_start = None
            for i in range(len(cuts) - 1):
                lo, hi = cuts[i], cuts[i + 1]
                cover = tuple(sorted({rid for elo, ehi, rid in entries if elo <= lo and hi <= ehi}))
                if not cover:
                    cover = None
                if cover != run_regions:
                    if run_regions is not None:
                        self._emit_edge(key, run_start, lo, run_regions)
                    run_regions = cover
                    run_start = lo
            if run_regions is not None:
                self._emit_edge(key, run_start, cuts[-1], run_regions)

        # Half edges, twinned across interior canonical edges.
        for ce in self.edges:
            ids = []
            for rid in ce.regions:
                ids.append(len(self.half_edges))
                self.half_edges.append(HalfEdge(len(self.half_edges), ce.id, rid, None))
            if len(ids) == 2:
                a, b = ids
                self.half_edges[a] = HalfEdge(a, ce.id, self.half_edges[a].region_id, b)
                self.half_edges[b] = HalfEdge(b, ce.id, self.half_edges[b].region_id, a)
            self._half_by_edge[ce.id] = ids

        # Per-region canonical-edge cycle in polygon (counterclockwise) order.
        by_line_region: Dict[tuple, List[CanonicalEdge]] = {}
        for ce in self.edges:
            for rid in ce.regions:
                by_line_region.setdefault((ce.line, rid), []).append(ce)
        side = self.world.side
        for r in self.world.regions:
            cycle: List[int] = []
            seen = set()
            for e in r.edges():
                key = _line_key(e.a, e.b)
                t0 = _line_param(key, e.a)
                t1 = _line_param(key, e.b)
                lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
                parts = [
                    ce
                    for ce in by_line_region.get((key, r.id), [])
                    if lo <= _line_param(key, ce.segment.a)
                    and _line_param(key, ce.segment.b) <= hi
                ]
                parts.sort(
                    key=lambda ce: _line_param(key, ce.segment.a),
                    reverse=t0 > t1,
                )
                for ce in parts:
                    if ce.id not in seen:
                        seen.add(ce.id)
                        cycle.append(ce.id)
            self._region_cycle[r.id] = cycle

        for ce in self.edges:
            if ce.is_boundary() and not self._on_grid_wall(ce.segment, side):
                raise WorldError(
                    f"edge {ce.segment} has a single region but is not on the grid boundary"
                )

    def _emit_edge(self, key, lo, hi, cover):
        if len(cover) > 2:
            raise WorldError(f"more than two regions share a boundary stretch on line {key}")
        a = _line_point(key, lo)
        b = _line_point(key, hi)
        if lex_key(b) < lex_key(a):
            a, b = b, a
        self.edges.append(CanonicalEdge(len(self.edges), Segment(a, b), cover, key))

    @staticmethod
    def _on_grid_wall(s: Segment, side) -> bool:
        for coord, val in ((0, 0), (0, side), (1, 0), (1, side)):
            if coord == 0 and s.a.x == val and s.b.x == val:
                return True
            if coord == 1 and s.a.y == val and s.b.y == val:
                return True
        return False

    # -- queries -----------------------------------------------------------

    def edge(self, edge_id: int) -> CanonicalEdge:
        return self.edges[edge_id]

    def region_edges(self, region_id: int) -> List[int]:
        """Canonical edge ids around the region, counterclockwise."""
        return self._region_cycle[region_id]

    def region_edges_from(self, region_id: int, start_edge: int) -> List[int]:
        """The region cycle rotated to start at start_edge."""
        cycle = self._region_cycle[region_id]
        if start_edge not in cycle:
            return list(cycle)
        i = cycle.index(start_edge)
        return cycle[i:] + cycle[:i]

    def find_edge_of_region(self, region_id: int, piece: Segment) -> Optional[int]:
        """Canonical edge of the region containing the given sub-segment."""
        for eid in self._region_cycle[region_id]:
            ce = self.edges[eid]
            if point_on_segment(piece.a, ce.segment) and point_on_segment(piece.b, ce.segment):
                return eid
        return None

    def other_region(self, edge_id: int, region_id: int) -> Optional[int]:
        ce = self.edges[edge_id]
        if region_id not in ce.regions:
            raise WorldError(f"region {region_id} is not incident to edge {edge_id}")
        for rid in ce.regions:
            if rid != region_id:
                return rid
        return None

    def edges_of_point(self, p: Point) -> List[int]:
        out = []
        for ce in self.edges:
            if point_on_segment(p, ce.segment):
                out.append(ce.id)
        return out


def build_subdivision(world: Gridworld) -> Subdivision:
    return Subdivision(world)


def adjacent_region(sub: Subdivision, region_id: int, edge: Segment) -> Optional[int]:
    """The unique region across the given boundary piece, None on the wall."""
    eid = sub.find_edge_of_region(region_id, edge)
    if eid is None:
        raise WorldError(f"segment {edge} is not on the boundary of region {region_id}")
    return sub.other_region(eid, region_id)
