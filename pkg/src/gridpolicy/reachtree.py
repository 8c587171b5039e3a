"""Backward breadth-first tree of shortest paths into the target region.

Nodes carry boundary segments already known to win; expanding a node pulls
its one-move predecessors out of the region across its edge, minus every
segment some node already claimed on the same canonical edge.  Claims are
made at node creation, so sibling order matters and is pinned down: a
region's edges are visited counterclockwise starting from the edge shared
with the parent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .geometry import (
    IntervalSet,
    Point,
    Segment,
    coreach_within_region,
    point_on_segment,
    reach_within_region,
    segment_contains_segment,
    segment_intersection,
)
from .subdivision import Subdivision, _line_param, _line_point
from .world import Gridworld

PSEUDO_EDGE = -1  # marks a prepended degenerate start segment (no canonical edge)

EXHAUSTED = "exhausted"
TRUNCATED = "truncated"
STOPPED = "stopped"


@dataclass(frozen=True)
class TreeNode:
    id: int
    segment: Segment
    region_id: int          # region through which this segment reaches its parent
    edge_id: int            # canonical edge carrying the segment
    parent: Optional[int]
    depth: int


@dataclass
class ReachTree:
    """Claims are tracked per canonical edge as line-parameter intervals;
    explored_segments materializes them for inspection."""

    sub: Subdivision
    nodes: List[TreeNode] = field(default_factory=list)
    explored: Dict[int, IntervalSet] = field(default_factory=dict)
    frontier: deque = field(default_factory=deque)
    status: str = EXHAUSTED

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def max_depth(self) -> int:
        return max((n.depth for n in self.nodes), default=0)

    def _ledger(self, edge_id: int) -> IntervalSet:
        ledger = self.explored.get(edge_id)
        if ledger is None:
            ledger = self.explored[edge_id] = IntervalSet()
        return ledger

    def carve_claims(self, edge_id: int, piece: Segment) -> List[Segment]:
        """Unclaimed closed parts of piece, each claimed before returning."""
        line = self.sub.edge(edge_id).line
        lo = _line_param(line, piece.a)
        hi = _line_param(line, piece.b)
        flip = lo > hi
        ledger = self._ledger(edge_id)
        out = []
        for plo, phi in ledger.carve(lo, hi):
            ledger.claim(plo, phi)
            if flip:
                plo, phi = phi, plo
            out.append(Segment(_line_point(line, plo), _line_point(line, phi)))
        return out

    def explored_segments(self, edge_id: int) -> List[Segment]:
        ledger = self.explored.get(edge_id)
        if ledger is None:
            return []
        line = self.sub.edge(edge_id).line
        return [
            Segment(_line_point(line, lo), _line_point(line, hi))
            for lo, hi in ledger.items
        ]

    def add_node(self, segment, region_id, edge_id, parent, depth) -> int:
        nid = len(self.nodes)
        self.nodes.append(TreeNode(nid, segment, region_id, edge_id, parent, depth))
        self.frontier.append(nid)
        return nid


@dataclass(frozen=True)
class Branch:
    """Root path replayed from the initial state toward the target edge."""

    segments: tuple
    regions: tuple          # region of the move out of each segment, length p-1
    edges: tuple            # canonical edge ids, length p (PSEUDO_EDGE possible at 1)
    p: int

    @property
    def moves(self) -> int:
        return self.p - 1


def init_tree(world: Gridworld, sub: Subdivision) -> ReachTree:
    """Root children: one node per canonical edge of the target region."""
    tree = ReachTree(sub)
    target = world.target
    for eid in sub.region_edges(target.id):
        for piece in tree.carve_claims(eid, sub.edge(eid).segment):
            tree.add_node(piece, target.id, eid, None, 1)
    return tree


def expand_node(tree: ReachTree, node_id: int, world: Gridworld, sub: Subdivision) -> List[int]:
    """One-move predecessors of a node, claimed per canonical edge."""
    node = tree.nodes[node_id]
    other = sub.other_region(node.edge_id, node.region_id)
    if other is None:
        return []
    region = world.region_by_id(other)
    created = []
    for eid in sub.region_edges_from(other, node.edge_id):
        for piece in coreach_within_region(region, sub.edge(eid).segment, node.segment):
            for left in tree.carve_claims(eid, piece):
                # A lone point lying on the parent is the parent's own
                # endpoint seen from another edge: only the zero move links
                # them, so keep the claim but add no node (it would replay
                # the same state one level deeper).
                if left.is_degenerate() and point_on_segment(left.a, node.segment):
                    continue
                created.append(tree.add_node(left, other, eid, node.id, node.depth + 1))
    return created


def build_tree(
    world: Gridworld,
    sub: Subdivision,
    max_depth: Optional[int] = None,
    max_nodes: Optional[int] = None,
    stop_at: Optional[Point] = None,
) -> ReachTree:
    """Breadth-first expansion until the frontier empties or a limit hits.

    The tree is infinite for many worlds, so truncation is an expected
    outcome and is recorded in `status`, never raised.  With `stop_at`,
    expansion halts as soon as some node's segment contains the point; the
    breadth-first discipline still guarantees that claim has minimal depth.
    """
    if max_depth is None:
        max_depth = 4 * len(world.regions) ** 2
    if max_nodes is None:
        max_nodes = 10**6
    tree = init_tree(world, sub)
    if stop_at is not None and any(
        point_on_segment(stop_at, n.segment) for n in tree.nodes
    ):
        tree.status = STOPPED
        return tree
    while tree.frontier:
        node = tree.nodes[tree.frontier[0]]
        if node.depth >= max_depth or tree.node_count >= max_nodes:
            tree.status = TRUNCATED
            return tree
        tree.frontier.popleft()
        new_ids = expand_node(tree, node.id, world, sub)
        if stop_at is not None and any(
            point_on_segment(stop_at, tree.nodes[i].segment) for i in new_ids
        ):
            tree.status = STOPPED
            return tree
    tree.status = EXHAUSTED
    return tree


def _root_path(tree: ReachTree, node_id: int) -> List[TreeNode]:
    chain = []
    cur: Optional[int] = node_id
    while cur is not None:
        chain.append(tree.nodes[cur])
        cur = tree.nodes[cur].parent
    return chain


def _branch_from_chain(chain: List[TreeNode]) -> Branch:
    segments = tuple(n.segment for n in chain)
    regions = tuple(n.region_id for n in chain[:-1])
    edges = tuple(n.edge_id for n in chain)
    return Branch(segments, regions, edges, len(chain))


def find_branch(tree: ReachTree, world: Gridworld, sub: Subdivision, initial: Point) -> Optional[Branch]:
    """Shortest playable branch from the initial state, if the tree has one.

    Preference order: a minimal-depth node containing the point (earliest
    created on ties); else a minimal-depth node one move away inside a
    region containing the point, with the degenerate start prepended.
    """
    if world.target.contains(initial):
        return Branch((Segment(initial, initial),), (), (PSEUDO_EDGE,), 1)
    best = None
    for n in tree.nodes:
        if point_on_segment(initial, n.segment):
            if best is None or (n.depth, n.id) < (best.depth, best.id):
                best = n
    if best is not None:
        return _branch_from_chain(_root_path(tree, best.id))
    regions = world.regions_containing(initial)
    found = None
    for n in tree.nodes:
        for r in regions:
            if r.id not in sub.edge(n.edge_id).regions:
                continue
            reach = reach_within_region(r, initial, n.segment)
            if reach is None:
                continue
            if found is None or (n.depth, n.id) < (found[0].depth, found[0].id):
                found = (n, r.id)
    if found is None:
        return None
    node, rid = found
    chain = _root_path(tree, node.id)
    inner = _branch_from_chain(chain)
    return Branch(
        (Segment(initial, initial),) + inner.segments,
        (rid,) + inner.regions,
        (PSEUDO_EDGE,) + inner.edges,
        inner.p + 1,
    )


def _witness_path(branch: Branch, world: Gridworld) -> Optional[List[Point]]:
    # Start interior: the first segment's endpoints may coincide with corner
    # vertices of later claims, which would fake a measure-zero revisit.
    pts = [branch.segments[0].midpoint()]
    for i in range(branch.p - 1):
        region = world.region_by_id(branch.regions[i])
        reach = reach_within_region(region, pts[-1], branch.segments[i + 1])
        if reach is None:
            return None
        pts.append(reach.a)
    return pts


def branch_law_violations(branch: Branch, world: Gridworld, sub: Subdivision) -> List[str]:
    """Violations of the four branch laws: (i) a move connects consecutive
    segments inside the recorded region, (ii) consecutive regions differ,
    (iii) segments stay on their canonical edges, (iv) each next edge is
    shared by the two regions around it."""
    out = []
    p = branch.p
    for i in range(p - 1):
        region = world.region_by_id(branch.regions[i])
        s, t = branch.segments[i], branch.segments[i + 1]
        samples = [s.a, s.midpoint(), s.b]
        if any(reach_within_region(region, v, t) is None for v in samples):
            out.append(f"(i) no move from segment {i + 1} into segment {i + 2}")
    for i in range(p - 2):
        if branch.regions[i] == branch.regions[i + 1]:
            out.append(f"(ii) consecutive regions equal at {i + 1}")
    for i in range(p):
        eid = branch.edges[i]
        if eid == PSEUDO_EDGE:
            continue
        if not segment_contains_segment(sub.edge(eid).segment, branch.segments[i]):
            out.append(f"(iii) segment {i + 1} leaves its canonical edge")
    for i in range(p - 1):
        eid = branch.edges[i + 1]
        if eid == PSEUDO_EDGE:
            continue
        incident = sub.edge(eid).regions
        r_here = branch.regions[i]
        r_next = branch.regions[i + 1] if i + 1 < p - 1 else world.target_id
        if r_here not in incident or r_next not in incident:
            out.append(f"(iv) edge {i + 2} not shared by regions {r_here} and {r_next}")
    return out


def check_branch_properties(branch: Branch, world: Gridworld, sub: Subdivision) -> List[str]:
    """Violations of the branch laws, the witness-path simplicity, and the
    at-most-two-repeats bound on (region, edge) stays; empty list = all hold."""
    out = branch_law_violations(branch, world, sub)
    p = branch.p

    pts = _witness_path(branch, world)
    if pts is None:
        out.append("witness path construction failed")
    else:
        hops = []
        for a, b in zip(pts, pts[1:]):
            if a != b:
                hops.append(Segment(a, b))
        for i in range(len(hops)):
            for j in range(i + 1, len(hops)):
                hit = segment_intersection(hops[i], hops[j])
                if hit is None:
                    continue
                if j == i + 1 and isinstance(hit, Point) and hit == hops[j].a:
                    continue
                out.append(f"witness path self-intersects between hops {i + 1} and {j + 1}")

    stays: Dict[tuple, int] = {}
    for i in range(p - 1):
        if branch.edges[i] != PSEUDO_EDGE and branch.edges[i] == branch.edges[i + 1]:
            key = (branch.regions[i], branch.edges[i])
            stays[key] = stays.get(key, 0) + 1
    for key, count in stays.items():
        if count > 2:
            out.append(f"(region {key[0]}, edge {key[1]}) repeats {count} times, bound is 2")
    return out


def dump_tree(tree: ReachTree) -> str:
    """One diffable line per node: id depth parent region segment."""
    lines = []
    for n in tree.nodes:
        parent = "-" if n.parent is None else str(n.parent)
        lines.append(f"{n.id} {n.depth} {parent} {n.region_id} {n.segment}")
    return "\n".join(lines) + ("\n" if lines else "")


def to_dot(tree: ReachTree) -> str:
    lines = ["digraph reachtree {", '  root [shape=point, label=""];']
    for n in tree.nodes:
        label = str(n.segment).replace('"', "'")
        lines.append(f'  n{n.id} [shape=box, label="{label}\\nR{n.region_id}"];')
        src = "root" if n.parent is None else f"n{n.parent}"
        lines.append(f"  {src} -> n{n.id};")
    lines.append("}")
    return "\n".join(lines) + "\n"
