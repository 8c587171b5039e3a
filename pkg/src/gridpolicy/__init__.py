"""Optimal programmatic policies for polygonal gridworlds.

Pipeline: model a world of convex regions with action cones, grow the
backward tree of shortest paths to the target region, extract a branch from
the initial state, compress it into a subgoal program, then execute and
cross-check the program against independent oracles.
"""

from .geometry import (
    ActionCone,
    Direction,
    Point,
    Rat,
    Segment,
    cone_contains,
    coreach_within_region,
    denominator_profile,
    point_on_segment,
    pt,
    reach_within_region,
    seg,
    segments_collinear_overlap,
    subtract_segments,
)
from .world import Gridworld, Region, export_prism, load, region, save, validate
from .subdivision import Subdivision, adjacent_region, build_subdivision
from .arrangement import generate_random
from .reachtree import Branch, ReachTree, build_tree, check_branch_properties, find_branch
from .dsl import Program, parse, print_program, program_size
from .synth import merge_preference, size_bound_check, synthesize
from .runtime import Run, forward_min_moves, run, step, verify_optimal

__all__ = [name for name in dir() if not name.startswith("_")]
