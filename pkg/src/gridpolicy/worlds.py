"""Hand-built example worlds used by tests, docs, and the benchmark suite."""

from __future__ import annotations

from .geometry import ActionCone, Direction, pt
from .world import Gridworld, region

L, R, U, D = Direction.LEFT, Direction.RIGHT, Direction.UP, Direction.DOWN


def two_cell_world() -> Gridworld:
    """Two cells side by side on [0,2]^2; reach the right cell from (0,0)."""
    left = region(0, [pt(0, 0), pt(1, 0), pt(1, 2), pt(0, 2)], ActionCone.of(R, U))
    right = region(1, [pt(1, 0), pt(2, 0), pt(2, 2), pt(1, 2)], ActionCone.of(R, U))
    return Gridworld(side=pt(2, 0).x, regions=[left, right], initial=pt(0, 0), target_id=1)


def spiral_world() -> Gridworld:
    """Four arms winding around a tiny central triangle on [0,28]^2.

    The four diagonals [(0,0),(13,13)], [(14,12),(26,0)], [(14,14),(28,28)]
    and [(14,14),(0,28)] separate the arms; each arm's cone lets the agent
    ride one diagonal and drift one step inward per lap, so the optimal play
    spirals into the triangle.
    """
    bottom = region(
        0,
        [pt(0, 0), pt(26, 0), pt(14, 12), pt(13, 13)],
        ActionCone.of(R, D),
    )
    right = region(
        1,
        [pt(26, 0), pt(28, 0), pt(28, 28), pt(14, 14), pt(14, 12)],
        ActionCone.of(U, R),
    )
    top = region(
        2,
        [pt(14, 14), pt(28, 28), pt(0, 28)],
        ActionCone.of(L, U),
    )
    left = region(
        3,
        [pt(0, 0), pt(13, 13), pt(14, 14), pt(0, 28)],
        ActionCone.of(D, L),
    )
    center = region(
        4,
        [pt(13, 13), pt(14, 12), pt(14, 14)],
        ActionCone.of(),
    )
    return Gridworld(
        side=pt(28, 0).x,
        regions=[bottom, right, top, left, center],
        initial=pt(0, 0),
        target_id=4,
    )


def double_pass_world() -> Gridworld:
    """A middle triangle that any optimal play must cross twice on [0,4]^2.

    From (1,0) the only way up is through the triangle (rightward), then up
    the right strip, then back through the triangle (leftward) into the
    target wedge on the left wall.
    """
    t1 = region(0, [pt(0, 0), pt(2, 0), pt(0, 2)], ActionCone.of(U))
    mid = region(1, [pt(2, 0), pt(2, 4), pt(0, 2)], ActionCone.of(L, R))
    strip = region(2, [pt(2, 0), pt(4, 0), pt(4, 4), pt(2, 4)], ActionCone.of(U))
    target = region(3, [pt(0, 2), pt(1, 3), pt(0, 4)], ActionCone.of())
    deadend = region(4, [pt(1, 3), pt(2, 4), pt(0, 4)], ActionCone.of(U))
    return Gridworld(
        side=pt(4, 0).x,
        regions=[t1, mid, strip, target, deadend],
        initial=pt(1, 0),
        target_id=3,
    )
