"""Static SVG pictures of worlds, cones, and trajectories (batch artifacts)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from .geometry import Direction, Point
from .world import Gridworld

SCALE = 32  # pixels per grid unit

_PALETTE = [
    "#dce8f5", "#f5e8dc", "#e1f0dd", "#f0dde9", "#e8e2f4",
    "#f4f0d8", "#d8f0ee", "#f1dede", "#e4e9d2", "#dfe7ef",
]

_ARROW = {
    Direction.LEFT: (-1, 0),
    Direction.RIGHT: (1, 0),
    Direction.UP: (0, 1),
    Direction.DOWN: (0, -1),
}


def _px(world: Gridworld, p: Point):
    # SVG y grows downward
    x = float(p.x) * SCALE
    y = (float(world.side) - float(p.y)) * SCALE
    return f"{x:.2f}", f"{y:.2f}"


def render_svg(world: Gridworld, trajectory: Optional[List[Point]] = None) -> str:
    size = float(world.side) * SCALE
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {size:.0f} {size:.0f}">'
    ]
    for r in world.regions:
        pts = " ".join(",".join(_px(world, v)) for v in r.vertices)
        fill = "#ffd27f" if r.id == world.target_id else _PALETTE[r.id % len(_PALETTE)]
        out.append(
            f'<polygon points="{pts}" fill="{fill}" stroke="#333" stroke-width="1"/>'
        )
    arrow_len = SCALE * 0.35
    for r in world.regions:
        cx, cy = (float(v) for v in (r.centroid().x, r.centroid().y))
        px = cx * SCALE
        py = (float(world.side) - cy) * SCALE
        for name in r.actions.names():
            dx, dy = _ARROW[Direction[name]]
            ex, ey = px + dx * arrow_len, py - dy * arrow_len
            out.append(
                f'<line x1="{px:.2f}" y1="{py:.2f}" x2="{ex:.2f}" y2="{ey:.2f}" '
                f'stroke="#555" stroke-width="1.5"/>'
            )
            # simple arrowhead
            hx, hy = ex - dx * 4 - dy * 3, ey + dy * 4 - dx * 3
            gx, gy = ex - dx * 4 + dy * 3, ey + dy * 4 + dx * 3
            out.append(
                f'<polygon points="{ex:.2f},{ey:.2f} {hx:.2f},{hy:.2f} {gx:.2f},{gy:.2f}" fill="#555"/>'
            )
    if trajectory:
        pts = " ".join(",".join(_px(world, p)) for p in trajectory)
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="#c0392b" stroke-width="2"/>'
        )
        for p in trajectory:
            x, y = _px(world, p)
            out.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="#c0392b"/>')
    ix, iy = _px(world, world.initial)
    out.append(f'<circle cx="{ix}" cy="{iy}" r="5" fill="#e67e22" stroke="#7e3d00"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
