from fractions import Fraction

import pytest

from gridpolicy import (
    build_subdivision,
    build_tree,
    find_branch,
    forward_min_moves,
    generate_random,
    pt,
    seg,
)
from gridpolicy.dsl import DoUntil, FromInstr, Program, Target, parse
from gridpolicy.geometry import ActionCone, Direction, cone_contains, point_on_segment
from gridpolicy.runtime import REACHED, STUCK, TRUNCATED, run, step, verify_optimal
from gridpolicy.synth import synthesize
from gridpolicy.world import Gridworld, region
from gridpolicy.worlds import double_pass_world, spiral_world, two_cell_world

R, U = Direction.RIGHT, Direction.UP


def _program(world, **kw):
    sub = build_subdivision(world)
    tree = build_tree(world, sub, **kw)
    branch = find_branch(tree, world, sub, world.initial)
    return sub, branch, synthesize(branch, world, sub)


def test_step_two_cell():
    w = two_cell_world()
    sub, branch, program = _program(w, max_depth=10, max_nodes=100)
    status, nxt, block = step(w, sub, program, pt(0, 0), 0)
    assert status == "move" and nxt == pt(1, 0) and block == 0
    status, nxt, block = step(w, sub, program, pt(1, 0), 0)
    assert status == REACHED


def test_step_spiral_priority():
    w = spiral_world()
    sub, branch, program = _program(w, max_depth=300, max_nodes=30000)
    status, nxt, _ = step(w, sub, program, pt(0, 0), 0)
    assert status == "move"
    # the first hop lands on the long south-east diagonal
    assert point_on_segment(nxt, seg(14, 12, 26, 0))


def test_run_two_cell():
    w = two_cell_world()
    sub, branch, program = _program(w, max_depth=10, max_nodes=100)
    result = run(w, sub, program, w.initial, 100)
    assert result.status == REACHED and result.moves == 1
    assert result.points == [pt(0, 0), pt(1, 0)]


def test_run_spiral_visits_diagonals_cyclically():
    w = spiral_world()
    sub, branch, program = _program(w, max_depth=300, max_nodes=30000)
    result = run(w, sub, program, w.initial, 200)
    assert result.status == REACHED and result.moves == 25
    diagonals = [
        seg(0, 0, 13, 13),
        seg(14, 12, 26, 0),
        seg(14, 14, 28, 28),
        seg(0, 28, 14, 14),
    ]
    hits = []
    for p in result.points[:-1]:
        for k, d in enumerate(diagonals):
            if point_on_segment(p, d):
                hits.append(k)
                break
    assert hits[:8] == [0, 1, 2, 3, 0, 1, 2, 3]


def test_run_empty_program():
    w = two_cell_world()
    sub = build_subdivision(w)
    empty = Program(())
    stuck = run(w, sub, empty, pt(0, 0), 10)
    assert stuck.status == STUCK and stuck.moves == 0
    won = run(w, sub, empty, pt(Fraction(3, 2), 1), 10)
    assert won.status == REACHED and won.moves == 0


def test_run_truncates():
    left = region(0, [pt(0, 0), pt(1, 0), pt(1, 2), pt(0, 2)], ActionCone.of(R, U))
    right = region(1, [pt(1, 0), pt(2, 0), pt(2, 2), pt(1, 2)], ActionCone.of(R, U))
    w = Gridworld(side=Fraction(2), regions=[left, right], initial=pt(0, 0), target_id=1)
    sub = build_subdivision(w)
    # a program that shuffles along the left wall forever
    wall = seg(0, 0, 0, 2)
    program = Program(
        (
            DoUntil(
                (FromInstr(wall, (Target(wall, pt(0, 2)),)),),
                seg(1, 0, 1, 2),
            ),
        )
    )
    result = run(w, sub, program, pt(0, 0), 3)
    assert result.status in (TRUNCATED, STUCK)


def test_run_is_deterministic():
    w = spiral_world()
    sub, branch, program = _program(w, max_depth=300, max_nodes=30000)
    r1 = run(w, sub, program, w.initial, 200)
    r2 = run(w, sub, program, w.initial, 200)
    assert r1.points == r2.points and r1.status == r2.status


def test_every_move_is_legal():
    for w in (two_cell_world(), spiral_world(), double_pass_world()):
        sub, branch, program = _program(w, max_depth=300, max_nodes=30000)
        result = run(w, sub, program, w.initial, 200)
        assert result.status == REACHED
        for a, b in zip(result.points, result.points[1:]):
            assert any(
                r.contains(a) and r.contains(b) and cone_contains(r.actions, b - a)
                for r in w.regions
            )


def test_verify_optimal_fixtures():
    for w in (two_cell_world(), spiral_world(), double_pass_world()):
        sub, branch, program = _program(w, max_depth=300, max_nodes=30000)
        report = verify_optimal(w, sub, program, branch)
        assert report["ok"]
        assert report["run_moves"] == report["branch_moves"] == branch.moves


def test_verify_detects_priority_shuffle():
    w = spiral_world()
    sub, branch, program = _program(w, max_depth=300, max_nodes=30000)
    final = program.blocks[-1]
    shuffled_body = []
    for instr in final.body:
        shuffled_body.append(FromInstr(instr.source, tuple(reversed(instr.alternatives))))
    tampered = Program(program.blocks[:-1] + (DoUntil(tuple(shuffled_body), final.goal),))
    report = verify_optimal(w, sub, tampered, branch)
    ok_run = run(w, sub, tampered, w.initial, 400)
    assert not report["ok"] or ok_run.moves > branch.moves


def test_verify_rejects_foreign_policy():
    w = double_pass_world()
    sub = build_subdivision(w)
    other = two_cell_world()
    sub2, branch2, program2 = _program(other, max_depth=10, max_nodes=100)
    result = run(w, sub, program2, w.initial, 50)
    assert result.status == STUCK


def test_forward_examples():
    w = two_cell_world()
    sub = build_subdivision(w)
    assert forward_min_moves(w, sub, pt(0, 0), 10) == 1
    assert forward_min_moves(w, sub, pt(Fraction(3, 2), 1), 10) == 0
    left = region(0, [pt(0, 0), pt(1, 0), pt(1, 2), pt(0, 2)], ActionCone.of())
    right = region(1, [pt(1, 0), pt(2, 0), pt(2, 2), pt(1, 2)], ActionCone.of())
    dead = Gridworld(side=Fraction(2), regions=[left, right], initial=pt(0, 0), target_id=1)
    dsub = build_subdivision(dead)
    assert forward_min_moves(dead, dsub, pt(0, 0), 10) is None


def test_forward_matches_branch_on_fixtures():
    for w in (two_cell_world(), spiral_world(), double_pass_world()):
        sub = build_subdivision(w)
        tree = build_tree(w, sub, max_depth=300, max_nodes=30000)
        branch = find_branch(tree, w, sub, w.initial)
        assert forward_min_moves(w, sub, w.initial, 100) == branch.moves


def test_go_respects_source_edge_regions():
    # from a vertex shared with an unrelated region, a GO must only cross a
    # region that actually borders the instruction's source edge
    w = double_pass_world()
    sub, branch, program = _program(w, max_depth=50, max_nodes=5000)
    result = run(w, sub, program, w.initial, 50)
    assert result.status == REACHED and result.moves == branch.moves
