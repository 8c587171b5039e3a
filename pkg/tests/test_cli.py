import csv
import io
import os

import pytest

from gridpolicy import load, save
from gridpolicy.cli import (
    EXIT_OK,
    EXIT_TRUNCATED,
    EXIT_UNWINNABLE,
    EXIT_USAGE,
    EXIT_VERIFY,
    default_suite,
    main,
)
from gridpolicy.geometry import ActionCone
from gridpolicy.world import Gridworld, region
from gridpolicy.worlds import spiral_world, two_cell_world
from gridpolicy.geometry import pt


@pytest.fixture
def spiral_path(tmp_path):
    p = tmp_path / "spiral.grid"
    p.write_text(save(spiral_world()))
    return str(p)


@pytest.fixture
def two_cell_path(tmp_path):
    p = tmp_path / "two.grid"
    p.write_text(save(two_cell_world()))
    return str(p)


def test_generate_writes_file(tmp_path, capsys):
    out = tmp_path / "w.grid"
    assert main(["generate", "-n", "3", "-p", "2", "--seed", "5", "-o", str(out)]) == EXIT_OK
    world = load(out.read_text())
    assert len(world.regions) >= 2
    assert "regions" in capsys.readouterr().err


def test_generate_rejects_n_zero():
    assert main(["generate", "-n", "0", "-p", "1"]) == EXIT_USAGE


def test_generate_seed_env_override(tmp_path):
    a, b = tmp_path / "a.grid", tmp_path / "b.grid"
    os.environ["GRIDPOLICY_SEED"] = "7"
    try:
        main(["generate", "-n", "4", "-p", "3", "--seed", "1", "-o", str(a)])
    finally:
        del os.environ["GRIDPOLICY_SEED"]
    main(["generate", "-n", "4", "-p", "3", "--seed", "7", "-o", str(b)])
    assert a.read_text() == b.read_text()


def test_synthesize_verify_round_trip(tmp_path, spiral_path, capsys):
    policy = tmp_path / "spiral.policy"
    assert main(["synthesize", spiral_path, "-o", str(policy)]) == EXIT_OK
    assert "branch p 26" in capsys.readouterr().err
    assert main(["verify", spiral_path, str(policy)]) == EXIT_OK
    assert "Reached in 25 moves" in capsys.readouterr().out


def test_synthesize_unwinnable(tmp_path):
    left = region(0, [pt(0, 0), pt(1, 0), pt(1, 2), pt(0, 2)], ActionCone.of())
    right = region(1, [pt(1, 0), pt(2, 0), pt(2, 2), pt(1, 2)], ActionCone.of())
    w = Gridworld(side=pt(2, 0).x, regions=[left, right], initial=pt(0, 0), target_id=1)
    path = tmp_path / "dead.grid"
    path.write_text(save(w))
    assert main(["synthesize", str(path), "-o", str(tmp_path / "p")]) == EXIT_UNWINNABLE
    assert not (tmp_path / "p").exists()


def test_synthesize_truncated(tmp_path, spiral_path):
    code = main(
        ["synthesize", spiral_path, "-o", str(tmp_path / "p"), "--max-nodes", "4", "--max-depth", "2"]
    )
    assert code == EXIT_TRUNCATED


def test_verify_foreign_policy_fails(tmp_path, spiral_path, two_cell_path):
    policy = tmp_path / "two.policy"
    assert main(["synthesize", two_cell_path, "-o", str(policy)]) == EXIT_OK
    assert main(["verify", spiral_path, str(policy)]) == EXIT_VERIFY


def test_verify_trajectory_output(tmp_path, two_cell_path):
    policy = tmp_path / "p.policy"
    traj = tmp_path / "t.txt"
    main(["synthesize", two_cell_path, "-o", str(policy)])
    assert main(["verify", two_cell_path, str(policy), "-t", str(traj)]) == EXIT_OK
    lines = traj.read_text().strip().splitlines()
    assert lines == ["(0,0)", "(1,0)"]


def test_export_prism(tmp_path, two_cell_path):
    out = tmp_path / "m.prism"
    assert main(["export", two_cell_path, "--prism", "1", "-o", str(out)]) == EXIT_OK
    text = out.read_text()
    assert text.count("// region") == 2
    assert 'label "target"' in text


def test_export_svg_with_trajectory(tmp_path, spiral_path):
    policy = tmp_path / "p.policy"
    traj = tmp_path / "t.txt"
    svg = tmp_path / "w.svg"
    main(["synthesize", spiral_path, "-o", str(policy)])
    main(["verify", spiral_path, str(policy), "-t", str(traj)])
    assert main(["export", spiral_path, "--svg", "--trajectory", str(traj), "-o", str(svg)]) == EXIT_OK
    text = svg.read_text()
    assert text.count("<polyline") == 1
    assert text.count("<polygon") >= 5  # regions plus arrowheads
    assert "</svg>" in text


def test_export_dot_two_cell(tmp_path, two_cell_path):
    out = tmp_path / "t.dot"
    assert main(["export", two_cell_path, "--dot", "-o", str(out)]) == EXIT_OK
    text = out.read_text()
    # root plus the 4 target-edge children plus 3 grandchildren
    assert text.count("shape=box") == 7
    assert "root" in text


def test_export_requires_a_format(two_cell_path):
    assert main(["export", two_cell_path]) == EXIT_USAGE


def test_bench_empty_suite(tmp_path):
    suite = tmp_path / "suite.txt"
    suite.write_text("# nothing here\n")
    out = tmp_path / "bench.csv"
    assert main(["bench", "--suite", str(suite), "-o", str(out)]) == EXIT_OK
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows == [
        [
            "name",
            "gridworld_bytes",
            "policy_bytes",
            "policy_instructions",
            "regions",
            "tree_nodes",
            "branch_moves",
            "wall_time_ms",
        ]
    ]


def test_bench_small_suite(tmp_path, capsys):
    suite = tmp_path / "suite.txt"
    suite.write_text("spiral builtin\ntiny 3 3 1\n")
    out = tmp_path / "bench.csv"
    assert main(["bench", "--suite", str(suite), "-o", str(out)]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert [r["name"] for r in rows] == ["spiral", "tiny"]
    spiral_row = rows[0]
    assert int(spiral_row["regions"]) == 5
    assert int(spiral_row["policy_instructions"]) > 0
    assert int(spiral_row["branch_moves"]) == 25


def test_default_suite_has_seventeen_instances():
    assert len(default_suite()) == 17
    names = [name for name, _ in default_suite()]
    assert "spiral" in names and "one_triangle_two_pass" in names


def test_missing_file_is_usage_error(tmp_path):
    assert main(["synthesize", str(tmp_path / "nope.grid")]) == EXIT_USAGE
