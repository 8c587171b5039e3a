"""Command-line pipeline: generate, synthesize, verify, export, bench.

Exit codes: 0 success, 1 usage or I/O error, 2 unwinnable instance,
3 tree truncated before finding the initial state, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from typing import List, Optional

from . import dsl, render, worlds
from .arrangement import generate_random
from .geometry import Point, pt
from .reachtree import build_tree, find_branch, to_dot
from .runtime import REACHED, run, verify_optimal
from .subdivision import build_subdivision
from .synth import synthesize
from .world import Gridworld, ParseError, load, save, validate, export_prism

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNWINNABLE = 2
EXIT_TRUNCATED = 3
EXIT_VERIFY = 4

BENCH_FIELDS = [
    "name",
    "gridworld_bytes",
    "policy_bytes",
    "policy_instructions",
    "regions",
    "tree_nodes",
    "branch_moves",
    "wall_time_ms",
]


def _default_seed(value: int) -> int:
    env = os.environ.get("GRIDPOLICY_SEED")
    return int(env) if env else value


def _read_world(path: str) -> Gridworld:
    with open(path, "r", encoding="utf-8") as fh:
        return load(fh.read())


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_generate(args) -> int:
    world = generate_random(
        args.n,
        args.predicates,
        _default_seed(args.seed),
        interior_initial=args.interior_initial,
        allow_empty_cones=args.allow_empty_cones,
    )
    problems = validate(world)
    if problems:
        print(f"generated world is invalid: {problems[0]}", file=sys.stderr)
        return EXIT_USAGE
    _write(args.out, save(world))
    print(f"{len(world.regions)} regions", file=sys.stderr)
    return EXIT_OK


def _pipeline(world, max_depth=None, max_nodes=None, stop_at_initial=True):
    sub = build_subdivision(world)
    tree = build_tree(
        world,
        sub,
        max_depth=max_depth,
        max_nodes=max_nodes,
        stop_at=world.initial if stop_at_initial else None,
    )
    branch = find_branch(tree, world, sub, world.initial)
    return sub, tree, branch


def cmd_synthesize(args) -> int:
    world = _read_world(args.world)
    sub, tree, branch = _pipeline(world, args.max_depth, args.max_nodes)
    if branch is None:
        status = EXIT_TRUNCATED if tree.status == "truncated" else EXIT_UNWINNABLE
        word = "truncated" if status == EXIT_TRUNCATED else "unwinnable"
        print(f"{word}: tree {tree.status} after {tree.node_count} nodes", file=sys.stderr)
        return status
    program = synthesize(branch, world, sub)
    text = dsl.print_program(program)
    _write(args.out, text)
    size = dsl.program_size(program)
    print(
        f"tree nodes {tree.node_count}, branch p {branch.p}, "
        f"instructions {size['instructions']}, bytes {size['bytes']}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    world = _read_world(args.world)
    with open(args.policy, "r", encoding="utf-8") as fh:
        program = dsl.parse(fh.read())
    sub = build_subdivision(world)
    result = run(world, sub, program, world.initial, args.max_moves)
    if args.trajectory_out:
        _write(args.trajectory_out, "".join(f"{p}\n" for p in result.points))
    if result.status == REACHED:
        print(f"Reached in {result.moves} moves")
        return EXIT_OK
    print(f"{result.status} after {result.moves} moves at {result.final}")
    return EXIT_VERIFY


def _read_trajectory(path: str) -> List[Point]:
    pts = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip().strip("()")
            if not line:
                continue
            x, y = line.split(",")
            pts.append(pt(x.strip(), y.strip()))
    return pts


def cmd_export(args) -> int:
    world = _read_world(args.world)
    if args.prism is not None:
        _write(args.out, export_prism(world, args.prism))
    elif args.svg:
        trajectory = _read_trajectory(args.trajectory) if args.trajectory else None
        _write(args.out, render.render_svg(world, trajectory))
    elif args.dot:
        sub, tree, _ = _pipeline(world, stop_at_initial=False)
        _write(args.out, to_dot(tree))
    else:
        print("choose one of --prism/--svg/--dot", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def default_suite():
    suite = [("spiral", "builtin"), ("one_triangle_two_pass", "builtin")]
    suite.append(("size3preds5loopy", (3, 5, 2)))
    suite.append(("size50preds10-1", (50, 10, 1)))
    suite.append(("size50preds10-2", (50, 10, 2)))
    suite.append(("size50preds20-1", (50, 20, 1)))
    suite.append(("size100preds20-1", (100, 20, 1)))
    suite.append(("size100preds20-2", (100, 20, 2)))
    for k in range(1, 5):
        suite.append((f"size100preds30-{k}", (100, 30, k)))
    for k in range(1, 6):
        suite.append((f"size100preds50-{k}", (100, 50, k)))
    return suite


def _suite_world(name, spec) -> Gridworld:
    if spec == "builtin":
        return {
            "spiral": worlds.spiral_world,
            "one_triangle_two_pass": worlds.double_pass_world,
        }[name]()
    n, preds, seed = spec
    return generate_random(n, preds, seed)


def read_suite_file(path: str):
    suite = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 2 and parts[1] == "builtin":
                suite.append((parts[0], "builtin"))
            elif len(parts) == 4:
                suite.append((parts[0], (int(parts[1]), int(parts[2]), int(parts[3]))))
            else:
                raise ValueError(f"bad suite line: {raw.rstrip()}")
    return suite


def bench_instance(name: str, world: Gridworld, max_nodes: int) -> dict:
    t0 = time.perf_counter()
    record = {f: "" for f in BENCH_FIELDS}
    record["name"] = name
    record["gridworld_bytes"] = len(save(world).encode("utf-8"))
    record["regions"] = len(world.regions)
    sub, tree, branch = _pipeline(world, max_nodes=max_nodes)
    record["tree_nodes"] = tree.node_count
    if branch is not None:
        program = synthesize(branch, world, sub)
        check = verify_optimal(world, sub, program, branch)
        size = dsl.program_size(program)
        record["policy_bytes"] = size["bytes"]
        record["policy_instructions"] = size["instructions"]
        record["branch_moves"] = branch.moves
    record["wall_time_ms"] = int((time.perf_counter() - t0) * 1000)
    return record


def cmd_bench(args) -> int:
    suite = read_suite_file(args.suite) if args.suite else default_suite()
    rows = []
    for name, spec in suite:
        try:
            world = _suite_world(name, spec)
            rows.append(bench_instance(name, world, args.max_nodes))
        except Exception as exc:  # a broken instance must not sink the suite
            row = {f: "" for f in BENCH_FIELDS}
            row["name"] = name
            row["wall_time_ms"] = f"error: {exc}"
            rows.append(row)
        print(f"{rows[-1]['name']}: {rows[-1]}", file=sys.stderr)
    out = args.out or "-"
    if out == "-":
        writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    else:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=BENCH_FIELDS)
            writer.writeheader()
            writer.writerows(rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridpolicy",
        description="Optimal programmatic policies for polygonal gridworlds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a random world from linear predicates")
    g.add_argument("-n", type=int, required=True, help="grid side length")
    g.add_argument("-p", "--predicates", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--interior-initial", action="store_true")
    g.add_argument("--allow-empty-cones", action="store_true")
    g.add_argument("-o", "--out", default="-")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("synthesize", help="tree + branch + policy for a world file")
    s.add_argument("world")
    s.add_argument("-o", "--out", default="-")
    s.add_argument("--max-depth", type=int, default=None)
    s.add_argument("--max-nodes", type=int, default=None)
    s.set_defaults(func=cmd_synthesize)

    v = sub.add_parser("verify", help="run a policy file against a world file")
    v.add_argument("world")
    v.add_argument("policy")
    v.add_argument("--max-moves", type=int, default=10000)
    v.add_argument("-t", "--trajectory-out", default=None)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="emit PRISM, SVG, or DOT artifacts")
    e.add_argument("world")
    e.add_argument("--prism", type=int, default=None, metavar="RESOLUTION")
    e.add_argument("--svg", action="store_true")
    e.add_argument("--trajectory", default=None, help="trajectory file for --svg")
    e.add_argument("--dot", action="store_true")
    e.add_argument("-o", "--out", default="-")
    e.set_defaults(func=cmd_export)

    b = sub.add_parser("bench", help="run the benchmark suite to CSV")
    b.add_argument("--suite", default=None, help="suite file (default: built-in 17)")
    b.add_argument("--max-nodes", type=int, default=20000)
    b.add_argument("-o", "--out", default="-")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (OSError, ParseError, dsl.DslError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
