"""Command-line front end: merge subgraphs, retrieve task trees, bench, export DOT."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .dot import to_dot
from .merge import merge, merge_stats
from .model import Kitchen, MotionRateTable, object_key
from .parser import (
    ParseError,
    SubgraphDocument,
    parse_goal,
    parse_kitchen,
    parse_rates,
    parse_subgraph,
    serialize_subgraph,
)
from .retrieval import (
    DEFAULT_MAX_DEPTH,
    search_gbfs_inputs,
    search_gbfs_rate,
    search_ids,
    tree_size,
)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NO_SOLUTION = 2

BENCH_HEADER = "goal\tids\th1\th2\tids_ms\th1_ms\th2_ms\tids_exp\th1_exp\th2_exp"


class _InputError(Exception):
    pass


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}")


def _parse_file(path, parse_fn):
    try:
        return parse_fn(_read(path))
    except ParseError as exc:
        raise _InputError(f"{path}:{exc.line_number or '?'}: {exc}")


def _load_foon(path):
    doc = _parse_file(path, parse_subgraph)
    return merge([doc])


def _load_kitchen(path):
    if path is None:
        return Kitchen()
    return _parse_file(path, parse_kitchen)


def _load_rates(path):
    if path is None:
        return MotionRateTable()
    return _parse_file(path, parse_rates)


def _run_algo(algo, foon, goal, kitchen, rates, max_depth):
    if algo == "ids":
        return search_ids(foon, goal, kitchen, max_depth=max_depth)
    if algo == "gbfs-rate":
        return search_gbfs_rate(foon, goal, kitchen, rates)
    if algo == "gbfs-inputs":
        return search_gbfs_inputs(foon, goal, kitchen)
    raise _InputError(f"unknown algorithm: {algo}")


def cmd_merge(args) -> int:
    docs = [
        _parse_file(path, lambda text, p=path: parse_subgraph(text, source_path=p))
        for path in args.inputs
    ]
    foon = merge(docs)
    total, duplicates = merge_stats(docs, foon)
    Path(args.out).write_text(
        serialize_subgraph(SubgraphDocument(units=foon.units)), encoding="utf-8")
    print(f"units: {len(foon.units)}")
    print(f"input units: {total}")
    print(f"duplicates removed: {duplicates}")
    return EXIT_OK


def cmd_search(args) -> int:
    foon = _load_foon(args.foon)
    kitchen = _load_kitchen(args.kitchen)
    rates = _load_rates(args.rates)
    try:
        goal = parse_goal(args.goal)
    except ParseError as exc:
        raise _InputError(f"goal: {exc}")
    outcome = _run_algo(args.algo, foon, goal, kitchen, rates, args.max_depth)
    if not outcome.ok:
        failure = outcome.failure
        blocked = ", ".join(object_key(obj) for obj in failure.blocked_objects)
        print(f"no solution: {failure.reason.value}", file=sys.stderr)
        print(f"blocked objects: {blocked}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    tree = outcome.tree
    Path(args.out).write_text(
        serialize_subgraph(SubgraphDocument(units=tree.units)), encoding="utf-8")
    print(f"size: {tree_size(tree)}")
    print(f"expansions: {tree.stats.expansions}")
    print(f"max stack depth: {tree.stats.max_stack_depth}")
    print(f"depth limit reached: {tree.stats.depth_limit_reached}")
    return EXIT_OK


def _bench_goal(spec, foon, kitchen, rates, max_depth):
    goal = parse_goal(spec)
    sizes, times, expansions = [], [], []
    any_success = False
    for algo in ("ids", "gbfs-rate", "gbfs-inputs"):
        started = time.perf_counter()
        outcome = _run_algo(algo, foon, goal, kitchen, rates, max_depth)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        times.append(f"{elapsed_ms:.3f}")
        stats = outcome.tree.stats if outcome.ok else outcome.failure.stats
        expansions.append(str(stats.expansions))
        sizes.append(str(tree_size(outcome.tree)) if outcome.ok else "-")
        any_success = any_success or outcome.ok
    return "\t".join([spec] + sizes + times + expansions), any_success


def cmd_bench(args) -> int:
    foon = _load_foon(args.foon)
    kitchen = _load_kitchen(args.kitchen)
    rates = _load_rates(args.rates)
    goal_specs = [
        line.strip() for line in _read(args.goals).splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    rows = [BENCH_HEADER]
    successes = 0
    for spec in goal_specs:
        try:
            row, ok = _bench_goal(spec, foon, kitchen, rates, args.max_depth)
        except ParseError as exc:
            raise _InputError(f"goal {spec!r}: {exc}")
        rows.append(row)
        successes += ok
    Path(args.out).write_text("\n".join(rows) + "\n", encoding="utf-8")
    for row in rows:
        print(row)
    if goal_specs and not successes:
        return EXIT_NO_SOLUTION
    return EXIT_OK


def cmd_dot(args) -> int:
    doc = _parse_file(args.foon, parse_subgraph)
    for index, unit in enumerate(doc.units):
        unit.source_index = index
    Path(args.out).write_text(to_dot(doc.units), encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foon",
        description="Build a universal FOON and retrieve task trees for goal objects.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_merge = sub.add_parser("merge", help="merge subgraph files into a universal FOON")
    p_merge.add_argument("inputs", nargs="+", help="subgraph files to merge")
    p_merge.add_argument("--out", required=True, help="output path for the merged FOON")
    p_merge.set_defaults(func=cmd_merge)

    p_search = sub.add_parser("search", help="retrieve a task tree for a goal object")
    p_search.add_argument("--foon", required=True, help="universal FOON file")
    p_search.add_argument("--goal", required=True,
                          help="goal spec: name[;states[;ingredients]]")
    p_search.add_argument("--kitchen", help="kitchen file (default: empty kitchen)")
    p_search.add_argument("--algo", default="ids",
                          choices=["ids", "gbfs-rate", "gbfs-inputs"])
    p_search.add_argument("--rates", help="motion success-rate file")
    p_search.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p_search.add_argument("--out", required=True, help="output path for the task tree")
    p_search.set_defaults(func=cmd_search)

    p_bench = sub.add_parser("bench", help="compare the three algorithms over a goal list")
    p_bench.add_argument("--foon", required=True)
    p_bench.add_argument("--kitchen")
    p_bench.add_argument("--goals", required=True, help="file with one goal spec per line")
    p_bench.add_argument("--rates")
    p_bench.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p_bench.add_argument("--out", required=True, help="output TSV path")
    p_bench.set_defaults(func=cmd_bench)

    p_dot = sub.add_parser("dot", help="export a FOON or task tree as Graphviz DOT")
    p_dot.add_argument("--foon", required=True, help="subgraph-format input file")
    p_dot.add_argument("--out", required=True, help="output DOT path")
    p_dot.set_defaults(func=cmd_dot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
