"""Task-tree retrieval: iterative deepening search and two greedy heuristics.

All three algorithms search backwards from the goal object. A candidate
unit for an object is any unit producing it; a unit is usable once every
input is in the kitchen or derivable. IDS explores with an increasing
depth bound and backtracks; the greedy searches commit to one candidate
per object (best motion rate, or fewest inputs) and never backtrack, so
they can fail on instances IDS solves.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .model import (
    FunctionalUnit,
    Kitchen,
    MotionRateTable,
    ObjectNode,
    SearchStats,
    UniversalFOON,
    object_key,
)

DEFAULT_MAX_DEPTH = 50


class FailureReason(enum.Enum):
    GOAL_UNREACHABLE = "GoalUnreachable"
    DEPTH_EXHAUSTED = "DepthExhausted"
    UNSATISFIED_LEAVES = "UnsatisfiedLeaves"


@dataclass
class TaskTree:
    """An executable sequence of functional units yielding the goal."""

    units: list
    goal: ObjectNode
    stats: SearchStats = field(default_factory=SearchStats)


@dataclass
class SearchFailure:
    reason: FailureReason
    blocked_objects: list
    stats: SearchStats = field(default_factory=SearchStats)


@dataclass
class SearchOutcome:
    """Exactly one of ``tree`` / ``failure`` is set."""

    tree: TaskTree | None = None
    failure: SearchFailure | None = None

    @property
    def ok(self) -> bool:
        return self.tree is not None


@dataclass
class ValidationReport:
    ok: bool
    position: int | None = None
    obj: ObjectNode | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def tree_size(tree: TaskTree) -> int:
    return len(tree.units)


def validate_task_tree(tree: TaskTree, kitchen: Kitchen, goal: ObjectNode) -> ValidationReport:
    """Check executable order and that the tree actually yields the goal.

    Reports the first violating (position, object) on failure.
    """
    available = {object_key(item) for item in kitchen.items}
    for position, unit in enumerate(tree.units):
        for obj in unit.inputs:
            if object_key(obj) not in available:
                return ValidationReport(
                    False, position, obj,
                    f"input {object_key(obj)!r} of unit {position} is not available",
                )
        available.update(object_key(obj) for obj in unit.outputs)
    produced = set()
    for unit in tree.units:
        produced.update(object_key(obj) for obj in unit.outputs)
    goal_key = object_key(goal)
    if goal_key not in produced and not kitchen.contains_key(goal_key):
        return ValidationReport(False, None, goal, "goal is neither produced nor in the kitchen")
    return ValidationReport(True)


def _dedup_units(units) -> list:
    seen = set()
    result = []
    for unit in units:
        ident = unit.identity()
        if ident not in seen:
            seen.add(ident)
            result.append(unit)
    return result


def search_ids(
    foon: UniversalFOON,
    goal: ObjectNode,
    kitchen: Kitchen,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> SearchOutcome:
    """Iterative deepening backward search.

    For each depth bound d = 0..max_depth, run a depth-limited DFS:
    an object is solved if it is in the kitchen, otherwise each producing
    unit is tried in insertion order, solving every input with budget
    d - 1 (first success wins). Units are emitted post-order (dependencies
    first) and deduplicated. A DFS path carries the set of in-progress
    object keys so cyclic knowledge cannot loop the search.
    """
    stats = SearchStats()
    goal_key = object_key(goal)
    if not kitchen.contains_key(goal_key) and not foon.producing(goal):
        return SearchOutcome(failure=SearchFailure(
            FailureReason.GOAL_UNREACHABLE, [goal], stats))

    dead_ends: dict[str, ObjectNode] = {}
    depth_limit_hit = False

    def solve(obj, budget, path, level):
        nonlocal depth_limit_hit
        key = object_key(obj)
        if kitchen.contains_key(key):
            return []
        stats.object_visits[key] = stats.object_visits.get(key, 0) + 1
        stats.max_stack_depth = max(stats.max_stack_depth, level)
        if budget == 0:
            depth_limit_hit = True
            return None
        candidates = foon.producing(obj)
        if not candidates:
            dead_ends[key] = obj
            return None
        inner_path = path | {key}
        for unit in candidates:
            stats.per_depth_expansions[-1] += 1
            if any(object_key(inp) in inner_path for inp in unit.inputs):
                continue
            collected = []
            solved_all = True
            for inp in unit.inputs:
                sub = solve(inp, budget - 1, inner_path, level + 1)
                if sub is None:
                    solved_all = False
                    break
                collected.extend(sub)
            if solved_all:
                collected.append(unit)
                return collected
        return None

    for depth in range(max_depth + 1):
        stats.per_depth_expansions.append(0)
        stats.depth_limit_reached = depth
        dead_ends.clear()
        depth_limit_hit = False
        result = solve(goal, depth, frozenset(), 0)
        if result is not None:
            stats.expansions = sum(stats.per_depth_expansions)
            return SearchOutcome(tree=TaskTree(_dedup_units(result), goal, stats))
        if not depth_limit_hit:
            # The failure did not touch the depth bound, so no deeper
            # iteration can succeed: the goal is structurally unreachable.
            stats.expansions = sum(stats.per_depth_expansions)
            return SearchOutcome(failure=SearchFailure(
                FailureReason.GOAL_UNREACHABLE,
                sorted(dead_ends.values(), key=object_key) or [goal],
                stats))
    stats.expansions = sum(stats.per_depth_expansions)
    return SearchOutcome(failure=SearchFailure(
        FailureReason.DEPTH_EXHAUSTED,
        sorted(dead_ends.values(), key=object_key) or [goal],
        stats))


def _dependency_sort(selected, kitchen):
    """Stable executable ordering of the greedy selection.

    Repeatedly emits the earliest-discovered unit whose inputs are all
    available (kitchen plus outputs of already-emitted units). Returns
    (ordered units, blocked objects); blocked is non-empty when the
    selection cannot be made executable.
    """
    available = {object_key(item) for item in kitchen.items}
    remaining = list(selected)
    ordered = []
    while remaining:
        ready = None
        for unit in remaining:
            if all(object_key(inp) in available for inp in unit.inputs):
                ready = unit
                break
        if ready is None:
            blocked = {}
            for unit in remaining:
                for inp in unit.inputs:
                    key = object_key(inp)
                    if key not in available:
                        blocked.setdefault(key, inp)
            return ordered, sorted(blocked.values(), key=object_key)
        remaining.remove(ready)
        ordered.append(ready)
        available.update(object_key(obj) for obj in ready.outputs)
    return ordered, []


def _search_greedy(foon, goal, kitchen, selection_key) -> SearchOutcome:
    stats = SearchStats()
    goal_key = object_key(goal)
    if kitchen.contains_key(goal_key):
        stats.per_depth_expansions = [0]
        return SearchOutcome(tree=TaskTree([], goal, stats))

    queue = deque([goal])
    visited = {goal_key}
    selected = []
    selected_identities = set()
    blocked: dict[str, ObjectNode] = {}
    while queue:
        node = queue.popleft()
        node_key = object_key(node)
        if kitchen.contains_key(node_key):
            continue
        candidates = foon.producing(node)
        stats.expansions += len(candidates)
        stats.object_visits[node_key] = stats.object_visits.get(node_key, 0) + 1
        if not candidates:
            blocked.setdefault(node_key, node)
            continue
        best = min(candidates, key=lambda unit: (selection_key(unit), unit.source_index))
        if best.identity() not in selected_identities:
            selected_identities.add(best.identity())
            selected.append(best)
        for inp in best.inputs:
            key = object_key(inp)
            if key not in visited:
                visited.add(key)
                queue.append(inp)

    stats.per_depth_expansions = [stats.expansions]
    if blocked:
        reason = (FailureReason.GOAL_UNREACHABLE if goal_key in blocked
                  else FailureReason.UNSATISFIED_LEAVES)
        return SearchOutcome(failure=SearchFailure(
            reason, sorted(blocked.values(), key=object_key), stats))

    selected.reverse()
    # Discovery order is the tie-break for the dependency sort, so restore it.
    ordered, sort_blocked = _dependency_sort(list(reversed(selected)), kitchen)
    if sort_blocked:
        return SearchOutcome(failure=SearchFailure(
            FailureReason.UNSATISFIED_LEAVES, sort_blocked, stats))
    tree = TaskTree(ordered, goal, stats)
    report = validate_task_tree(tree, kitchen, goal)
    if not report:
        return SearchOutcome(failure=SearchFailure(
            FailureReason.UNSATISFIED_LEAVES,
            [report.obj] if report.obj is not None else [goal], stats))
    return SearchOutcome(tree=tree)


def search_gbfs_rate(
    foon: UniversalFOON,
    goal: ObjectNode,
    kitchen: Kitchen,
    rates: MotionRateTable | None = None,
) -> SearchOutcome:
    """Greedy best-first retrieval choosing the candidate with the highest
    motion success rate (ties to the lowest source_index)."""
    table = rates if rates is not None else MotionRateTable()
    return _search_greedy(foon, goal, kitchen, lambda unit: -table.rate(unit.motion.label))


def search_gbfs_inputs(
    foon: UniversalFOON,
    goal: ObjectNode,
    kitchen: Kitchen,
) -> SearchOutcome:
    """Greedy best-first retrieval choosing the candidate with the fewest
    input nodes (ties to the lowest source_index)."""
    return _search_greedy(foon, goal, kitchen, lambda unit: len(unit.inputs))
