"""Brute-force reference search and a random instance generator.

The oracle enumerates unit subsets in increasing size and returns a valid
task tree of minimum unit count, so it is an independent ground truth for
solvability and minimality. It is deliberately naive; keep instances small
(roughly 15 units or fewer).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .model import (
    FunctionalUnit,
    Kitchen,
    MotionNode,
    ObjectNode,
    UniversalFOON,
    object_key,
)
from .retrieval import TaskTree

DEFAULT_NODE_BUDGET = 10**6

_MOTION_LABELS = (
    "pour", "slice", "mix", "stir", "fry", "boil", "chop", "bake", "whisk", "grate",
)


class BudgetExceeded(Exception):
    """Enumeration surpassed the configured node budget."""


def _derivable_keys(units, kitchen):
    """Fixpoint closure: every object key derivable from the kitchen."""
    available = {object_key(item) for item in kitchen.items}
    remaining = list(units)
    changed = True
    while changed and remaining:
        changed = False
        for unit in list(remaining):
            if all(object_key(inp) in available for inp in unit.inputs):
                available.update(object_key(obj) for obj in unit.outputs)
                remaining.remove(unit)
                changed = True
    return available


def _execution_order(subset, kitchen):
    """A feasible execution order of ALL units in subset, or None.

    Deterministic: always emits the lowest-source_index ready unit first.
    If this greedy emission gets stuck, no order exists (executing extra
    units never removes availability).
    """
    available = {object_key(item) for item in kitchen.items}
    remaining = list(subset)
    order = []
    while remaining:
        ready = None
        for unit in remaining:
            if all(object_key(inp) in available for inp in unit.inputs):
                ready = unit
                break
        if ready is None:
            return None
        remaining.remove(ready)
        order.append(ready)
        available.update(object_key(obj) for obj in ready.outputs)
    return order


def oracle_search(
    foon: UniversalFOON,
    goal: ObjectNode,
    kitchen: Kitchen,
    max_units: int | None = None,
    budget: int = DEFAULT_NODE_BUDGET,
) -> TaskTree | None:
    """Exhaustive minimal-tree search. Returns None when no tree exists.

    Subsets are enumerated by size, then lexicographically by source_index
    sequence, so the result is the minimum-count tree with deterministic
    tie-breaking. Raises BudgetExceeded past ``budget`` enumeration steps.
    """
    goal_key = object_key(goal)
    if kitchen.contains_key(goal_key):
        return TaskTree([], goal)
    # If the goal is not derivable with every unit available, no subset
    # can derive it either; skip the exponential enumeration.
    if goal_key not in _derivable_keys(foon.units, kitchen):
        return None

    units = sorted(foon.units, key=lambda unit: unit.source_index)
    limit = len(units) if max_units is None else min(max_units, len(units))
    steps = 0
    for size in range(1, limit + 1):
        for subset in itertools.combinations(units, size):
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f"oracle exceeded {budget} enumeration steps")
            if not any(goal_key in (object_key(o) for o in unit.outputs) for unit in subset):
                continue
            order = _execution_order(subset, kitchen)
            if order is not None:
                return TaskTree(order, goal)
    return None


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for random FOON instances; generation is pure in (config, seed)."""

    max_units: int = 10
    max_branching: int = 3
    max_inputs_per_unit: int = 3
    kitchen_fraction: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if min(self.max_units, self.max_branching, self.max_inputs_per_unit) < 1:
            raise ValueError("all generator counts must be >= 1")
        if not 0.0 <= self.kitchen_fraction <= 1.0:
            raise ValueError("kitchen_fraction must be in [0, 1]")


def generate_instance(cfg: GeneratorConfig):
    """Random (frozen FOON, goal, kitchen) instance.

    The goal is always the output of some unit. When max_branching > 1 and
    at least two units fit, some object gets multiple producers. Kitchen
    items are pruned with probability 1 - kitchen_fraction, which yields a
    mix of solvable and unsolvable instances.
    """
    rng = random.Random(f"{cfg.seed}:{cfg.max_units}:{cfg.max_branching}:"
                        f"{cfg.max_inputs_per_unit}:{cfg.kitchen_fraction}")
    want_branching = cfg.max_branching > 1 and cfg.max_units >= 2
    n_units = rng.randint(2 if want_branching else 1, cfg.max_units)

    base = [ObjectNode(f"base{i}", frozenset({"raw"}))
            for i in range(max(2, cfg.max_inputs_per_unit))]
    foon = UniversalFOON()
    pool = list(base)
    produced: list[ObjectNode] = []
    producer_count: dict[str, int] = {}
    next_id = 0

    def add_unit(output):
        nonlocal next_id
        choices = [obj for obj in pool if object_key(obj) != object_key(output)]
        k_in = rng.randint(1, min(cfg.max_inputs_per_unit, len(choices)))
        inputs = rng.sample(choices, k_in)
        unit = FunctionalUnit(inputs, MotionNode(rng.choice(_MOTION_LABELS)), [output])
        if not foon.insert(unit):
            return False
        key = object_key(output)
        if producer_count.get(key, 0) == 0:
            produced.append(output)
            pool.append(output)
        producer_count[key] = producer_count.get(key, 0) + 1
        return True

    target = n_units - 1 if want_branching else n_units
    attempts = 0
    while len(foon.units) < target and attempts < 50 * n_units:
        attempts += 1
        reusable = [obj for obj in produced
                    if producer_count[object_key(obj)] < cfg.max_branching]
        if reusable and rng.random() < 0.35:
            output = rng.choice(reusable)
        else:
            output = ObjectNode(f"item{next_id}", frozenset({"made"}))
            next_id += 1
        add_unit(output)

    if want_branching and not any(count > 1 for count in producer_count.values()):
        # Force at least one object with multiple producers.
        candidates = [obj for obj in produced
                      if producer_count[object_key(obj)] < cfg.max_branching]
        forced = False
        for _ in range(50):
            output = rng.choice(candidates) if candidates else rng.choice(produced)
            if add_unit(output):
                forced = True
                break
        if not forced:
            add_unit(ObjectNode(f"item{next_id}", frozenset({"made"})))

    goal = rng.choice(produced)
    kitchen = Kitchen(obj for obj in base if rng.random() < cfg.kitchen_fraction)
    foon.freeze()
    return foon, goal, kitchen
