"""FOON task-tree retrieval: model, parsing, merging, and search."""

from .merge import merge, merge_stats
from .model import (
    FunctionalUnit,
    Kitchen,
    MotionNode,
    MotionRateTable,
    ObjectNode,
    SearchStats,
    UniversalFOON,
    insert_unit,
    object_key,
    unit_equals,
    units_producing,
)
from .oracle import BudgetExceeded, GeneratorConfig, generate_instance, oracle_search
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
    FailureReason,
    SearchOutcome,
    TaskTree,
    search_gbfs_inputs,
    search_gbfs_rate,
    search_ids,
    tree_size,
    validate_task_tree,
)

__all__ = [
    "BudgetExceeded",
    "FailureReason",
    "FunctionalUnit",
    "GeneratorConfig",
    "Kitchen",
    "MotionNode",
    "MotionRateTable",
    "ObjectNode",
    "ParseError",
    "SearchOutcome",
    "SearchStats",
    "SubgraphDocument",
    "TaskTree",
    "UniversalFOON",
    "generate_instance",
    "insert_unit",
    "merge",
    "merge_stats",
    "object_key",
    "oracle_search",
    "parse_goal",
    "parse_kitchen",
    "parse_rates",
    "parse_subgraph",
    "search_gbfs_inputs",
    "search_gbfs_rate",
    "search_ids",
    "serialize_subgraph",
    "tree_size",
    "unit_equals",
    "units_producing",
    "validate_task_tree",
]
