"""Combine subgraphs into a universal FOON: union with duplicate removal."""
from __future__ import annotations

import dataclasses

from .model import UniversalFOON


def merge(subgraphs) -> UniversalFOON:
    """Union all functional units, dropping duplicates.

    Documents are visited in order and units in file order, so
    source_index reflects first-encounter order. Units are copied so the
    source documents keep their own ordinals. The result is frozen.
    """
    foon = UniversalFOON()
    for doc in subgraphs:
        for unit in doc.units:
            foon.insert(dataclasses.replace(unit, source_index=-1))
    return foon.freeze()


def merge_stats(subgraphs, result: UniversalFOON):
    """(total input units, duplicates removed) for a merge result."""
    total = sum(len(doc.units) for doc in subgraphs)
    return total, total - len(result.units)
