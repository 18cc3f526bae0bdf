"""Core FOON domain types.

A FOON is a bipartite graph of object nodes and motion nodes. Its atomic
element is the functional unit: input objects, one motion, output objects.
Everything downstream (merging, retrieval) keys off the canonical identity
rules defined here.
"""
from __future__ import annotations

from dataclasses import dataclass, field

# Reserved separators for canonical identity keys. Object names, states and
# ingredients must not contain them; the parser never produces tokens that do.
_KEY_SEP = "|"
_ITEM_SEP = ";"


def _norm(token: str) -> str:
    return token.strip().lower()


@dataclass(frozen=True)
class ObjectNode:
    """An object identified by name, state set and contained ingredients.

    ``motion_tag`` is the per-object flag column from the source files;
    it is carried for round-trip fidelity but excluded from identity.
    """

    name: str
    states: frozenset = frozenset()
    ingredients: frozenset = frozenset()
    motion_tag: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "name", _norm(self.name))
        object.__setattr__(self, "states", frozenset(_norm(s) for s in self.states))
        object.__setattr__(
            self, "ingredients", frozenset(_norm(i) for i in self.ingredients)
        )
        if not self.name:
            raise ValueError("object name must be non-empty")


@dataclass(frozen=True)
class MotionNode:
    """A motion label, optionally carrying source-video timestamps.

    Identity is label-only; timestamps never affect equality.
    """

    label: str
    start_time: str | None = field(default=None, compare=False)
    end_time: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "label", _norm(self.label))
        if not self.label:
            raise ValueError("motion label must be non-empty")


def _encode(token: str) -> str:
    # Escape the reserved separators and mark the (legal) empty state so the
    # key stays injective: {""} must not collide with the empty set.
    if token == "":
        return "\\e"
    return token.replace("\\", "\\\\").replace(_KEY_SEP, "\\|").replace(_ITEM_SEP, "\\;")


def object_key(obj: ObjectNode) -> str:
    """Canonical identity string for an object node.

    Equal keys iff identical objects: name, sorted states, sorted
    ingredients. motion_tag is deliberately excluded.
    """
    return _KEY_SEP.join(
        (
            _encode(obj.name),
            _ITEM_SEP.join(_encode(s) for s in sorted(obj.states)),
            _ITEM_SEP.join(_encode(i) for i in sorted(obj.ingredients)),
        )
    )


@dataclass
class FunctionalUnit:
    """Input objects + one motion + output objects; the atomic planning operator.

    ``source_index`` is the insertion ordinal assigned by UniversalFOON;
    -1 until inserted. It never participates in equality.
    """

    inputs: list
    motion: MotionNode
    outputs: list
    source_index: int = -1

    def __post_init__(self):
        if not self.inputs or not self.outputs:
            raise ValueError("functional unit needs at least one input and one output")

    def identity(self):
        """Hashable identity: input key set, motion label, output key set."""
        return (
            frozenset(object_key(o) for o in self.inputs),
            self.motion.label,
            frozenset(object_key(o) for o in self.outputs),
        )


def unit_equals(a: FunctionalUnit, b: FunctionalUnit) -> bool:
    """True iff the units are duplicates: same input set, output set and motion label."""
    return a.identity() == b.identity()


class UniversalFOON:
    """Deduplicated collection of functional units with a producing-unit index.

    Mutable only during construction; call :meth:`freeze` before sharing
    with concurrent searches.
    """

    def __init__(self):
        self.units: list[FunctionalUnit] = []
        self.producers: dict[str, list[FunctionalUnit]] = {}
        self._identities = set()
        self._frozen = False

    def insert(self, unit: FunctionalUnit) -> bool:
        """Insert ``unit`` unless an equal unit already exists.

        Returns True if inserted, False if duplicate.
        """
        if self._frozen:
            raise RuntimeError("cannot insert into a frozen FOON")
        ident = unit.identity()
        if ident in self._identities:
            return False
        unit.source_index = len(self.units)
        self.units.append(unit)
        self._identities.add(ident)
        for out in unit.outputs:
            self.producers.setdefault(object_key(out), []).append(unit)
        return True

    def producing(self, goal: ObjectNode) -> list[FunctionalUnit]:
        """Units having ``goal`` among their outputs, in insertion order."""
        return list(self.producers.get(object_key(goal), ()))

    def freeze(self):
        self._frozen = True
        return self

    def __len__(self):
        return len(self.units)


def insert_unit(foon: UniversalFOON, unit: FunctionalUnit) -> bool:
    return foon.insert(unit)


def units_producing(foon: UniversalFOON, goal: ObjectNode) -> list[FunctionalUnit]:
    return foon.producing(goal)


class Kitchen:
    """The set of object nodes available in the environment.

    Membership uses full object identity (name + states + ingredients).
    """

    def __init__(self, items=()):
        self._items: dict[str, ObjectNode] = {}
        for obj in items:
            self._items.setdefault(object_key(obj), obj)

    def __contains__(self, obj: ObjectNode) -> bool:
        return object_key(obj) in self._items

    def contains_key(self, key: str) -> bool:
        return key in self._items

    @property
    def items(self) -> list[ObjectNode]:
        return list(self._items.values())

    def __len__(self):
        return len(self._items)


@dataclass
class MotionRateTable:
    """Per-motion success rates in [0, 1]; unlisted labels get ``default_rate``."""

    rates: dict = field(default_factory=dict)
    default_rate: float = 1.0

    def __post_init__(self):
        for label, rate in self.rates.items():
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"rate for {label!r} out of [0, 1]: {rate}")

    def rate(self, label: str) -> float:
        return self.rates.get(_norm(label), self.default_rate)


@dataclass
class SearchStats:
    """Instrumentation counters shared by the retrieval algorithms.

    ``expansions`` counts candidate-unit considerations. For IDS it equals
    the sum of ``per_depth_expansions``. ``object_visits`` counts, per
    object key, how many times the search expanded that object's candidate
    list (once per IDS iteration that reaches it).
    """

    expansions: int = 0
    max_stack_depth: int = 0
    depth_limit_reached: int = 0
    per_depth_expansions: list = field(default_factory=list)
    object_visits: dict = field(default_factory=dict)
