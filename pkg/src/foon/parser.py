"""Text formats: subgraph files, kitchen files, motion-rate files, goal specs.

Subgraph grammar (tab-separated):

    O<TAB>name[<TAB>tag]          opens an object block
    S[<TAB>state[<TAB>{i,j,...}]] attaches a state (and ingredients) to it
    M<TAB>label[<TAB>start<TAB>end]  closes the input section of a unit
    //                            ends a functional unit

Object blocks before the M line are the unit's inputs, blocks after it are
the outputs. Blank lines and lines starting with '#' are ignored.
Serialization is canonical (sorted states/ingredients, final newline) so
identical documents emit identical bytes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import FunctionalUnit, Kitchen, MotionNode, MotionRateTable, ObjectNode


class ParseError(Exception):
    """Base for all file-format errors; carries the 1-based offending line."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class MalformedLine(ParseError):
    pass


class UnitWithoutMotion(ParseError):
    pass


class MultipleMotions(ParseError):
    pass


class ObjectWithoutName(ParseError):
    pass


class StateBeforeObject(ParseError):
    pass


class DanglingUnit(ParseError):
    pass


class IncompleteUnit(ParseError):
    """A unit terminated by // lacks inputs or outputs."""


class MotionInKitchenFile(ParseError):
    pass


class RateOutOfRange(ParseError):
    pass


class MalformedRateLine(ParseError):
    pass


class EmptyGoalName(ParseError):
    pass


@dataclass
class SubgraphDocument:
    """Functional units in file order, plus where they came from."""

    units: list = field(default_factory=list)
    source_path: str = ""


class _ObjectBlock:
    def __init__(self, name, tag, line_number):
        self.name = name
        self.tag = tag
        self.line_number = line_number
        self.states = []
        self.ingredients = set()

    def build(self) -> ObjectNode:
        return ObjectNode(
            name=self.name,
            states=frozenset(self.states),
            ingredients=frozenset(self.ingredients),
            motion_tag=self.tag,
        )


def _parse_ingredients(text, line_number):
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise MalformedLine(f"expected {{...}} ingredient list, got {text!r}", line_number)
    body = text[1:-1].strip()
    if not body:
        return set()
    return {part.strip() for part in body.split(",") if part.strip()}


def _iter_records(text):
    """Yield (line_number, fields) for every significant line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield number, line.split("\t")


def _consume_object_line(fields, number):
    if len(fields) < 2 or not fields[1].strip():
        raise ObjectWithoutName("O line has no object name", number)
    tag = fields[2].strip() if len(fields) > 2 else ""
    return _ObjectBlock(fields[1], tag, number)


def _consume_state_line(block, fields, number):
    if block is None:
        raise StateBeforeObject("S line before any O line", number)
    state = fields[1] if len(fields) > 1 else ""
    block.states.append(state)
    if len(fields) > 2 and fields[2].strip():
        block.ingredients |= _parse_ingredients(fields[2], number)


def parse_subgraph(text: str, source_path: str = "") -> SubgraphDocument:
    """Parse subgraph text into a document of functional units in file order."""
    units = []
    inputs, outputs = [], []
    motion = None
    block = None
    last_number = 0

    def flush_block():
        nonlocal block
        if block is not None:
            (outputs if motion is not None else inputs).append(block.build())
            block = None

    for number, fields in _iter_records(text):
        last_number = number
        tag = fields[0].strip()
        if tag == "O":
            flush_block()
            block = _consume_object_line(fields, number)
        elif tag == "S":
            _consume_state_line(block, fields, number)
        elif tag == "M":
            flush_block()
            if motion is not None:
                raise MultipleMotions("second M line in one unit", number)
            if len(fields) < 2 or not fields[1].strip():
                raise MalformedLine("M line has no motion label", number)
            start = fields[2].strip() if len(fields) > 2 and fields[2].strip() else None
            end = fields[3].strip() if len(fields) > 3 and fields[3].strip() else None
            motion = MotionNode(fields[1], start_time=start, end_time=end)
        elif tag == "//":
            flush_block()
            if motion is None:
                raise UnitWithoutMotion("unit ended by // has no M line", number)
            if not inputs or not outputs:
                raise IncompleteUnit("unit needs at least one input and one output", number)
            units.append(FunctionalUnit(inputs, motion, outputs))
            inputs, outputs, motion = [], [], None
        else:
            raise MalformedLine(f"unknown leading tag {tag!r}", number)

    if block is not None or inputs or outputs or motion is not None:
        raise DanglingUnit("unterminated unit at end of file", last_number)
    return SubgraphDocument(units=units, source_path=source_path)


def _serialize_object(obj: ObjectNode, lines):
    if obj.motion_tag:
        lines.append(f"O\t{obj.name}\t{obj.motion_tag}")
    else:
        lines.append(f"O\t{obj.name}")
    states = sorted(obj.states)
    ingredients = sorted(obj.ingredients)
    if not states and ingredients:
        states = [""]
    for position, state in enumerate(states):
        line = "S" if state == "" else f"S\t{state}"
        if position == 0 and ingredients:
            if state == "":
                line = "S\t"
            line += "\t{" + ",".join(ingredients) + "}"
        lines.append(line)


def serialize_subgraph(doc: SubgraphDocument) -> str:
    """Canonical text for a document; parsing it back reproduces the units."""
    if not doc.units:
        return ""
    lines = []
    for unit in doc.units:
        for obj in unit.inputs:
            _serialize_object(obj, lines)
        motion_line = f"M\t{unit.motion.label}"
        if unit.motion.start_time is not None:
            motion_line += f"\t{unit.motion.start_time}"
            if unit.motion.end_time is not None:
                motion_line += f"\t{unit.motion.end_time}"
        lines.append(motion_line)
        for obj in unit.outputs:
            _serialize_object(obj, lines)
        lines.append("//")
    return "\n".join(lines) + "\n"


def parse_kitchen(text: str) -> Kitchen:
    """Parse a kitchen file: O/S blocks only, one item per block."""
    items = []
    block = None
    for number, fields in _iter_records(text):
        tag = fields[0].strip()
        if tag == "O":
            if block is not None:
                items.append(block.build())
            block = _consume_object_line(fields, number)
        elif tag == "S":
            _consume_state_line(block, fields, number)
        elif tag == "M":
            raise MotionInKitchenFile("M line in kitchen file", number)
        elif tag == "//":
            continue
        else:
            raise MalformedLine(f"unknown leading tag {tag!r}", number)
    if block is not None:
        items.append(block.build())
    return Kitchen(items)


def parse_rates(text: str) -> MotionRateTable:
    """Parse a motion-rate file of ``label<TAB>rate`` lines."""
    rates = {}
    for number, fields in _iter_records(text):
        if len(fields) != 2:
            raise MalformedRateLine(f"expected label<TAB>rate, got {fields!r}", number)
        label = fields[0].strip().lower()
        try:
            rate = float(fields[1])
        except ValueError:
            raise MalformedRateLine(f"rate is not a number: {fields[1]!r}", number)
        if not 0.0 <= rate <= 1.0:
            raise RateOutOfRange(f"rate for {label!r} out of [0, 1]: {rate}", number)
        rates[label] = rate
    return MotionRateTable(rates=rates)


def parse_goal(spec: str) -> ObjectNode:
    """Parse a goal spec string: ``name[;state1,state2[;ing1,ing2]]``."""
    parts = spec.split(";")
    name = parts[0].strip()
    if not name:
        raise EmptyGoalName("goal spec has an empty name")
    states = set()
    ingredients = set()
    if len(parts) > 1:
        states = {s.strip() for s in parts[1].split(",") if s.strip()}
    if len(parts) > 2:
        ingredients = {i.strip() for i in parts[2].split(",") if i.strip()}
    return ObjectNode(name=name, states=frozenset(states), ingredients=frozenset(ingredients))
