import pytest
from hypothesis import given
from hypothesis import strategies as st

from foon import (
    FunctionalUnit,
    MotionNode,
    ObjectNode,
    UniversalFOON,
    object_key,
    unit_equals,
)

from conftest import build_foon, obj, unit

names = st.sampled_from(["bowl", "tomato", "knife", "pan", "egg", "water"])
tokens = st.sampled_from(["whole", "sliced", "raw", "cooked", "empty", ""])
token_sets = st.frozensets(tokens, max_size=3)


def test_object_key_empty_sets():
    assert object_key(obj("ice")) == "ice||"


def test_object_key_ignores_set_order():
    a = ObjectNode("bowl", frozenset(["full"]), frozenset(["tomato", "onion"]))
    b = ObjectNode("bowl", frozenset(["full"]), frozenset(["onion", "tomato"]))
    assert object_key(a) == object_key(b)
    assert a == b


def test_object_key_ignores_motion_tag():
    assert object_key(obj("cup", "empty", tag="1")) == object_key(obj("cup", "empty", tag="0"))


def test_object_key_normalizes_case_and_whitespace():
    assert object_key(ObjectNode(" Bowl ", frozenset(["Full "]))) == object_key(
        ObjectNode("bowl", frozenset(["full"]))
    )


def test_object_name_required():
    with pytest.raises(ValueError):
        ObjectNode("   ")


def test_motion_identity_label_only():
    assert MotionNode("pour", "0:01", "0:05") == MotionNode("pour")
    assert MotionNode("pour") != MotionNode("slice")


@given(name=names, states=token_sets, ings=token_sets, perm_seed=st.integers(0, 100))
def test_object_key_constant_over_permutations(name, states, ings, perm_seed):
    import random

    shuffled_states = list(states)
    shuffled_ings = list(ings)
    random.Random(perm_seed).shuffle(shuffled_states)
    random.Random(perm_seed + 1).shuffle(shuffled_ings)
    a = ObjectNode(name, frozenset(states), frozenset(ings))
    b = ObjectNode(name, frozenset(shuffled_states), frozenset(shuffled_ings))
    assert object_key(a) == object_key(b)


@given(
    n1=names, s1=token_sets, n2=names, s2=token_sets,
)
def test_object_key_injective_over_identities(n1, s1, n2, s2):
    a = ObjectNode(n1, frozenset(s1))
    b = ObjectNode(n2, frozenset(s2))
    assert (object_key(a) == object_key(b)) == (a == b)


object_nodes = st.builds(
    ObjectNode,
    name=names,
    states=token_sets,
    ingredients=token_sets,
    motion_tag=st.sampled_from(["", "0", "1"]),
)
units = st.builds(
    FunctionalUnit,
    inputs=st.lists(object_nodes, min_size=1, max_size=3),
    motion=st.builds(MotionNode, label=st.sampled_from(["pour", "mix", "slice"]),
                     start_time=st.none() | st.just("0:01")),
    outputs=st.lists(object_nodes, min_size=1, max_size=3),
)


@given(a=units, b=units, c=units)
def test_unit_equals_is_equivalence(a, b, c):
    assert unit_equals(a, a)
    assert unit_equals(a, b) == unit_equals(b, a)
    if unit_equals(a, b) and unit_equals(b, c):
        assert unit_equals(a, c)


def test_unit_equals_ignores_timestamps():
    a = unit([obj("water", "liquid")], "freeze", [obj("ice", "solid")], start_time="0:05")
    b = unit([obj("water", "liquid")], "freeze", [obj("ice", "solid")], end_time="1:00")
    assert unit_equals(a, b)


def test_unit_equals_sensitive_to_state():
    a = unit([obj("tomato", "whole")], "slice", [obj("tomato", "sliced")])
    b = unit([obj("tomato", "whole")], "slice", [obj("tomato", "whole")])
    assert not unit_equals(a, b)


def test_unit_requires_inputs_and_outputs():
    with pytest.raises(ValueError):
        FunctionalUnit([], MotionNode("pour"), [obj("cup")])
    with pytest.raises(ValueError):
        FunctionalUnit([obj("cup")], MotionNode("pour"), [])


def test_insert_dedup_and_idempotence():
    foon = UniversalFOON()
    u = unit([obj("water", "liquid")], "freeze", [obj("ice", "solid")])
    dup = unit([obj("water", "liquid")], "freeze", [obj("ice", "solid")], start_time="9:99")
    assert foon.insert(u) is True
    assert len(foon) == 1
    assert foon.insert(dup) is False
    assert len(foon) == 1


def test_insert_rejected_after_freeze():
    foon = build_foon(unit([obj("a", "x")], "mix", [obj("b", "y")]))
    with pytest.raises(RuntimeError):
        foon.insert(unit([obj("c", "x")], "mix", [obj("d", "y")]))


def test_producers_insertion_order():
    shared = obj("sauce", "done")
    u1 = unit([obj("a", "x")], "mix", [shared])
    u2 = unit([obj("b", "x")], "stir", [shared])
    foon = build_foon(u1, u2)
    producers = foon.producing(shared)
    assert [p.source_index for p in producers] == [0, 1]
    assert producers == [u1, u2]


def _rebuild_producers(foon):
    rebuilt = {}
    for u in foon.units:
        for out in u.outputs:
            rebuilt.setdefault(object_key(out), []).append(u.source_index)
    return rebuilt


@given(seed=st.integers(0, 500))
def test_producers_index_matches_rebuild(seed):
    import random

    rng = random.Random(seed)
    foon = UniversalFOON()
    pool = [obj(f"o{i}", "s") for i in range(6)]
    for _ in range(rng.randint(1, 10)):
        ins = rng.sample(pool, rng.randint(1, 2))
        outs = rng.sample(pool, rng.randint(1, 2))
        foon.insert(unit(ins, rng.choice(["mix", "pour"]), outs))
    maintained = {k: [u.source_index for u in v] for k, v in foon.producers.items()}
    assert maintained == _rebuild_producers(foon)


def test_units_producing_empty_for_unknown_goal():
    foon = build_foon(unit([obj("a", "x")], "mix", [obj("b", "y")]))
    assert foon.producing(obj("zebra")) == []
