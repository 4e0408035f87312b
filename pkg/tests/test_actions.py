from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from valleybench.actions import (
    AttachItem,
    ChooseItem,
    ChooseOption,
    Craft,
    DetachItem,
    Interact,
    MalformedActionError,
    Menu,
    Move,
    Navigate,
    Use,
    parse_action,
    print_action,
)

DIRECTIONS = st.sampled_from(["up", "right", "down", "left"])
ITEM_NAMES = st.sampled_from(["Wood Fence", "Chest", "Parsnip Seeds", "Furnace", "Spring Seeds"])
LOCATIONS = st.sampled_from(["BusStop", "Town", "SeedShop", "UndergroundMine2"])

ACTIONS = st.one_of(
    st.builds(Move, x=st.integers(-50, 50), y=st.integers(-50, 50)),
    st.builds(Use, direction=DIRECTIONS),
    st.builds(Interact, direction=DIRECTIONS),
    st.builds(ChooseItem, slot_index=st.integers(0, 35)),
    st.builds(AttachItem, slot_index=st.integers(0, 35)),
    st.just(DetachItem()),
    st.builds(Craft, item=ITEM_NAMES),
    st.builds(
        ChooseOption,
        option_index=st.integers(0, 20),
        quantity=st.one_of(st.none(), st.integers(1, 99)),
        direction=st.one_of(st.none(), st.sampled_from(["in", "out"])),
    ),
    st.builds(Menu, option=st.sampled_from(["open", "close"]), menu_name=st.sampled_from(["map", "quest_log", "crafting"])),
    st.builds(Navigate, name=LOCATIONS),
)


@given(ACTIONS)
def test_parse_print_round_trip(action):
    assert parse_action(print_action(action)) == action


@given(ACTIONS)
def test_print_parse_print_is_stable(action):
    text = print_action(action)
    assert print_action(parse_action(text)) == text


def test_parse_examples_from_templates():
    assert parse_action("move(x = 0, y = 1)") == Move(0, 1)
    assert parse_action('use(direction="down")') == Use("down")
    assert parse_action("choose_item(slot_index=3)") == ChooseItem(3)
    assert parse_action('choose_option(option_index=1, quantity=5, direction="in")') == ChooseOption(1, 5, "in")
    assert parse_action('menu(option="open", menu_name="map")') == Menu("open", "map")


def test_positional_arguments_accepted():
    assert parse_action("move(3, 5)") == Move(3, 5)
    assert parse_action('craft("Chest")') == Craft("Chest")


def test_unattach_alias_canonicalizes_to_detach():
    action = parse_action("unattach_item()")
    assert action == DetachItem()
    assert print_action(action) == "detach_item()"


def test_slot_bounds_are_malformed_not_world_errors():
    with pytest.raises(MalformedActionError):
        parse_action("choose_item(slot_index=36)")
    with pytest.raises(MalformedActionError):
        parse_action("choose_item(slot_index=-1)")


@pytest.mark.parametrize(
    "bad",
    [
        "fly()",
        "move(x=1)",
        "move(x=1, y=2, z=3)",
        'use(direction="north")',
        "use()",
        'menu(option="toggle", menu_name="map")',
        'choose_option(option_index=1, direction="sideways")',
        "choose_option(option_index=1, quantity=0)",
        "move(x=1.5, y=2)",
        "not even a call",
        "craft(item=Chest)",
    ],
)
def test_malformed_actions_rejected(bad):
    with pytest.raises(MalformedActionError):
        parse_action(bad)


def test_single_quotes_accepted():
    assert parse_action("use(direction='up')") == Use("up")
