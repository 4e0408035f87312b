from __future__ import annotations

from pathlib import Path

import pytest
import yaml

from valleybench_sdk.actions import ActionParseError, parse_actions, validate_action

FIXTURES = yaml.safe_load(
    (Path(__file__).parent / "fixtures" / "completions.yaml").read_text(encoding="utf-8")
)


def test_fixture_count_and_truncation_case_present():
    assert len(FIXTURES) == 20
    assert any(f["name"] == "three_actions_truncated" for f in FIXTURES)


@pytest.mark.parametrize("fixture", FIXTURES, ids=[f["name"] for f in FIXTURES])
def test_recorded_completboth_extract_expected_actions(fixture, recwarn):
    actions = parse_actions(fixture["completion"])
    assert actions == fixture["expected"]
    assert len(actions) <= 2


def test_truncation_emits_warning():
    fixture = next(f for f in FIXTURES if f["name"] == "three_actions_truncated")
    with pytest.warns(UserWarning):
        parse_actions(fixture["completion"])


def test_no_code_block_raises():
    with pytest.raises(ActionParseError):
        parse_actions("Reasoning: I will definitely do something useful.")


def test_zero_valid_actions_raises():
    completion = "Actions:\n```python\nfly_to_the_moon()\n```"
    with pytest.raises(ActionParseError):
        parse_actions(completion)


def test_validate_action_accepts_all_templates():
    for call in (
        "move(x=0, y=1)",
        'use(direction="down")',
        'interact(direction="up")',
        "choose_item(slot_index=35)",
        "attach_item(slot_index=0)",
        "detach_item()",
        "unattach_item()",
        'craft(item="Chest")',
        'choose_option(option_index=1, quantity=5, direction="out")',
        "choose_option(option_index=1)",
        'menu(option="open", menu_name="map")',
        'navigate(name="Town")',
    ):
        assert validate_action(call) == call


@pytest.mark.parametrize(
    "bad",
    [
        "move(x=1)",
        'use(direction="north")',
        "choose_item(slot_index=36)",
        'menu(option="toggle", menu_name="map")',
        'choose_option(option_index=1, direction="sideways")',
        "warp(x=1, y=1)",
    ],
)
def test_validate_action_rejects_bad_calls(bad):
    with pytest.raises(ActionParseError):
        validate_action(bad)
