from __future__ import annotations

import pytest

from valleybench_sdk.prompts import (
    PromptContext,
    PromptError,
    build_prompt,
    load_template,
    template_placeholders,
)


def _full_context(**overrides) -> PromptContext:
    fields = dict(
        task_description="clear_10_weeds_with_scythe",
        health=100,
        energy=270,
        money=2000,
        time="06:00 AM",
        day=1,
        season="spring",
        chosen_item={"index": 0, "currentitem": "Hoe"},
        toolbar_information=["slot_index 0: [Hoe] (quantity: 1)"],
        current_menu={"type": "none", "message": ""},
        surroundings=[{"position": [0, 0], "object": ["Type: Ground"]}],
        skill_library=["move(x, y)"],
        pre_action="none",
    )
    fields.update(overrides)
    return PromptContext(**fields)


def test_template_lists_expected_placeholders():
    names = template_placeholders()
    assert names == [
        "task_description", "health", "energy", "money", "time", "day", "season",
        "chosen_item", "toolbar_information", "current_menu", "surroundings",
        "skill_library", "pre_action", "image_introduction",
    ]


def test_build_binds_every_placeholder():
    text, images = build_prompt(_full_context())
    assert "<$" not in text
    assert images == []


def test_prompt_contains_substituted_values():
    text, _ = build_prompt(_full_context(energy=270))
    assert "Energy: 270" in text
    assert "Your Current task is: clear_10_weeds_with_scythe" in text


def test_prompt_keeps_reasoning_questions_and_action_rules():
    text, _ = build_prompt(_full_context())
    reasoning = text.split("Reasoning:")[1]
    questions = [line for line in reasoning.splitlines() if line.strip()[:2] in
                 ("1.", "2.", "3.", "4.", "5.", "6.", "7.", "8.")]
    assert len([q for q in questions if q.strip()[0].isdigit()]) >= 8
    rules = text.split("action rules:")[1]
    for number in ("1.", "2.", "3.", "4.", "5."):
        assert number in rules
    assert "at most 2 actions" in text


def test_missing_placeholder_listed_by_name():
    with pytest.raises(PromptError) as err:
        build_prompt(_full_context(surroundings=None))
    assert "surroundings" in str(err.value)


def test_prompt_build_is_pure():
    a, _ = build_prompt(_full_context())
    b, _ = build_prompt(_full_context())
    assert a == b


def test_previous_image_ordered_before_current():
    _, images = build_prompt(_full_context(current_image=b"now", previous_image=b"before"))
    assert images == [b"before", b"now"]
    text, _ = build_prompt(_full_context(current_image=b"now", previous_image=b"before"))
    assert "previous step" in text


def test_template_has_every_call_style_hint():
    template = load_template()
    assert "move(x=0, y=1)" in template
    assert "unattach_item()" in template
