from __future__ import annotations

import pytest

from valleybench.tasks import (
    TaskError,
    load_builtin_suite,
    load_oracle_scripts,
    parse_task_suite,
    setup_task,
)

SAMPLE = """
Farming:
  clear_10_weeds_with_scythe:
    id: 0
    object: Weeds
    quantity: 10
    tool: Scythe
    save: save_new
    evaluator: clear
    difficulty: easy
"""


def test_sample_entry_parses_exactly():
    suite = parse_task_suite(SAMPLE)
    task = suite.get("clear_10_weeds_with_scythe")
    assert task.task_id == 0
    assert task.obj == "Weeds"
    assert task.quantity == 10
    assert task.tool == ["Scythe"]
    assert task.save == "save_new"
    assert task.evaluator == "clear"
    assert task.difficulty == "easy"
    assert task.init_commands == []


@pytest.mark.parametrize("difficulty,steps", [("easy", 30), ("medium", 50), ("hard", 150)])
def test_difficulty_step_budgets(difficulty, steps):
    suite = parse_task_suite(SAMPLE.replace("difficulty: easy", f"difficulty: {difficulty}"))
    assert suite.get("clear_10_weeds_with_scythe").max_steps == steps


def test_unknown_evaluator_rejected():
    with pytest.raises(TaskError):
        parse_task_suite(SAMPLE.replace("evaluator: clear", "evaluator: teleport"))


def test_unknown_save_rejected():
    with pytest.raises(TaskError):
        parse_task_suite(SAMPLE.replace("save: save_new", "save: save_missing"))


def test_duplicate_ids_rejected():
    doubled = SAMPLE + """
  till_5_tile_with_hoe:
    id: 0
    object: Tile
    quantity: 5
    save: save_new
    evaluator: till
    difficulty: easy
"""
    with pytest.raises(TaskError):
        parse_task_suite(doubled)


def test_malformed_init_command_rejected():
    bad = SAMPLE.replace("evaluator: clear", "evaluator: clear\n    init_commands: ['nonsense here']")
    with pytest.raises(TaskError):
        parse_task_suite(bad)


def test_builtin_suite_shape():
    suite = load_builtin_suite()
    assert len(suite) >= 40
    grouped = suite.by_category()
    assert set(grouped) == {"Farming", "Crafting", "Exploration", "Combat", "Social"}
    difficulties = {task.difficulty for task in suite}
    assert difficulties == {"easy", "medium", "hard"}
    for tasks in grouped.values():
        assert len(tasks) >= 2


def test_setup_grants_init_items():
    suite = load_builtin_suite()
    world, config = setup_task(suite.get("sow_5_dirt_with_cauliflower_seeds"), seed=1)
    assert world.player.find_item("Cauliflower Seeds") == 5
    assert config.evaluator_type == "sow"
    assert config.max_steps == 30


def test_setup_warps_for_combat():
    suite = load_builtin_suite()
    world, _ = setup_task(suite.get("kill_1_bug_with_rusty_sword"), seed=1)
    assert world.player.map_id == "UndergroundMine2"


def test_setup_without_init_matches_bare_world():
    from valleybench.world import init_world

    suite = load_builtin_suite()
    world, _ = setup_task(suite.get("clear_10_weeds_with_scythe"), seed=9)
    assert world.serialize() == init_world("save_new", 9).serialize()


def test_setup_seed_independent_fields():
    suite = load_builtin_suite()
    spec = suite.get("sow_5_dirt_with_cauliflower_seeds")
    for seed in (0, 5, 100):
        world, _ = setup_task(spec, seed=seed)
        assert world.player.find_item("Cauliflower Seeds") == 5
        assert world.clock.formatted() == "06:00 AM"


def test_every_task_has_an_oracle_script():
    suite = load_builtin_suite()
    scripts = load_oracle_scripts()
    missing = [task.name for task in suite if task.name not in scripts]
    assert missing == []
