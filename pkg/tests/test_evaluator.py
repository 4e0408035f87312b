from __future__ import annotations

import copy

import pytest

from valleybench import init_world
from valleybench.evaluator import (
    EvalConfig,
    EvalState,
    compare,
    evaluate,
    project_observation,
    registered_evaluators,
)


def _obs(**overrides):
    base = project_observation(init_world("save_new", 0))
    for key, value in overrides.items():
        base[key] = value
    return base


def test_first_call_returns_false_zero():
    state = EvalState(config=EvalConfig("clear", "Weeds", 10, 30))
    result = evaluate(state, _obs())
    assert result == {"completed": False, "current_quantity": 0}
    assert state.last_obs is not None


def test_clear_counts_tally_decrease():
    last = _obs()
    now = copy.deepcopy(last)
    last["object_counts"]["Weeds"] = 12
    now["object_counts"]["Weeds"] = 9
    assert compare("clear", "Weeds", now, last) == 3


def test_kill_counter_difference():
    last = _obs()
    now = copy.deepcopy(last)
    last["kill_stats"]["Grub"] = 2
    now["kill_stats"]["Grub"] = 5
    assert compare("kill", "Grub", now, last) == 3


def test_location_fires_only_on_entry():
    last = _obs(location="Farm")
    now = _obs(location="BusStop")
    assert compare("location", "BusStop", now, last) == 1
    assert compare("location", "BusStop", now, now) == 0
    assert compare("location", "BusStop", last, now) == 0


def test_friendship_delta():
    last = _obs()
    now = copy.deepcopy(last)
    last["friendships"]["Elliott"] = 40
    now["friendships"]["Elliott"] = 100
    assert compare("friendship", "Elliott", now, last) == 60


def test_harvest_survives_shipping():
    last = _obs()
    mid = copy.deepcopy(last)
    mid["inventory"]["Parsnip"] = 3
    shipped = copy.deepcopy(mid)
    shipped["inventory"]["Parsnip"] = 0
    shipped["shipped"]["Parsnip"] = 3
    assert compare("harvest", "Parsnip", mid, last) == 3
    assert compare("harvest", "Parsnip", shipped, mid) == 0


def test_progress_clamped_at_zero():
    last = _obs()
    now = copy.deepcopy(last)
    last["inventory"]["Wood"] = 5
    now["inventory"]["Wood"] = 1
    assert compare("harvest", "Wood", now, last) == 0


def test_completed_at_threshold_and_never_reverts():
    state = EvalState(config=EvalConfig("kill", "Bug", 1, 30))
    evaluate(state, _obs())
    first = _obs()
    first["kill_stats"]["Bug"] = 1
    result = evaluate(state, first)
    assert result["completed"] is True
    # Later observations cannot un-complete the task.
    result = evaluate(state, _obs())
    assert result["completed"] is True


def test_quantity_accumulates_across_steps():
    state = EvalState(config=EvalConfig("clear", "Weeds", 10, 30))
    obs0 = _obs()
    obs0["object_counts"]["Weeds"] = 12
    evaluate(state, obs0)
    obs1 = copy.deepcopy(obs0)
    obs1["object_counts"]["Weeds"] = 9
    assert evaluate(state, obs1)["current_quantity"] == 3
    obs2 = copy.deepcopy(obs1)
    obs2["object_counts"]["Weeds"] = 2
    result = evaluate(state, obs2)
    assert result == {"completed": True, "current_quantity": 10}


def test_unknown_evaluator_rejected():
    with pytest.raises(KeyError):
        compare("teleport", "X", _obs(), _obs())


def test_compare_is_pure():
    last = _obs()
    now = copy.deepcopy(last)
    now["kill_stats"]["Bug"] = 4
    snap_now, snap_last = copy.deepcopy(now), copy.deepcopy(last)
    compare("kill", "Bug", now, last)
    assert now == snap_now and last == snap_last


def test_registry_covers_all_suite_types():
    from valleybench.tasks import load_builtin_suite

    suite = load_builtin_suite()
    registered = set(registered_evaluators())
    assert suite.evaluator_types() <= registered


def test_jojamart_flag_transition():
    last = _obs(flags=[])
    now = _obs(flags=["Joja Membership"])
    assert compare("jojamart", "Joja Membership", now, last) == 1
    assert compare("jojamart", "Joja Membership", now, now) == 0


def test_backpack_capacity_event():
    last = _obs(inventory_capacity=24)
    now = _obs(inventory_capacity=36)
    assert compare("backpack", "Large Pack", now, last) == 1


def test_complete_story_by_quest_id():
    last = _obs(completed_story=[])
    now = _obs(completed_story=["9"])
    assert compare("complete_story", "9", now, last) == 1
