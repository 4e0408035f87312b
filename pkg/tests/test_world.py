from __future__ import annotations

import pytest

from valleybench.clock import Season
from valleybench.state import WorldState
from valleybench.world import (
    WorldError,
    advance_minutes,
    build_scenario_world,
    end_of_day,
    init_world,
    save_registry,
)


def test_init_world_starting_conditions():
    world = init_world("save_new", 123)
    assert world.player.energy == 270
    assert world.player.health == world.player.base_health
    assert world.clock.formatted() == "06:00 AM"
    assert len(world.player.inventory) == 36


def test_init_world_deterministic_bytes():
    a = init_world("save_new", 7)
    b = init_world("save_new", 7)
    assert a.serialize() == b.serialize()


def test_init_world_unknown_save():
    with pytest.raises(WorldError):
        init_world("save_missing", 0)


def test_serialization_round_trip_bit_exact():
    world = init_world("save_farming", 5)
    raw = world.serialize()
    assert WorldState.deserialize(raw).serialize() == raw


def test_shipped_snapshots_match_scenario_builder():
    """Guards against the shipped save files drifting from scenarios.yaml"""
    registry = save_registry()
    assert set(registry) == {"save_new", "save_farming", "save_quests"}
    for save_id in registry:
        built = build_scenario_world("valleylite", save_id, 0)
        assert registry[save_id].read_bytes() == built.serialize()


def test_advance_clock_basic_tick():
    world = init_world("save_new", 0)
    advance_minutes(world, 10)
    assert world.clock.formatted() == "06:10 AM"


def test_advance_clock_emits_nightfall_and_midnight():
    world = init_world("save_new", 0)
    events = advance_minutes(world, 800)
    assert any(e.kind == "nightfall" for e in events)
    events = advance_minutes(world, 300)
    assert any(e.kind == "midnight" for e in events)


def test_passout_at_2am_applies_fee_and_rolls_day():
    world = init_world("save_new", 0)
    money = world.player.money
    advance_minutes(world, 1190)  # 01:50 AM
    assert world.clock.formatted() == "01:50 AM"
    events = advance_minutes(world, 10)
    kinds = [e.kind for e in events]
    assert "passout" in kinds
    assert world.clock.day_of_season == 2
    assert world.clock.formatted() == "06:00 AM"
    fee = min(money, world.pack.config["passout_fee"])
    assert world.player.money == money - fee


def test_sleep_before_midnight_restores_full_energy():
    world = init_world("save_new", 0)
    world.player.energy = 40.0
    advance_minutes(world, 600)  # 4:00 PM
    end_of_day(world, slept_in_bed=True)
    assert world.player.energy == 270


def test_sleep_after_midnight_restores_reduced_energy():
    world = init_world("save_new", 0)
    advance_minutes(world, 1140)  # 1:00 AM
    end_of_day(world, slept_in_bed=True)
    factor = world.pack.config["late_sleep_energy_factor"]
    assert world.player.energy == round(factor * 270)


def test_day28_rolls_into_next_season():
    world = init_world("save_new", 0)
    world.clock.day_of_season = 28
    end_of_day(world, slept_in_bed=True)
    assert world.clock.day_of_season == 1
    assert world.clock.season is Season.SUMMER


def test_watered_crops_grow_overnight():
    world = init_world("save_farming", 0)
    farm = world.map_state("Farm")
    tile = farm.soil[(5, 11)]
    assert tile.crop.days_grown == 0
    tile.watered = True
    end_of_day(world, slept_in_bed=True)
    assert tile.crop.days_grown == 1
    assert tile.watered in (False, True)  # rain may re-water


def test_unwatered_crops_do_not_grow():
    world = init_world("save_farming", 0)
    tile = world.map_state("Farm").soil[(6, 11)]
    end_of_day(world, slept_in_bed=True)
    assert tile.crop.days_grown == 0


def test_rain_waters_outdoor_soil():
    world = init_world("save_farming", 0)
    # Find a seed whose next-day weather is rainy to keep the test stable.
    for seed in range(50):
        probe = init_world("save_farming", seed)
        end_of_day(probe, slept_in_bed=True)
        if probe.weather in ("rainy", "stormy"):
            assert all(t.watered for t in probe.map_state("Farm").soil.values())
            return
    pytest.fail("no rainy seed found in range")


def test_hens_lay_one_egg_each_morning():
    world = init_world("save_farming", 0)
    coop = world.map_state("Coop")
    before = sum(1 for g in coop.ground_items.values() if g.item == "Egg")
    end_of_day(world, slept_in_bed=True)
    after = sum(1 for g in coop.ground_items.values() if g.item == "Egg")
    assert after > before


def test_weather_draw_is_seeded():
    seq_a = []
    seq_b = []
    for run in (seq_a, seq_b):
        world = init_world("save_new", 11)
        for _ in range(10):
            end_of_day(world, slept_in_bed=True)
            run.append(world.weather)
    assert seq_a == seq_b
