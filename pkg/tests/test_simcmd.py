from __future__ import annotations

import pytest

from valleybench.simcmd import (
    REGISTRY,
    SimCommandError,
    apply_sim_command,
    parse_sim_command,
    run_commands,
)
from valleybench.world import init_world

# The full command surface the interpreter must cover, grouped as documented.
EXPECTED_COMMANDS = {
    # player settings
    "set_base_health", "set_health", "set_base_energy", "set_energy",
    "set_inventory_size", "clear_inventory", "set_money", "add_item_by_id",
    "add_item_by_name", "lookup", "current_position", "add_recipe",
    "set_max_luck", "print_luck",
    # surroundings
    "world_clear", "set_terrain", "place_item", "remove_item", "place_crop",
    "grow_crop", "grow_tree", "build", "build_stable", "move_building",
    "remove_building", "upgrade_house",
    # characters
    "spawn_pet", "spawn_animal", "grow_animal", "animal_friendship",
    "npc_friendship", "all_npc_friendship", "dating",
    # locations
    "warp", "warp_mine", "warp_volcano", "warp_home", "warp_shop",
    "warp_character",
    # world
    "set_date", "set_time", "rain",
    # progression
    "set_deepest_mine_level", "set_monster_stats", "print_monster_stats",
    "start_quest", "start_help_quest", "complete_quest", "joja_membership",
    "spawn_junimo_note", "mark_bundle", "complete_room_bundles",
    "community_development", "receive_mail", "trigger_event", "seen_event",
    "load_save",
}


def test_every_command_has_exactly_one_handler():
    assert set(REGISTRY) == EXPECTED_COMMANDS
    handlers = [REGISTRY[name][0] for name in sorted(REGISTRY)]
    assert len(handlers) == len(EXPECTED_COMMANDS)


@pytest.fixture()
def world():
    return init_world("save_new", 0)


def test_set_time_example(world):
    world, _ = apply_sim_command(world, "set_time(900)")
    assert world.clock.formatted() == "09:00 AM"
    world, _ = apply_sim_command(world, "set_time(time=1500)")
    assert world.clock.formatted() == "03:00 PM"


def test_add_item_by_name_example(world):
    world, _ = apply_sim_command(world, 'add_item_by_name("Parsnip", 5)')
    assert world.player.find_item("Parsnip") == 5


def test_warp_mine_example(world):
    world, _ = apply_sim_command(world, "warp_mine(2)")
    assert world.player.map_id == "UndergroundMine2"


def test_unknown_command_rejected(world):
    with pytest.raises(SimCommandError):
        apply_sim_command(world, "make_coffee()")


def test_bad_arity_rejected(world):
    with pytest.raises(SimCommandError):
        apply_sim_command(world, "set_time()")
    with pytest.raises(SimCommandError):
        apply_sim_command(world, "set_time(900, 950)")


def test_unknown_item_is_error_not_noop(world):
    with pytest.raises(SimCommandError):
        apply_sim_command(world, 'add_item_by_name("Phoenix Feather")')


def test_unknown_location_is_error(world):
    with pytest.raises(SimCommandError):
        apply_sim_command(world, 'warp("Atlantis")')


def test_warp_volcano_recognized_but_unavailable(world):
    with pytest.raises(SimCommandError):
        apply_sim_command(world, "warp_volcano(5)")


def test_type_mismatch_rejected(world):
    with pytest.raises(SimCommandError):
        apply_sim_command(world, 'set_time("morning")')


def test_energy_clamped_to_base(world):
    world, _ = apply_sim_command(world, "set_energy(9999)")
    assert world.player.energy == world.player.base_energy


def test_clear_inventory(world):
    world, _ = apply_sim_command(world, "clear_inventory()")
    assert all(slot is None for slot in world.player.inventory)


def test_upgrade_house_adds_stove_access(world):
    world, _ = apply_sim_command(world, "upgrade_house(1)")
    assert world.house_level == 1


def test_npc_friendship(world):
    world, _ = apply_sim_command(world, 'npc_friendship("Elliott", 40)')
    assert world.player.friendships["Elliott"] == 40


def test_warp_shop_places_player_at_counter(world):
    world, _ = apply_sim_command(world, 'warp_shop("pierre")')
    assert world.player.map_id == "SeedShop"
    assert world.player.facing == "up"


def test_warp_character_pins_until_day_end(world):
    world, _ = apply_sim_command(world, 'warp_character("Alex", "Farm", 10, 7)')
    alex = next(n for n in world.npcs if n.name == "Alex")
    assert (alex.map_id, alex.x, alex.y) == ("Farm", 10, 7)
    world, _ = apply_sim_command(world, "set_time(1200)")
    alex = next(n for n in world.npcs if n.name == "Alex")
    assert alex.map_id == "Farm"


def test_load_save_swaps_world(world):
    world, _ = apply_sim_command(world, 'load_save("save_farming")')
    assert world.save_id == "save_farming"


def test_run_commands_reports_failing_command(world):
    with pytest.raises(SimCommandError) as err:
        run_commands(world, ["set_time(900)", 'add_item_by_name("Nothing")'])
    assert "add_item_by_name" in str(err.value)


def test_parse_rejects_non_calls():
    with pytest.raises(SimCommandError):
        parse_sim_command("just words")


def test_seen_event_bool_roundtrip(world):
    world, _ = apply_sim_command(world, 'seen_event("wedding", true)')
    assert "event_seen:wedding" in world.flags
    world, _ = apply_sim_command(world, 'seen_event("wedding", false)')
    assert "event_seen:wedding" not in world.flags


def test_start_and_complete_quest(world):
    world, _ = apply_sim_command(world, 'complete_quest("6")')
    assert "6" in world.completed_story
