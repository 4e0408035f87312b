from __future__ import annotations

import pytest

from valleybench import execute, init_world
from valleybench.actions import parse_action
from valleybench.evaluator import project_observation
from valleybench.simcmd import apply_sim_command


def act(world, source):
    world, result = execute(world, parse_action(source))
    return result


@pytest.fixture()
def world():
    return init_world("save_new", 0)


@pytest.fixture()
def farm_world():
    return init_world("save_farming", 0)


# -- move ---------------------------------------------------------------------

def test_move_one_step_sets_facing(world):
    world.player.x, world.player.y = 10, 10
    result = act(world, "move(x=10, y=11)")
    assert result.ok
    assert world.player.position == (10, 11)
    assert world.player.facing == "down"


def test_move_blocked_target_stops_adjacent(world):
    # The farmhouse footprint is solid; aim at its door tile.
    result = act(world, "move(x=4, y=4)")
    assert result.ok
    assert result.message == "stopped adjacent"
    assert world.player.position == (4, 5)
    assert world.player.facing == "up"


def test_move_outside_map_fails(world):
    before = world.player.position
    result = act(world, "move(x=99, y=99)")
    assert not result.ok
    assert world.player.position == before


def test_move_unreachable_island_fails(world):
    # The pond interior is surrounded by water: no path, no adjacent stop.
    before = world.player.position
    result = act(world, "move(x=25, y=17)")
    assert not result.ok
    assert world.player.position == before


def test_move_tick_cost_free_budget(world):
    world.player.x, world.player.y = 10, 10
    result = act(world, "move(x=10, y=15)")  # 5 tiles
    assert result.ticks_consumed == 0
    result = act(world, "move(x=10, y=21)")  # 6 tiles
    assert result.ticks_consumed == 1


def test_failed_action_consumes_tick_but_preserves_state(world):
    t0 = world.clock.minutes_since_6am
    snapshot = project_observation(world)
    result = act(world, 'use(direction="up")')  # hoe vs open ground
    assert not result.ok
    assert world.clock.minutes_since_6am == t0 + 10
    after = project_observation(world)
    after_time_independent = dict(after)
    assert after_time_independent == snapshot


# -- use ----------------------------------------------------------------------

def test_hoe_tills_diggable_tile(world):
    world.player.x, world.player.y = 10, 7
    act(world, "choose_item(slot_index=0)")
    result = act(world, 'use(direction="down")')
    assert result.ok and result.message == "tilled"
    assert (10, 8) in world.current_map().soil


def test_watering_can_waters_and_refills(world):
    world.player.x, world.player.y = 10, 7
    act(world, "choose_item(slot_index=0)")
    act(world, 'use(direction="down")')
    act(world, "choose_item(slot_index=1)")
    result = act(world, 'use(direction="down")')
    assert result.ok
    assert world.current_map().soil[(10, 8)].watered
    world.player.watering_can_charge = 0
    result = act(world, 'use(direction="down")')
    assert not result.ok
    # Refill at the pond edge.
    world.player.x, world.player.y = 23, 17
    result = act(world, 'use(direction="right")')
    assert result.ok and world.player.watering_can_charge == world.pack.config["watering_can_capacity"]


def test_scythe_clears_weed_and_yields_fiber(world):
    world.player.x, world.player.y = 16, 14
    act(world, "choose_item(slot_index=4)")
    result = act(world, 'use(direction="down")')
    assert result.ok
    kinds = [e.kind for e in result.events]
    assert "tile-cleared" in kinds
    assert world.player.find_item("Fiber") == 1


def test_wrong_tool_fails(world):
    world.player.x, world.player.y = 16, 14
    act(world, "choose_item(slot_index=0)")  # hoe vs weeds
    result = act(world, 'use(direction="down")')
    assert not result.ok


def test_tool_use_costs_energy_only_on_success(world):
    world.player.x, world.player.y = 10, 7
    act(world, "choose_item(slot_index=0)")
    energy = world.player.energy
    act(world, 'use(direction="down")')
    assert world.player.energy == energy - world.pack.config["tool_energy"]
    energy = world.player.energy
    result = act(world, 'use(direction="up")')  # nothing to hoe
    assert not result.ok
    assert world.player.energy == energy


def test_eating_restores_energy(world):
    world, _ = apply_sim_command(world, 'add_item_by_name("Fried Egg")')
    world.player.energy = 100.0
    act(world, "choose_item(slot_index=6)")
    result = act(world, 'use(direction="up")')
    assert result.ok
    assert world.player.energy == 150.0
    assert world.player.find_item("Fried Egg") == 0


def test_energy_never_exceeds_base(world):
    world, _ = apply_sim_command(world, 'add_item_by_name("Fried Egg", 3)')
    act(world, "choose_item(slot_index=6)")
    act(world, 'use(direction="up")')
    assert world.player.energy == world.player.base_energy


# -- interact -----------------------------------------------------------------

def test_harvest_mature_crop(farm_world):
    world = farm_world
    world.player.x, world.player.y = 5, 8
    result = act(world, 'interact(direction="down")')
    assert result.ok
    assert world.player.find_item("Parsnip") == 1
    assert world.current_map().soil[(5, 9)].crop is None


def test_sow_seed_on_tilled_tile(farm_world):
    world = farm_world
    world, _ = apply_sim_command(world, 'add_item_by_name("Cauliflower Seeds", 2)')
    world.player.x, world.player.y = 5, 9
    act(world, "choose_item(slot_index=6)")
    result = act(world, 'interact(direction="down")')
    assert result.ok
    assert world.current_map().soil[(5, 10)].crop is not None
    assert world.player.find_item("Cauliflower Seeds") == 1


def test_door_transition_pairs(world):
    world.player.x, world.player.y = 4, 5
    result = act(world, 'interact(direction="up")')
    assert result.ok and world.player.map_id == "FarmHouse"
    result = act(world, 'interact(direction="down")')
    assert result.ok and world.player.map_id == "Farm"
    assert world.player.position == (4, 5)


def test_talk_friendship_once_per_day(world):
    world, _ = apply_sim_command(world, 'warp("Town", 14, 11)')
    act(world, 'interact(direction="up")')
    assert world.player.friendships["Alex"] == world.pack.config["talk_points"]
    act(world, 'interact(direction="up")')
    assert world.player.friendships["Alex"] == world.pack.config["talk_points"]


def test_loved_gift_adds_80(world):
    world, _ = apply_sim_command(world, 'add_item_by_name("Amethyst", 1, 4)')
    world, _ = apply_sim_command(world, 'warp("Town", 8, 11)')
    act(world, "choose_item(slot_index=6)")
    result = act(world, 'interact(direction="up")')
    assert result.ok
    assert world.player.friendships["Abigail"] == 80


def test_pet_once_per_day(world):
    world.player.x, world.player.y = 6, 7
    result = act(world, 'interact(direction="up")')
    assert result.ok
    assert world.counters["pet"] == 1
    result = act(world, 'interact(direction="up")')
    assert not result.ok
    assert world.counters["pet"] == 1


def test_shipping_bin_opens_menu(world):
    world.player.x, world.player.y = 8, 6
    result = act(world, 'interact(direction="up")')
    assert result.ok
    assert world.menu.kind == "shipping"


# -- craft --------------------------------------------------------------------

def test_craft_with_materials(world):
    world, _ = apply_sim_command(world, 'add_item_by_name("Wood", 2)')
    result = act(world, 'craft(item="Wood Fence")')
    assert result.ok
    assert world.player.find_item("Wood Fence") == 1
    assert world.player.find_item("Wood") == 0


def test_craft_insufficient_ingredients(world):
    result = act(world, 'craft(item="Chest")')
    assert not result.ok
    assert "insufficient" in result.message


def test_craft_unknown_recipe(world):
    result = act(world, 'craft(item="Moon Rocket")')
    assert not result.ok


def test_cook_away_from_stove_fails(world):
    world, _ = apply_sim_command(world, "upgrade_house(1)")
    world, _ = apply_sim_command(world, 'add_item_by_name("Egg")')
    result = act(world, 'craft(item="Fried Egg")')
    assert not result.ok
    assert "stove" in result.message


def test_recipe_not_learned(world):
    world.player.recipes_known.discard("Chest")
    world, _ = apply_sim_command(world, 'add_item_by_name("Wood", 10)')
    result = act(world, 'craft(item="Chest")')
    assert not result.ok
    assert "learned" in result.message


# -- choose/attach/detach -----------------------------------------------------

def test_choose_item_updates_slot(world):
    result = act(world, "choose_item(slot_index=3)")
    assert result.ok
    assert world.player.chosen_slot == 3


def test_attach_and_detach(world):
    world, _ = apply_sim_command(world, 'add_item_by_name("Slingshot")')
    world, _ = apply_sim_command(world, 'add_item_by_name("Stone", 10)')
    act(world, "choose_item(slot_index=6)")
    result = act(world, "attach_item(slot_index=7)")
    assert result.ok
    assert world.player.inventory[6].attachment.name == "Stone"
    assert world.player.inventory[7] is None
    result = act(world, "detach_item()")
    assert result.ok
    assert world.player.inventory[6].attachment is None
    assert world.player.find_item("Stone") == 10


def test_attach_non_attachable_fails(world):
    world, _ = apply_sim_command(world, 'add_item_by_name("Wood", 1)')
    act(world, "choose_item(slot_index=0)")
    result = act(world, "attach_item(slot_index=6)")
    assert not result.ok


def test_detach_with_nothing_attached(world):
    act(world, "choose_item(slot_index=0)")
    result = act(world, "detach_item()")
    assert not result.ok
    assert "nothing attached" in result.message


# -- menus and trade ----------------------------------------------------------

def test_shop_buy_conserves_value(world):
    world, _ = apply_sim_command(world, 'warp_shop("pierre")')
    act(world, 'interact(direction="up")')
    money = world.player.money
    result = act(world, 'choose_option(option_index=0, quantity=5, direction="in")')
    assert result.ok
    assert world.player.money == money - 5 * 20
    assert world.player.find_item("Parsnip Seeds") == 5


def test_shop_buy_insufficient_money(world):
    world, _ = apply_sim_command(world, "set_money(10)")
    world, _ = apply_sim_command(world, 'warp_shop("pierre")')
    act(world, 'interact(direction="up")')
    result = act(world, 'choose_option(option_index=0, quantity=5, direction="in")')
    assert not result.ok


def test_shop_sell_credits_sell_value(world):
    world, _ = apply_sim_command(world, 'add_item_by_name("Parsnip", 5)')
    world, _ = apply_sim_command(world, 'warp_shop("pierre")')
    act(world, 'interact(direction="up")')
    money = world.player.money
    result = act(world, 'choose_option(option_index=0, quantity=5, direction="out")')
    assert result.ok
    assert world.player.money == money + 5 * 35
    assert world.ledgers["sold"]["Parsnip"] == 5


def test_choose_option_without_menu_fails(world):
    result = act(world, "choose_option(option_index=0)")
    assert not result.ok


def test_menu_open_close(world):
    result = act(world, 'menu(option="open", menu_name="map")')
    assert result.ok and world.menu.kind == "map"
    result = act(world, 'menu(option="close", menu_name="map")')
    assert result.ok and not world.menu.is_open


def test_unknown_menu_name(world):
    result = act(world, 'menu(option="open", menu_name="wardrobe")')
    assert not result.ok


def test_shipping_moves_to_ledger_and_pays_at_day_end(world):
    world, _ = apply_sim_command(world, 'add_item_by_name("Parsnip", 2)')
    world.player.x, world.player.y = 8, 6
    act(world, 'interact(direction="up")')
    result = act(world, 'choose_option(option_index=0, quantity=2, direction="out")')
    assert result.ok
    assert world.shipped["Parsnip"] == 2
    money = world.player.money
    from valleybench.world import end_of_day

    end_of_day(world, slept_in_bed=True)
    assert world.player.money == money + 2 * 35


# -- navigate -----------------------------------------------------------------

def test_navigate_disabled_by_default(world):
    result = act(world, 'navigate(name="BusStop")')
    assert not result.ok
    assert "disabled" in result.message


def test_navigate_enabled_routes_through_exit_graph(world):
    world, result = execute(world, parse_action('navigate(name="SeedShop")'), navigate_enabled=True)
    assert result.ok
    assert world.player.map_id == "SeedShop"
    assert result.ticks_consumed > 0


# -- monster interplay --------------------------------------------------------

def test_shelled_crab_is_invulnerable(world):
    world, _ = apply_sim_command(world, "warp_mine(2)")
    crab = next(m for m in world.monsters if m.species == "Rock Crab")
    crab.x, crab.y = world.player.x + 1, world.player.y
    world.total_ticks = 3  # shelled phase
    act(world, "choose_item(slot_index=5)")
    hp = crab.hp
    result = act(world, 'use(direction="right")')
    assert not result.ok
    assert crab.hp == hp


def test_no_monsters_world_unchanged(world):
    from valleybench.monsters import monster_ai_step

    before = world.serialize()
    monster_ai_step(world, 1)
    assert world.serialize() == before
