from __future__ import annotations

import pytest

from valleybench.content import ContentError, load_content_pack


@pytest.fixture(scope="module")
def pack():
    return load_content_pack("valleylite")


def test_headline_constants_asserted(pack):
    assert pack.config["base_energy"] == 270
    assert pack.config["days_per_season"] == 28
    assert pack.config["day_end_minute"] == 1200


def test_recipes_reference_known_items(pack):
    for recipe in pack.recipes.values():
        assert recipe.product in pack.items
        for ingredient in recipe.ingredients:
            assert ingredient in pack.items


def test_every_exit_lands_on_open_ground(pack):
    for map_def in pack.maps.values():
        for exit_def in map_def.exits:
            if exit_def.to_building is not None:
                continue
            target = pack.maps[exit_def.target_map]
            assert target.terrain_passable(exit_def.target_x, exit_def.target_y)


def test_paired_exits_are_mutual(pack):
    """Stepping through a paired exit and back restores the standing tile."""
    for map_def in pack.maps.values():
        for exit_def in map_def.exits:
            if exit_def.to_building is not None or not exit_def.paired:
                continue
            landing = (exit_def.target_x, exit_def.target_y)
            target = pack.maps[exit_def.target_map]
            # The landing tile must be adjacent to some exit pointing back
            # whose own landing is adjacent to this exit tile.
            back = [
                e for e in target.exits
                if e.target_map == map_def.map_id
                and abs(e.x - landing[0]) + abs(e.y - landing[1]) == 1
            ]
            assert back, f"no return exit near landing of {map_def.map_id}({exit_def.x},{exit_def.y})"
            assert any(
                abs(e.target_x - exit_def.x) + abs(e.target_y - exit_def.y) == 1
                for e in back
            )


def test_unknown_pack_rejected():
    with pytest.raises(ContentError):
        load_content_pack("no_such_pack")


def test_mine_levels_complete(pack):
    for level in range(1, 16):
        assert f"UndergroundMine{level}" in pack.maps


def test_npc_positions_are_passable(pack):
    for npc in pack.npcs.values():
        for entry in npc.schedule:
            assert pack.maps[entry.map_id].terrain_passable(entry.x, entry.y), npc.name


def test_gift_reaction_lookup(pack):
    taste, points = pack.gift_reaction("Abigail", "Amethyst")
    assert taste == "loved"
    assert points == pack.gift_points["loved"]
    taste, points = pack.gift_reaction("Abigail", "Wood")
    assert taste == "neutral"
