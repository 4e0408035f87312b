"""Textual observation assembly.

The record is a plain JSON-ready dict: character status, the 36-slot
toolbar, the current menu, and an agent-centered window of surrounding
blocks whose attribute strings come from a fixed vocabulary (documented in
docs/observation_schema.md).  Map-level global information is computed only
when explicitly enabled.
"""

from __future__ import annotations

from valleybench.state import WorldState

DEFAULT_WINDOW = 3  # 7x7


def _tile_attributes(world: WorldState, map_id: str, x: int, y: int) -> list[str]:
    map_def = world.map_def(map_id)
    map_state = world.map_state(map_id)
    attrs: list[str] = []

    if (x, y) in map_def.water:
        attrs.append("Type: Water")
    elif (x, y) in map_def.walls:
        attrs.append("Type: Wall")
    elif (x, y) in map_def.diggable:
        attrs.append("Type: Dirt")
    else:
        attrs.append("Type: Ground" if map_def.outdoor else "Type: Floor")
    attrs.append(f"Diggable: {(x, y) in map_def.diggable}")
    attrs.append(f"Passable: {world.is_passable(map_id, x, y)}")

    tile = map_state.soil.get((x, y))
    if tile is not None:
        attrs.append("Tilled: True")
        if tile.watered:
            attrs.append("Watered: True")
        if tile.fertilizer:
            attrs.append(f"Fertilizer: {tile.fertilizer}")
        if tile.crop is not None:
            crop_def = world.pack.crops[tile.crop.crop_name]
            if tile.crop.days_grown >= crop_def.growth_days:
                attrs.append(f"Crop: {tile.crop.crop_name} (mature)")
            else:
                attrs.append(
                    f"Crop: {tile.crop.crop_name} (stage {tile.crop.days_grown}/{crop_def.growth_days})"
                )

    obj = map_state.objects.get((x, y))
    if obj is not None:
        if obj.kind == "Furnace":
            if obj.data.get("product"):
                status = "ready" if world.total_ticks >= obj.data.get("ready_at", 0) else "working"
            else:
                status = "idle"
            attrs.append(f"Object: Furnace ({status})")
        elif obj.kind == "incubator":
            days = obj.data.get("days_left")
            attrs.append(f"Object: Incubator ({'empty' if days is None else f'{days} day(s)'})")
        else:
            attrs.append(f"Object: {obj.kind}")

    ground = map_state.ground_items.get((x, y))
    if ground is not None:
        attrs.append(f"Item: {ground.item}" + (f" x{ground.quantity}" if ground.quantity > 1 else ""))

    building = world.building_at(map_id, x, y)
    if building is not None:
        attrs.append(f"Building: {building.type_name}")
        if world.building_door(building) == (x, y):
            attrs.append("Door: True")
        bdef = world.building_def(building)
        if bdef.animal_door is not None and (x, y) == (
            building.x + bdef.animal_door[0],
            building.y + bdef.animal_door[1],
        ):
            attrs.append(f"AnimalDoor: {'open' if building.animal_door_open else 'closed'}")

    exit_target = world.exit_at(map_id, x, y)
    if exit_target is not None and (building is None or world.building_door(building) != (x, y)):
        attrs.append(f"Exit: {exit_target[0]}")

    feature = world.feature_at(map_id, x, y)
    if feature is not None:
        if feature.kind == "pet_bowl":
            attrs.append(f"Feature: PetBowl ({'full' if world.pet_bowl_filled else 'empty'})")
        elif feature.kind == "counter":
            attrs.append(f"Feature: Counter ({feature.data['shop']})")
        elif feature.kind == "ladder_down":
            attrs.append("Feature: LadderDown")
        elif feature.kind == "stove":
            if world.house_level >= feature.data.get("requires_house_level", 0):
                attrs.append("Feature: Stove")
            else:
                attrs.append("Feature: KitchenCorner")
        else:
            attrs.append(f"Feature: {feature.kind.capitalize()}")

    for monster in world.monsters_on(map_id):
        if (monster.x, monster.y) == (x, y) and not monster.burrowed:
            attrs.append(f"Monster: {monster.species} (hp {monster.hp})")
    for animal in world.animals_on(map_id):
        if (animal.x, animal.y) == (x, y):
            attrs.append(f"Animal: {animal.name} ({animal.type_name})")
    return attrs


def _toolbar(world: WorldState) -> list[str]:
    lines = []
    for index, stack in enumerate(world.player.inventory):
        if stack is None:
            lines.append(f"slot_index {index}: No item")
        else:
            line = f"slot_index {index}: [{stack.name}] (quantity: {stack.quantity})"
            if stack.attachment is not None:
                line += f" [attached: {stack.attachment.name}]"
            lines.append(line)
    return lines


def _menu_record(world: WorldState) -> dict:
    menu = world.menu
    record: dict = {"type": menu.kind, "message": menu.message}
    if menu.kind == "none":
        return record
    record["options"] = [
        {"index": i, "label": option["label"]} for i, option in enumerate(menu.options)
    ]
    if menu.out_options:
        record["out_options"] = [
            {"index": i, "label": option["label"]} for i, option in enumerate(menu.out_options)
        ]
    if menu.kind == "shop":
        record["shopmenudata"] = record["options"]
    if menu.kind == "animals":
        record["animalsmenudata"] = record["options"]
    return record


def _map_info(world: WorldState) -> dict:
    """Map-level global information for the player's current map."""
    map_id = world.player.map_id
    map_state = world.map_state(map_id)
    crops = [
        {"position": [x, y], "crop": tile.crop.crop_name}
        for (x, y), tile in sorted(map_state.soil.items())
        if tile.crop is not None
    ]
    exits = [
        {"position": [e.x, e.y], "to": e.target_map or "interior"}
        for e in world.map_def(map_id).exits
    ]
    npcs = [{"name": n.name, "position": [n.x, n.y]} for n in world.npcs_on(map_id)]
    buildings = [
        {"type": b.type_name, "position": [b.x, b.y]}
        for b in world.buildings
        if b.map_id == map_id
    ]
    animals = [{"name": a.name, "position": [a.x, a.y]} for a in world.animals_on(map_id)]
    return {"crops": crops, "exits": exits, "npcs": npcs, "buildings": buildings, "animals": animals}


def text_observation(world: WorldState, n: int = DEFAULT_WINDOW, include_map_info: bool = False) -> dict:
    """Structured textual record for the current state; pure and deterministic."""
    if n < 0:
        raise ValueError("window radius must be >= 0")
    player = world.player
    map_def = world.map_def(player.map_id)

    surrounding = []
    npcs_here = {(npc.x, npc.y): npc for npc in world.npcs_on(player.map_id)}
    for dy in range(-n, n + 1):
        for dx in range(-n, n + 1):
            x, y = player.x + dx, player.y + dy
            if not map_def.in_bounds(x, y):
                continue
            block: dict = {"position": [dx, dy], "object": _tile_attributes(world, player.map_id, x, y)}
            npc = npcs_here.get((x, y))
            if npc is not None:
                block["npc_on_this_tile"] = {
                    "name": npc.name,
                    "friendship": player.friendships.get(npc.name, 0),
                    "talked_today": npc.name in world.talked_today,
                }
            surrounding.append(block)

    chosen = player.chosen_item()
    record = {
        "health": player.health,
        "energy": float(player.energy),
        "money": player.money,
        "current_time": world.clock.formatted(),
        "day": world.clock.day_of_season,
        "season": world.clock.season.value,
        "year": world.clock.year,
        "weather": world.weather,
        "location": player.map_id,
        "position": [player.x, player.y],
        "facing": player.facing,
        "item_in_hand": {
            "index": player.chosen_slot,
            "currentitem": chosen.name if chosen is not None else "No item",
        },
        "toolbar": _toolbar(world),
        "current_menu": _menu_record(world),
        "surrounding_blocks": surrounding,
    }
    if include_map_info:
        record["map_info"] = _map_info(world)
    return record
