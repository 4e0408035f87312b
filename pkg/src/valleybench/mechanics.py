"""Action execution: the ten-action interface against a WorldState.

execute() dispatches an Action, charges its tick cost, then advances the
clock and runs monster AI for the elapsed ticks.  Failed actions leave the
world unchanged apart from that clock advancement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from valleybench.actions import (
    Action,
    AttachItem,
    ChooseItem,
    ChooseOption,
    Craft,
    DetachItem,
    Interact,
    Menu,
    Move,
    Navigate,
    Use,
)
from valleybench.monsters import monster_ai_step, strike_tile
from valleybench.pathfind import bfs_path, distances_from, step_direction
from valleybench.state import (
    Animal,
    Building,
    Crop,
    MenuState,
    QuestState,
    SoilTile,
    WorldObject,
    WorldState,
)
from valleybench.world import Event, end_of_day, advance_minutes, make_item

TOOL_VERBS = {
    "Hoe": "hoe",
    "Watering Can": "can",
    "Axe": "axe",
    "Pickaxe": "pickaxe",
    "Copper Pickaxe": "pickaxe",
    "Scythe": "scythe",
}

WEAPON_DAMAGE = {"Rusty Sword": 5}

DIR_DELTAS = {"up": (0, -1), "right": (1, 0), "down": (0, 1), "left": (-1, 0)}


@dataclass(slots=True)
class ActionResult:
    ok: bool
    message: str
    ticks_consumed: int = 0
    events: list[Event] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "message": self.message,
            "ticks_consumed": self.ticks_consumed,
            "events": [e.to_dict() for e in self.events],
        }


def execute(world: WorldState, action: Action, navigate_enabled: bool = False) -> tuple[WorldState, ActionResult]:
    """Run one action, then advance time and monster AI for its tick cost."""
    handler = {
        Move: lambda: do_move(world, action.x, action.y),
        Use: lambda: do_use(world, action.direction),
        Interact: lambda: do_interact(world, action.direction),
        ChooseItem: lambda: do_choose_item(world, action.slot_index),
        AttachItem: lambda: do_attach_item(world, action.slot_index),
        DetachItem: lambda: do_detach_item(world),
        Craft: lambda: do_craft(world, action.item),
        ChooseOption: lambda: do_choose_option(world, action.option_index, action.quantity, action.direction),
        Menu: lambda: do_menu(world, action.option, action.menu_name),
        Navigate: lambda: do_navigate(world, action.name, navigate_enabled),
    }[type(action)]
    result = handler()
    advance_world_ticks(world, result.ticks_consumed, result.events)
    return world, result


def advance_world_ticks(world: WorldState, ticks: int, events: list[Event]) -> None:
    """Advance the clock tick by tick, interleaving monster AI.  Stops early
    when a forced day end fires or the player is knocked out."""
    for _ in range(ticks):
        clock_events = advance_minutes(world, 10)
        events.extend(clock_events)
        if any(e.kind == "passout" for e in clock_events):
            break
        world.total_ticks += 1
        events.extend(monster_ai_step(world, 1))
        if world.player.health <= 0:
            events.append(Event("knocked-out"))
            events.extend(end_of_day(world, slept_in_bed=False))
            break


def _move_ticks(world: WorldState, path_len: int) -> int:
    cfg = world.pack.config
    free = cfg["move_free_tiles"]
    per = cfg["move_tiles_per_tick"]
    if path_len <= free:
        return 0
    return math.ceil((path_len - free) / per)


def _facing_tile(world: WorldState) -> tuple[int, int]:
    dx, dy = DIR_DELTAS[world.player.facing]
    return (world.player.x + dx, world.player.y + dy)


# ---------------------------------------------------------------------------
# move
# ---------------------------------------------------------------------------

def do_move(world: WorldState, x: int, y: int) -> ActionResult:
    player = world.player
    map_def = world.map_def(player.map_id)
    if not map_def.in_bounds(x, y):
        return ActionResult(False, f"({x},{y}) is outside {player.map_id}")
    if (x, y) == (player.x, player.y):
        return ActionResult(True, "already there")

    def passable(px: int, py: int) -> bool:
        return world.is_passable(player.map_id, px, py)

    target: tuple[int, int] | None = None
    note = ""
    if passable(x, y):
        path = bfs_path((player.x, player.y), (x, y), passable)
        if path is not None:
            target = (x, y)
    if target is None:
        # Blocked or unreachable target: settle for the nearest reachable
        # tile adjacent to it, ordered up/right/down/left on ties.
        dist = distances_from((player.x, player.y), passable)
        best: tuple[int, tuple[int, int]] | None = None
        for dx, dy in ((0, -1), (1, 0), (0, 1), (-1, 0)):
            cand = (x + dx, y + dy)
            if cand == (player.x, player.y):
                best = (0, cand)
                break
            if cand in dist and (best is None or dist[cand] < best[0]):
                best = (dist[cand], cand)
        if best is None:
            return ActionResult(False, f"no path to ({x},{y})")
        target = best[1]
        note = "stopped adjacent"
        if target == (player.x, player.y):
            player.facing = _face_toward(player.x, player.y, x, y)
            return ActionResult(True, note or "already adjacent")
        path = bfs_path((player.x, player.y), target, passable)
        if path is None:
            return ActionResult(False, f"no path to ({x},{y})")

    start = (player.x, player.y)
    player.x, player.y = path[-1]
    previous = path[-2] if len(path) >= 2 else start
    player.facing = step_direction(previous, path[-1])
    if note:
        # When stopping adjacent, face the originally requested tile.
        player.facing = _face_toward(player.x, player.y, x, y)
    ticks = _move_ticks(world, len(path))
    return ActionResult(True, note or f"moved to ({player.x},{player.y})", ticks_consumed=ticks)


def _face_toward(px: int, py: int, tx: int, ty: int) -> str:
    dx, dy = tx - px, ty - py
    if abs(dx) >= abs(dy) and dx != 0:
        return "right" if dx > 0 else "left"
    if dy != 0:
        return "down" if dy > 0 else "up"
    return "down"


# ---------------------------------------------------------------------------
# use
# ---------------------------------------------------------------------------

def do_use(world: WorldState, direction: str) -> ActionResult:
    player = world.player
    player.facing = direction
    chosen = player.chosen_item()
    if chosen is None:
        return ActionResult(False, "no item chosen", ticks_consumed=1)
    tx, ty = _facing_tile(world)
    map_state = world.current_map()
    cfg = world.pack.config

    if chosen.name in WEAPON_DAMAGE:
        events, hit, reason = strike_tile(world, tx, ty, WEAPON_DAMAGE[chosen.name])
        if hit:
            return ActionResult(True, "struck", ticks_consumed=1, events=events)
        return ActionResult(False, reason, ticks_consumed=1, events=events)

    verb = TOOL_VERBS.get(chosen.name)
    if verb is None:
        item_def = world.pack.item(chosen.name)
        if item_def.edible_energy > 0:
            player.energy = min(float(player.base_energy), player.energy + item_def.edible_energy)
            _consume_chosen(world, 1)
            return ActionResult(True, f"ate {item_def.name}", ticks_consumed=1)
        if item_def.category in ("seed", "craftable"):
            return ActionResult(False, "place that with interact()", ticks_consumed=1)
        return ActionResult(False, f"{chosen.name} is not usable", ticks_consumed=1)

    if player.energy <= 0:
        return ActionResult(False, "too exhausted", ticks_consumed=1)

    map_def = world.map_def(player.map_id)
    obj = map_state.objects.get((tx, ty))

    if verb == "hoe":
        if obj is not None and obj.kind == "Artifact Spot":
            item = obj.data["item"]
            del map_state.objects[(tx, ty)]
            _gain(world, item, 1)
            _spend_energy(world, cfg["tool_energy"])
            return ActionResult(True, f"dug up {item}", ticks_consumed=1,
                                events=[Event("item-dug", {"item": item})])
        if obj is None and (tx, ty) in map_def.diggable and (tx, ty) not in map_state.soil:
            if not world.is_passable(player.map_id, tx, ty):
                return ActionResult(False, "blocked", ticks_consumed=1)
            map_state.soil[(tx, ty)] = SoilTile()
            _spend_energy(world, cfg["tool_energy"])
            return ActionResult(True, "tilled", ticks_consumed=1,
                                events=[Event("tile-tilled", {"x": tx, "y": ty})])
        return ActionResult(False, "cannot hoe that", ticks_consumed=1)

    if verb == "can":
        feature = world.feature_at(player.map_id, tx, ty)
        if feature is not None and feature.kind == "pet_bowl":
            if world.pet_bowl_filled:
                return ActionResult(False, "bowl is already full", ticks_consumed=1)
            world.pet_bowl_filled = True
            world.bump("filled", "Pet Bowl")
            for animal in world.animals:
                if animal.is_pet:
                    player.friendships[animal.name] = (
                        player.friendships.get(animal.name, 0) + cfg["pet_bowl_points"]
                    )
            return ActionResult(True, "filled the pet bowl", ticks_consumed=1,
                                events=[Event("bowl-filled")])
        if (tx, ty) in map_def.water:
            player.watering_can_charge = cfg["watering_can_capacity"]
            return ActionResult(True, "refilled the watering can", ticks_consumed=1)
        tile = map_state.soil.get((tx, ty))
        if tile is not None:
            if player.watering_can_charge <= 0:
                return ActionResult(False, "watering can is empty", ticks_consumed=1)
            if tile.watered:
                return ActionResult(True, "already watered", ticks_consumed=1)
            tile.watered = True
            player.watering_can_charge -= 1
            _spend_energy(world, cfg["tool_energy"])
            return ActionResult(True, "watered", ticks_consumed=1,
                                events=[Event("tile-watered", {"x": tx, "y": ty})])
        return ActionResult(False, "nothing to water", ticks_consumed=1)

    # Axe, pickaxe and scythe all resolve against breakable objects.
    if obj is None:
        return ActionResult(False, "nothing there", ticks_consumed=1)
    spec = cfg["objects"].get(obj.kind)
    if spec is None or TOOL_VERBS.get(spec["tool"]) != verb:
        return ActionResult(False, f"wrong tool for {obj.kind}", ticks_consumed=1)
    obj.hits_left -= 1
    _spend_energy(world, cfg["tool_energy"])
    if obj.hits_left > 0:
        return ActionResult(True, f"hit the {obj.kind}", ticks_consumed=1)
    del map_state.objects[(tx, ty)]
    events = [Event("tile-cleared", {"kind": obj.kind, "x": tx, "y": ty})]
    world.bump("cleared", obj.kind)
    for item, count in spec.get("drops", {}).items():
        _gain(world, item, count)
        events.append(Event("item-gained", {"item": item, "count": count}))
    hay = spec.get("silo_hay", 0)
    if hay and any(b.type_name == "Silo" for b in world.buildings):
        world.hay_in_silo = min(cfg["silo_capacity"], world.hay_in_silo + hay)
        events.append(Event("hay-stored", {"count": hay}))
    return ActionResult(True, f"cleared the {obj.kind}", ticks_consumed=1, events=events)


def _spend_energy(world: WorldState, amount: float) -> None:
    world.player.energy -= amount


def _gain(world: WorldState, item: str, count: int) -> bool:
    """Add acquired items to the inventory and the harvested ledger."""
    ok = world.player.add_item(make_item(world.pack, item, count))
    if ok:
        world.bump("harvested", item, count)
    return ok


def _consume_chosen(world: WorldState, count: int) -> None:
    slot = world.player.chosen_slot
    stack = world.player.inventory[slot]
    stack.quantity -= count
    if stack.quantity <= 0:
        world.player.inventory[slot] = None


# ---------------------------------------------------------------------------
# interact
# ---------------------------------------------------------------------------

def do_interact(world: WorldState, direction: str) -> ActionResult:
    player = world.player
    player.facing = direction
    tx, ty = _facing_tile(world)
    map_state = world.current_map()
    cfg = world.pack.config

    # People first.
    for npc in world.npcs_on(player.map_id):
        if (npc.x, npc.y) == (tx, ty):
            return _interact_npc(world, npc.name)
    for animal in world.animals_on(player.map_id):
        if (animal.x, animal.y) == (tx, ty):
            return _pet_animal(world, animal.name)

    # Loose items.
    ground = map_state.ground_items.get((tx, ty))
    if ground is not None:
        if not _gain(world, ground.item, ground.quantity):
            return ActionResult(False, "inventory full", ticks_consumed=1)
        del map_state.ground_items[(tx, ty)]
        return ActionResult(True, f"picked up {ground.item}", ticks_consumed=1,
                            events=[Event("item-gained", {"item": ground.item, "count": ground.quantity})])

    # Machines and placed objects.
    obj = map_state.objects.get((tx, ty))
    if obj is not None and obj.kind == "Furnace":
        return _interact_furnace(world, obj)
    if obj is not None and obj.kind == "incubator":
        return _interact_incubator(world, obj)

    # Crops and soil.
    tile = map_state.soil.get((tx, ty))
    if tile is not None and tile.crop is not None:
        crop_def = world.pack.crops[tile.crop.crop_name]
        if tile.crop.days_grown >= crop_def.growth_days:
            tile.crop = None
            _gain(world, crop_def.name, crop_def.yield_count)
            return ActionResult(True, f"harvested {crop_def.name}", ticks_consumed=1,
                                events=[Event("crop-harvested", {"crop": crop_def.name})])
    chosen = player.chosen_item()
    if tile is not None and tile.crop is None and chosen is not None:
        item_def = world.pack.item(chosen.name)
        if item_def.category == "seed":
            crop_def = world.pack.crops_by_seed.get(chosen.name)
            if crop_def is None:
                return ActionResult(False, f"{chosen.name} cannot be planted here", ticks_consumed=1)
            tile.crop = Crop(crop_name=crop_def.name)
            _consume_chosen(world, 1)
            return ActionResult(True, f"sowed {crop_def.name}", ticks_consumed=1,
                                events=[Event("crop-sown", {"crop": crop_def.name})])
        if item_def.fertilizer:
            if tile.fertilizer is not None:
                return ActionResult(False, "already fertilized", ticks_consumed=1)
            tile.fertilizer = chosen.name
            _consume_chosen(world, 1)
            return ActionResult(True, "fertilized", ticks_consumed=1,
                                events=[Event("tile-fertilized", {"x": tx, "y": ty})])

    # Placing a craftable (furnace, chest, fence, ...) on an open tile.
    if chosen is not None and world.pack.item(chosen.name).category == "craftable" \
            and not world.pack.item(chosen.name).fertilizer \
            and tile is None and obj is None and world.is_passable(player.map_id, tx, ty):
        kind = chosen.name
        map_state.objects[(tx, ty)] = _new_placed_object(kind)
        _consume_chosen(world, 1)
        return ActionResult(True, f"placed {kind}", ticks_consumed=1,
                            events=[Event("object-placed", {"kind": kind})])

    # Buildings: shipping bin, animal door, entry door.
    building = world.building_at(player.map_id, tx, ty)
    if building is not None:
        bdef = world.building_def(building)
        if building.type_name == "Shipping Bin":
            _open_shipping_menu(world)
            return ActionResult(True, "shipping bin open", events=[Event("menu-opened", {"kind": "shipping"})])
        if bdef.animal_door is not None and (tx, ty) == (building.x + bdef.animal_door[0], building.y + bdef.animal_door[1]):
            building.animal_door_open = not building.animal_door_open
            if building.animal_door_open:
                world.bump("opened", building.type_name)
                return ActionResult(True, f"opened the {building.type_name}", ticks_consumed=1,
                                    events=[Event("door-opened", {"building": building.type_name})])
            return ActionResult(True, f"closed the {building.type_name}", ticks_consumed=1)
        door = world.building_door(building)
        if door == (tx, ty) and bdef.interior is not None:
            return _travel(world, bdef.interior, bdef.interior_spawn[0], bdef.interior_spawn[1])

    # Map exits and doors.
    exit_target = world.exit_at(player.map_id, tx, ty)
    if exit_target is not None:
        return _travel(world, *exit_target)

    # Fixed features.
    feature = world.feature_at(player.map_id, tx, ty)
    if feature is not None:
        if feature.kind == "bed":
            world.menu = MenuState(
                kind="dialogue",
                message="Go to sleep for the night?",
                options=[{"label": "Yes", "op": "sleep_yes"}, {"label": "No", "op": "close"}],
            )
            return ActionResult(True, "bedtime?", events=[Event("menu-opened", {"kind": "dialogue"})])
        if feature.kind == "board":
            return _interact_board(world)
        if feature.kind == "counter":
            return _open_counter_menu(world, feature.data["shop"])
        if feature.kind == "elevator":
            options = [{"label": "Floor 1", "op": "elevator", "level": 1}]
            for level in range(5, world.deepest_mine_level + 1, 5):
                options.append({"label": f"Floor {level}", "op": "elevator", "level": level})
            world.menu = MenuState(kind="dialogue", message="Take the elevator to which floor?", options=options)
            return ActionResult(True, "elevator panel", events=[Event("menu-opened", {"kind": "dialogue"})])
        if feature.kind == "ladder_down":
            next_level = feature.data["to_level"]
            world.deepest_mine_level = max(world.deepest_mine_level, next_level)
            return _travel(world, f"UndergroundMine{next_level}", 3, 4)
        if feature.kind == "stove":
            if world.house_level < feature.data.get("requires_house_level", 0):
                return ActionResult(False, "just a bare kitchen corner", ticks_consumed=1)
            _open_crafting_menu(world, station="stove")
            return ActionResult(True, "cooking at the stove", events=[Event("menu-opened", {"kind": "crafting"})])
        if feature.kind == "pet_bowl":
            state = "full" if world.pet_bowl_filled else "empty"
            return ActionResult(False, f"the pet bowl is {state}; fill it with the watering can",
                                ticks_consumed=1)
    return ActionResult(False, "nothing to interact with", ticks_consumed=1)


def _new_placed_object(kind: str) -> WorldObject:
    data = {}
    if kind == "Furnace":
        data = {"product": None, "ready_at": None}
    return WorldObject(kind=kind, hits_left=1, data=data)


def _travel(world: WorldState, map_id: str, x: int, y: int) -> ActionResult:
    world.player.map_id = map_id
    world.player.x, world.player.y = x, y
    world.menu = MenuState()
    return ActionResult(True, f"entered {map_id}", ticks_consumed=1,
                        events=[Event("map-changed", {"map": map_id})])


def _interact_npc(world: WorldState, name: str) -> ActionResult:
    player = world.player
    cfg = world.pack.config
    chosen = player.chosen_item()

    # Delivering gathered items completes an active help quest.
    for quest in world.quests:
        if quest.kind == "help" and quest.state == "active" and quest.npc == name:
            if player.find_item(quest.item) >= quest.count:
                player.remove_items(quest.item, quest.count)
                quest.state = "rewarded"
                player.money += quest.reward_money
                world.bump_counter("help_completed")
                return ActionResult(True, f"delivered {quest.count} {quest.item} to {name}",
                                    ticks_consumed=1, events=[Event("help-quest-completed", {"npc": name})])

    if chosen is not None and world.pack.item(chosen.name).giftable:
        if name in world.gifted_today:
            return ActionResult(False, f"{name} already received a gift today", ticks_consumed=1)
        taste, points = world.pack.gift_reaction(name, chosen.name)
        _consume_chosen(world, 1)
        player.friendships[name] = player.friendships.get(name, 0) + points
        world.gifted_today.add(name)
        world.bump("gifted", name)
        return ActionResult(True, f"{name} {taste} the {chosen.name}", ticks_consumed=1,
                            events=[Event("friendship-changed", {"npc": name, "delta": points})])

    if name in world.talked_today:
        return ActionResult(True, f"{name} has nothing more to say today", ticks_consumed=1)
    world.talked_today.add(name)
    world.bump("talked", name)
    player.friendships[name] = player.friendships.get(name, 0) + cfg["talk_points"]
    events = [Event("friendship-changed", {"npc": name, "delta": cfg["talk_points"]})]
    _note_greeting(world, events)
    return ActionResult(True, f"talked to {name}", ticks_consumed=1, events=events)


def _note_greeting(world: WorldState, events: list[Event]) -> None:
    for quest in world.quests:
        if quest.kind == "greet" and quest.state == "active":
            quest.progress = len(world.ledgers["talked"])
            if quest.progress >= quest.target:
                quest.state = "completed_unclaimed"
                world.completed_story.add(quest.quest_id)
                events.append(Event("quest-completed", {"quest": quest.quest_id}))


def _pet_animal(world: WorldState, name: str) -> ActionResult:
    if name in world.petted_today:
        return ActionResult(False, f"{name} was already petted today", ticks_consumed=1)
    world.petted_today.add(name)
    world.bump_counter("pet")
    points = world.pack.config["pet_points"]
    world.player.friendships[name] = world.player.friendships.get(name, 0) + points
    return ActionResult(True, f"petted {name}", ticks_consumed=1,
                        events=[Event("animal-petted", {"name": name}),
                                Event("friendship-changed", {"npc": name, "delta": points})])


def _interact_furnace(world: WorldState, obj) -> ActionResult:
    if obj.data.get("product"):
        ready_at = obj.data.get("ready_at", 0)
        if world.total_ticks >= ready_at:
            product = obj.data["product"]
            count = world.pack.recipes[product].count
            obj.data["product"] = None
            obj.data["ready_at"] = None
            world.player.add_item(make_item(world.pack, product, count))
            world.bump("crafted", product, count)
            return ActionResult(True, f"collected {product}", ticks_consumed=1,
                                events=[Event("machine-collected", {"product": product})])
        return ActionResult(False, "the furnace is still working", ticks_consumed=1)
    chosen = world.player.chosen_item()
    if chosen is None:
        return ActionResult(False, "choose an ore or mineral to smelt", ticks_consumed=1)
    for recipe in world.pack.recipes.values():
        if recipe.station != "furnace" or chosen.name not in recipe.ingredients:
            continue
        missing = [
            name for name, need in recipe.ingredients.items()
            if world.player.find_item(name) < need
        ]
        if missing:
            return ActionResult(False, f"missing {', '.join(missing)}", ticks_consumed=1)
        for name, need in recipe.ingredients.items():
            world.player.remove_items(name, need)
        obj.data["product"] = recipe.product
        obj.data["ready_at"] = world.total_ticks + recipe.machine_ticks
        return ActionResult(True, f"smelting {recipe.product}", ticks_consumed=1,
                            events=[Event("machine-loaded", {"product": recipe.product})])
    return ActionResult(False, f"the furnace cannot process {chosen.name}", ticks_consumed=1)


def _interact_incubator(world: WorldState, obj) -> ActionResult:
    if obj.data.get("days_left") is not None:
        return ActionResult(False, f"hatching in {obj.data['days_left']} day(s)", ticks_consumed=1)
    chosen = world.player.chosen_item()
    if chosen is None or chosen.name != "Egg":
        return ActionResult(False, "needs an egg", ticks_consumed=1)
    _consume_chosen(world, 1)
    obj.data["days_left"] = world.pack.config["incubator_hatch_days"]
    obj.data["hatches"] = "Chicken"
    return ActionResult(True, "egg placed in the incubator", ticks_consumed=1,
                        events=[Event("incubation-started")])


def _interact_board(world: WorldState) -> ActionResult:
    board = world.help_board
    if board is None or any(q.kind == "help" for q in world.quests):
        return ActionResult(False, "nothing new posted", ticks_consumed=1)
    world.menu = MenuState(
        kind="dialogue",
        message=f"Help wanted: {board['text']}",
        options=[{"label": "Accept", "op": "accept_help"}, {"label": "Decline", "op": "close"}],
    )
    return ActionResult(True, "reading the board", events=[Event("menu-opened", {"kind": "dialogue"})])


# ---------------------------------------------------------------------------
# menus
# ---------------------------------------------------------------------------

def _sellable_out_options(world: WorldState) -> list[dict]:
    options = []
    for index, stack in enumerate(world.player.inventory):
        if stack is None:
            continue
        item_def = world.pack.item(stack.name)
        if item_def.category in ("tool", "weapon") or item_def.sell_value <= 0:
            continue
        options.append({
            "label": f"{stack.name} x{stack.quantity} ({item_def.sell_value}g each)",
            "slot": index,
            "item": stack.name,
            "sell_value": item_def.sell_value,
        })
    return options


def _open_shipping_menu(world: WorldState) -> None:
    world.menu = MenuState(
        kind="shipping",
        message="Ship items: choose_option(..., direction=\"out\")",
        out_options=_sellable_out_options(world),
    )


def _open_counter_menu(world: WorldState, shop_id: str) -> ActionResult:
    shop = world.pack.shops[shop_id]
    if shop.menu_kind == "animals":
        options = [
            {"label": f"Purchase {animal_type} ({price}g)", "op": "buy_animal",
             "animal": animal_type, "price": price}
            for animal_type, price in shop.animals
        ]
        out_options = [
            {"label": f"Sell {animal.name} the {animal.type_name}", "animal_name": animal.name}
            for animal in world.animals
            if not animal.is_pet
        ]
        world.menu = MenuState(kind="animals", message=f"{shop.owner}'s livestock services",
                               shop_id=shop_id, options=options, out_options=out_options)
        return ActionResult(True, "animal services open", events=[Event("menu-opened", {"kind": "animals"})])
    if shop.menu_kind == "building":
        world.menu = MenuState(kind="building", message=f"{shop.owner}'s construction services",
                               shop_id=shop_id, options=_building_options(world))
        return ActionResult(True, "construction menu open", events=[Event("menu-opened", {"kind": "building"})])
    options = [
        {"label": f"{item} ({price}g)", "op": "buy", "item": item, "price": price}
        for item, price in shop.wares
    ]
    for index, service in enumerate(shop.services):
        options.append({"label": f"{service.label} ({service.price}g)", "op": "service", "service": index})
    world.menu = MenuState(kind="shop", message=f"{shop.owner}'s shop", shop_id=shop_id,
                           options=options, out_options=_sellable_out_options(world))
    return ActionResult(True, f"{shop.owner}'s shop open", events=[Event("menu-opened", {"kind": "shop"})])


def _building_options(world: WorldState) -> list[dict]:
    options = []
    for type_name in ("Big Coop", "Silo", "Shipping Bin"):
        bdef = world.pack.buildings[type_name]
        cost = ", ".join(f"{n} {item}" for item, n in bdef.build_cost.items()) or "free"
        options.append({"label": f"Build {type_name} ({cost})", "op": "build", "type": type_name})
    options.append({
        "label": "Upgrade Farmhouse (450 Wood)",
        "op": "upgrade_house",
    })
    for building in world.buildings:
        if building.type_name == "Farmhouse":
            continue
        options.append({"label": f"Move {building.type_name}", "op": "move", "type": building.type_name})
    for building in world.buildings:
        if building.type_name == "Farmhouse":
            continue
        options.append({"label": f"Demolish {building.type_name}", "op": "demolish", "type": building.type_name})
    return options


def _open_crafting_menu(world: WorldState, station: str | None = None) -> None:
    options = []
    for recipe in sorted(world.player.recipes_known):
        recipe_def = world.pack.recipes.get(recipe)
        if recipe_def is None or recipe_def.machine_ticks:
            continue
        options.append({"label": recipe, "op": "craft", "recipe": recipe})
    world.menu = MenuState(kind="crafting", message="Known recipes", options=options,
                           context={"station": station or ""})


def _open_quest_log(world: WorldState) -> None:
    options = []
    for quest in world.quests:
        if quest.state == "active":
            options.append({"label": f"Abandon: {quest.title}", "op": "quit_quest", "quest_id": quest.quest_id})
        elif quest.state == "completed_unclaimed":
            options.append({"label": f"Claim reward: {quest.title} ({quest.reward_money}g)",
                            "op": "claim_reward", "quest_id": quest.quest_id})
    lines = [f"{q.title}: {q.state}" for q in world.quests] or ["no quests"]
    world.menu = MenuState(kind="quest_log", message="; ".join(lines), options=options)


def do_menu(world: WorldState, option: str, menu_name: str) -> ActionResult:
    if option == "close":
        if not world.menu.is_open:
            return ActionResult(True, "no menu open")
        world.menu = MenuState()
        return ActionResult(True, "menu closed")
    if menu_name == "map":
        world.menu = MenuState(kind="map", message=f"You are in {world.player.map_id}.")
    elif menu_name == "quest_log":
        _open_quest_log(world)
    elif menu_name == "crafting":
        _open_crafting_menu(world)
    else:
        return ActionResult(False, f"unknown menu {menu_name!r}")
    return ActionResult(True, f"{menu_name} open", events=[Event("menu-opened", {"kind": world.menu.kind})])


def do_choose_item(world: WorldState, slot_index: int) -> ActionResult:
    world.player.chosen_slot = slot_index
    stack = world.player.inventory[slot_index]
    return ActionResult(True, f"holding {stack.name}" if stack else "holding nothing")


def do_attach_item(world: WorldState, slot_index: int) -> ActionResult:
    player = world.player
    chosen = player.chosen_item()
    if chosen is None:
        return ActionResult(False, "no item chosen")
    if not world.pack.item(chosen.name).attachable:
        return ActionResult(False, f"{chosen.name} takes no attachment")
    stack = player.inventory[slot_index]
    if stack is None:
        return ActionResult(False, "that slot is empty")
    if chosen.attachment is not None:
        return ActionResult(False, "something is already attached")
    if slot_index == player.chosen_slot:
        return ActionResult(False, "cannot attach an item to itself")
    player.inventory[slot_index] = None
    chosen.attachment = stack
    return ActionResult(True, f"attached {stack.name}")


def do_detach_item(world: WorldState) -> ActionResult:
    player = world.player
    chosen = player.chosen_item()
    if chosen is None or chosen.attachment is None:
        return ActionResult(False, "nothing attached")
    free = player.first_free_slot()
    if free is None:
        return ActionResult(False, "inventory full")
    player.inventory[free] = chosen.attachment
    chosen.attachment = None
    return ActionResult(True, "detached")


def do_craft(world: WorldState, item: str) -> ActionResult:
    player = world.player
    recipe = world.pack.recipes.get(item)
    if recipe is None:
        return ActionResult(False, f"no recipe produces {item!r}")
    if item not in player.recipes_known:
        return ActionResult(False, f"you have not learned {item}")
    if recipe.machine_ticks:
        return ActionResult(False, f"{item} is made by a {recipe.station}, not by hand")
    if recipe.station == "stove" and not _near_station(world, "stove"):
        return ActionResult(False, "needs a stove")
    missing = [name for name, need in recipe.ingredients.items() if player.find_item(name) < need]
    if missing:
        return ActionResult(False, f"insufficient ingredients: missing {', '.join(missing)}")
    for name, need in recipe.ingredients.items():
        player.remove_items(name, need)
    player.add_item(make_item(world.pack, item, recipe.count))
    world.bump("crafted", item, recipe.count)
    return ActionResult(True, f"crafted {item}", events=[Event("item-crafted", {"item": item})])


def _near_station(world: WorldState, kind: str) -> bool:
    player = world.player
    for feature in world.map_def(player.map_id).features:
        if feature.kind != kind:
            continue
        if kind == "stove" and world.house_level < feature.data.get("requires_house_level", 0):
            continue
        if abs(feature.x - player.x) <= 2 and abs(feature.y - player.y) <= 2:
            return True
    # Placed cookout-style stations would be objects; none ship in this pack.
    return False


# ---------------------------------------------------------------------------
# choose_option
# ---------------------------------------------------------------------------

def do_choose_option(world: WorldState, option_index: int, quantity: int | None,
                     direction: str | None) -> ActionResult:
    menu = world.menu
    if not menu.is_open:
        return ActionResult(False, "no menu open")
    quantity = quantity or 1

    if menu.kind == "dialogue":
        if option_index >= len(menu.options):
            return ActionResult(False, "invalid option")
        option = menu.options[option_index]
        world.menu = MenuState()
        return _run_dialogue_option(world, option)

    if menu.kind == "crafting":
        if option_index >= len(menu.options):
            return ActionResult(False, "invalid option")
        return do_craft(world, menu.options[option_index]["recipe"])

    if menu.kind == "quest_log":
        if option_index >= len(menu.options):
            return ActionResult(False, "invalid option")
        option = menu.options[option_index]
        quest = next(q for q in world.quests if q.quest_id == option["quest_id"])
        if option["op"] == "quit_quest":
            quest.state = "cancelled"
            world.bump_counter("quests_cancelled")
            _open_quest_log(world)
            return ActionResult(True, f"abandoned {quest.title}",
                                events=[Event("quest-cancelled", {"quest": quest.quest_id})])
        quest.state = "rewarded"
        world.player.money += quest.reward_money
        world.bump_counter("rewards_claimed")
        _open_quest_log(world)
        return ActionResult(True, f"claimed {quest.reward_money}g",
                            events=[Event("quest-reward-claimed", {"quest": quest.quest_id})])

    if menu.kind == "shop":
        return _shop_choose(world, option_index, quantity, direction or "in")
    if menu.kind == "shipping":
        if (direction or "out") != "out":
            return ActionResult(False, "the bin only takes items")
        return _ship_choose(world, option_index, quantity)
    if menu.kind == "animals":
        return _animals_choose(world, option_index, quantity, direction or "in")
    if menu.kind == "building":
        return _building_choose(world, option_index)
    return ActionResult(False, f"nothing to choose in the {menu.kind} menu")


def _run_dialogue_option(world: WorldState, option: dict) -> ActionResult:
    op = option.get("op", "close")
    if op == "close":
        return ActionResult(True, "closed")
    if op == "sleep_yes":
        events = [Event("slept-in-bed")]
        events.extend(end_of_day(world, slept_in_bed=True))
        return ActionResult(True, "a new day begins", events=events)
    if op == "accept_help":
        board = world.help_board
        world.quests.append(
            _help_quest_from_board(board)
        )
        return ActionResult(True, f"accepted: {board['text']}",
                            events=[Event("help-quest-accepted")])
    if op == "elevator":
        level = option["level"]
        return _travel(world, f"UndergroundMine{level}", 3, 4)
    return ActionResult(False, f"unhandled option {op!r}")


def _help_quest_from_board(board: dict) -> QuestState:
    return QuestState(
        quest_id=f"help:{board['npc']}",
        title=board["text"],
        kind="help",
        state="active",
        item=board["item"],
        count=board["count"],
        npc=board["npc"],
        reward_money=board["reward_money"],
    )


def _shop_choose(world: WorldState, option_index: int, quantity: int, direction: str) -> ActionResult:
    menu = world.menu
    shop = world.pack.shops[menu.shop_id]
    player = world.player

    if direction == "out":
        if not shop.buys_items:
            return ActionResult(False, f"{shop.owner} does not buy anything")
        if option_index >= len(menu.out_options):
            return ActionResult(False, "invalid option")
        entry = menu.out_options[option_index]
        stack = player.inventory[entry["slot"]]
        if stack is None or stack.name != entry["item"]:
            return ActionResult(False, "that stack is gone")
        count = min(quantity, stack.quantity)
        stack.quantity -= count
        if stack.quantity == 0:
            player.inventory[entry["slot"]] = None
        proceeds = entry["sell_value"] * count
        player.money += proceeds
        world.bump("sold", entry["item"], count)
        menu.out_options = _sellable_out_options(world)
        return ActionResult(True, f"sold {count} {entry['item']} for {proceeds}g",
                            events=[Event("item-sold", {"item": entry["item"], "count": count})])

    if option_index >= len(menu.options):
        return ActionResult(False, "invalid option")
    option = menu.options[option_index]
    if option["op"] == "buy":
        cost = option["price"] * quantity
        if player.money < cost:
            return ActionResult(False, f"not enough money ({cost}g needed)")
        if not player.add_item(make_item(world.pack, option["item"], quantity)):
            return ActionResult(False, "inventory full")
        player.money -= cost
        world.bump("purchased", option["item"], quantity)
        menu.out_options = _sellable_out_options(world)
        return ActionResult(True, f"bought {quantity} {option['item']} for {cost}g",
                            events=[Event("item-purchased", {"item": option["item"], "count": quantity})])
    return _shop_service(world, shop.services[option["service"]], quantity)


def _shop_service(world: WorldState, service, quantity: int) -> ActionResult:
    player = world.player
    cfg = world.pack.config

    if service.kind == "backpack":
        if player.inventory_capacity >= cfg["backpack_capacity_upgraded"]:
            return ActionResult(False, "your pack is already upgraded")
        if player.money < service.price:
            return ActionResult(False, "not enough money")
        player.money -= service.price
        player.inventory_capacity = cfg["backpack_capacity_upgraded"]
        world.bump_counter("backpack_upgrades")
        return ActionResult(True, "pack upgraded", events=[Event("backpack-upgraded")])

    if service.kind == "geode":
        have = player.find_item(service.item)
        count = min(quantity, have)
        if count == 0:
            return ActionResult(False, f"no {service.item} to process")
        fee = service.price * count
        if player.money < fee:
            return ActionResult(False, f"not enough money ({fee}g needed)")
        player.money -= fee
        player.remove_items(service.item, count)
        minerals = ("Amethyst", "Earth Crystal", "Quartz")
        events = []
        start = world.ledgers["processed"].get(service.item, 0)
        for i in range(count):
            mineral = minerals[(start + i) % len(minerals)]
            player.add_item(make_item(world.pack, mineral, 1))
            events.append(Event("geode-opened", {"yielded": mineral}))
        world.bump("processed", service.item, count)
        return ActionResult(True, f"processed {count} {service.item}", events=events)

    if service.kind == "tool_upgrade":
        for name, need in service.requires_items.items():
            if player.find_item(name) < need:
                return ActionResult(False, f"needs {need} {name}")
        if player.money < service.price:
            return ActionResult(False, "not enough money")
        player.money -= service.price
        for name, need in service.requires_items.items():
            player.remove_items(name, need)
        player.add_item(make_item(world.pack, service.item, 1))
        world.bump("tools_upgraded", service.item)
        return ActionResult(True, f"upgraded to {service.item}",
                            events=[Event("tool-upgraded", {"tool": service.item})])

    if service.kind in ("joja_membership", "joja_project"):
        if service.requires_flag and service.requires_flag not in world.flags:
            return ActionResult(False, f"requires {service.requires_flag}")
        if service.grants_flag in world.flags:
            return ActionResult(False, "already purchased")
        if player.money < service.price:
            return ActionResult(False, "not enough money")
        player.money -= service.price
        world.flags.add(service.grants_flag)
        return ActionResult(True, f"purchased {service.label}",
                            events=[Event("flag-gained", {"flag": service.grants_flag})])
    return ActionResult(False, f"unknown service {service.kind!r}")


def _ship_choose(world: WorldState, option_index: int, quantity: int) -> ActionResult:
    menu = world.menu
    player = world.player
    if option_index >= len(menu.out_options):
        return ActionResult(False, "invalid option")
    entry = menu.out_options[option_index]
    stack = player.inventory[entry["slot"]]
    if stack is None or stack.name != entry["item"]:
        return ActionResult(False, "that stack is gone")
    count = min(quantity, stack.quantity)
    stack.quantity -= count
    if stack.quantity == 0:
        player.inventory[entry["slot"]] = None
    world.shipped[entry["item"]] = world.shipped.get(entry["item"], 0) + count
    world.pending_ship_value += entry["sell_value"] * count
    menu.out_options = _sellable_out_options(world)
    return ActionResult(True, f"shipped {count} {entry['item']}",
                        events=[Event("item-shipped", {"item": entry["item"], "count": count})])


def _animals_choose(world: WorldState, option_index: int, quantity: int, direction: str) -> ActionResult:
    menu = world.menu
    player = world.player
    cfg = world.pack.config
    if direction == "out":
        if option_index >= len(menu.out_options):
            return ActionResult(False, "invalid option")
        name = menu.out_options[option_index]["animal_name"]
        animal = next((a for a in world.animals if a.name == name), None)
        if animal is None:
            return ActionResult(False, "that animal is gone")
        world.animals.remove(animal)
        player.money += cfg["animal_sell_value"]
        world.bump("animals_sold", animal.type_name)
        menu.out_options = [o for o in menu.out_options if o["animal_name"] != name]
        return ActionResult(True, f"sold {name}", events=[Event("animal-sold", {"type": animal.type_name})])
    if option_index >= len(menu.options):
        return ActionResult(False, "invalid option")
    option = menu.options[option_index]
    if player.money < option["price"]:
        return ActionResult(False, "not enough money")
    player.money -= option["price"]
    count = sum(1 for a in world.animals if a.type_name == option["animal"])
    name = f"{option['animal']} {count + 1}"
    coop = world.map_state("Coop")
    spot = next(
        ((x, y) for y in range(3, 7) for x in range(3, 10)
         if (x, y) not in coop.ground_items and world.is_passable("Coop", x, y)),
        (5, 5),
    )
    world.animals.append(Animal(type_name=option["animal"], name=name, map_id="Coop", x=spot[0], y=spot[1]))
    player.friendships.setdefault(name, 0)
    world.bump("animals_purchased", option["animal"])
    return ActionResult(True, f"purchased {name}", events=[Event("animal-purchased", {"type": option["animal"]})])


def _building_choose(world: WorldState, option_index: int) -> ActionResult:
    menu = world.menu
    player = world.player
    if option_index >= len(menu.options):
        return ActionResult(False, "invalid option")
    option = menu.options[option_index]
    op = option["op"]

    if op == "build":
        type_name = option["type"]
        bdef = world.pack.buildings[type_name]
        for item, need in bdef.build_cost.items():
            if player.find_item(item) < need:
                return ActionResult(False, f"needs {need} {item}")
        if player.money < bdef.build_price:
            return ActionResult(False, "not enough money")
        site = _free_build_site(world, type_name)
        if site is None:
            return ActionResult(False, "no clear site on the farm")
        for item, need in bdef.build_cost.items():
            player.remove_items(item, need)
        player.money -= bdef.build_price
        world.buildings.append(Building(type_name=type_name, map_id="Farm", x=site[0], y=site[1]))
        world.bump("built", type_name)
        menu.options = _building_options(world)
        return ActionResult(True, f"built {type_name}", events=[Event("building-built", {"type": type_name})])

    if op == "upgrade_house":
        cost = world.pack.buildings["Farmhouse"].build_cost
        for item, need in cost.items():
            if player.find_item(item) < need:
                return ActionResult(False, f"needs {need} {item}")
        for item, need in cost.items():
            player.remove_items(item, need)
        world.house_level += 1
        world.bump_counter("house_upgrades")
        return ActionResult(True, "farmhouse upgraded", events=[Event("house-upgraded", {"level": world.house_level})])

    target = next((b for b in world.buildings if b.type_name == option["type"]), None)
    if target is None:
        return ActionResult(False, f"no {option['type']} on the farm")
    if op == "move":
        site = _free_build_site(world, target.type_name, ignore=target)
        if site is None:
            return ActionResult(False, "no clear site to move to")
        target.x, target.y = site
        world.bump("moved", target.type_name)
        menu.options = _building_options(world)
        return ActionResult(True, f"moved {target.type_name}",
                            events=[Event("building-moved", {"type": target.type_name})])
    if op == "demolish":
        world.buildings.remove(target)
        world.bump("demolished", target.type_name)
        menu.options = _building_options(world)
        return ActionResult(True, f"demolished {target.type_name}",
                            events=[Event("building-demolished", {"type": target.type_name})])
    return ActionResult(False, f"unhandled option {op!r}")


def _free_build_site(world: WorldState, type_name: str, ignore: Building | None = None) -> tuple[int, int] | None:
    bdef = world.pack.buildings[type_name]
    farm = world.map_def("Farm")
    for site in farm.build_sites:
        clear = True
        for dx in range(bdef.width):
            for dy in range(bdef.height):
                x, y = site[0] + dx, site[1] + dy
                if not farm.terrain_passable(x, y):
                    clear = False
                    break
                blocker = world.building_at("Farm", x, y)
                if blocker is not None and blocker is not ignore:
                    clear = False
                    break
                if world.map_state("Farm").objects.get((x, y)) is not None:
                    clear = False
                    break
            if not clear:
                break
        if clear:
            return tuple(site)
    return None


# ---------------------------------------------------------------------------
# navigate
# ---------------------------------------------------------------------------

def do_navigate(world: WorldState, name: str, enabled: bool) -> ActionResult:
    if not enabled:
        return ActionResult(False, "navigate disabled")
    try:
        target = world.pack.resolve_map_id(name)
    except Exception:
        return ActionResult(False, f"unknown location {name!r}")
    if target == world.player.map_id:
        return ActionResult(True, f"already in {target}")
    graph: dict[str, set[str]] = {}
    for map_id, map_def in world.pack.maps.items():
        edges = set()
        for exit_def in map_def.exits:
            if exit_def.to_building is None:
                edges.add(exit_def.target_map)
        graph[map_id] = edges
    for building in world.buildings:
        bdef = world.building_def(building)
        if bdef.interior:
            graph.setdefault(building.map_id, set()).add(bdef.interior)
            graph.setdefault(bdef.interior, set()).add(building.map_id)
    # BFS over the map graph.
    frontier = [world.player.map_id]
    came: dict[str, str | None] = {world.player.map_id: None}
    while frontier:
        current = frontier.pop(0)
        if current == target:
            break
        for nxt in sorted(graph.get(current, ())):
            if nxt not in came:
                came[nxt] = current
                frontier.append(nxt)
    if target not in came:
        return ActionResult(False, f"no route to {target}")
    hops = 0
    node = target
    while came[node] is not None:
        hops += 1
        node = came[node]
    spawn = world.pack.maps[target].default_spawn
    world.player.map_id = target
    world.player.x, world.player.y = spawn
    world.menu = MenuState()
    return ActionResult(True, f"navigated to {target}", ticks_consumed=2 * hops,
                        events=[Event("map-changed", {"map": target})])
