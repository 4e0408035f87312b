"""Simulator-API commands: the task-setup side channel.

These commands poke world state directly, bypassing the normal mechanics
rules; every command maps to exactly one handler in REGISTRY.  Unknown
commands, arity mismatches and references to content the pack does not
define are all hard errors, never silent no-ops.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from valleybench import actions as _grammar
from valleybench.clock import Season, clock_time_to_minutes
from valleybench.content import ContentError
from valleybench.state import (
    Animal,
    Building,
    Crop,
    GroundItem,
    QuestState,
    SoilTile,
    WorldObject,
    WorldState,
)
from valleybench.world import WorldError, grant_item, init_world, update_npc_positions


class SimCommandError(ValueError):
    """Unknown command, bad arity/types, or unknown content reference."""


@dataclass(slots=True)
class SimCommand:
    name: str
    args: list = field(default_factory=list)
    kwargs: dict = field(default_factory=dict)

    def to_source(self) -> str:
        parts = [repr(a) if not isinstance(a, str) else f'"{a}"' for a in self.args]
        parts += [
            f"{k}={v!r}" if not isinstance(v, str) else f'{k}="{v}"' for k, v in self.kwargs.items()
        ]
        return f"{self.name}({', '.join(parts)})"


_BOOL_WORDS = {"true": True, "True": True, "false": False, "False": False}


def parse_sim_command(text: str) -> SimCommand:
    match = _grammar._CALL_RE.match(text)
    if not match:
        raise SimCommandError(f"not a command call: {text!r}")
    name, body = match.group(1), match.group(2)
    positional: list = []
    keyword: dict = {}
    body = body.strip()
    if body:
        for chunk in _grammar._ARG_SPLIT_RE.split(body):
            chunk = chunk.strip()
            if not chunk:
                raise SimCommandError("empty argument")
            kv = re.match(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$", chunk, re.DOTALL)
            raw = kv.group(2) if kv else chunk
            if raw in _BOOL_WORDS:
                value = _BOOL_WORDS[raw]
            else:
                try:
                    value = _grammar._parse_value(raw)
                except _grammar.MalformedActionError as exc:
                    raise SimCommandError(str(exc)) from None
            if kv:
                keyword[kv.group(1)] = value
            else:
                if keyword:
                    raise SimCommandError("positional argument after keyword argument")
                positional.append(value)
    return SimCommand(name=name, args=positional, kwargs=keyword)


def _require_passable(world: WorldState, map_id: str, x: int, y: int) -> None:
    if not world.is_passable(map_id, x, y):
        raise SimCommandError(f"tile ({x},{y}) on {map_id} is blocked")


def _find_shop_front(world: WorldState, npc: str) -> tuple[str, int, int]:
    shop_id = {"gus": "gus", "pierre": "pierre", "clint": "clint", "marnie": "marnie",
               "robin": "robin", "willy": "willy", "harvey": "harvey", "morris": "joja",
               "joja": "joja"}.get(npc.lower())
    if shop_id is None or shop_id not in world.pack.shops:
        raise SimCommandError(f"no shop run by {npc!r}")
    for map_id, map_def in world.pack.maps.items():
        counters = [f for f in map_def.features if f.kind == "counter" and f.data.get("shop") == shop_id]
        if counters:
            middle = sorted(counters, key=lambda f: f.x)[len(counters) // 2]
            return (map_id, middle.x, middle.y + 1)
    raise SimCommandError(f"no counter found for shop {shop_id!r}")


# -- player settings ----------------------------------------------------------

def _set_base_health(world, amount: int):
    world.player.base_health = amount
    world.player.health = min(world.player.health, amount)

def _set_health(world, amount: int):
    world.player.health = max(0, min(amount, world.player.base_health))

def _set_base_energy(world, amount: int):
    world.player.base_energy = amount
    world.player.energy = min(world.player.energy, float(amount))

def _set_energy(world, amount: int):
    world.player.energy = float(min(amount, world.player.base_energy))

def _set_inventory_size(world, size: int):
    if not 1 <= size <= 36:
        raise SimCommandError("inventory size must be in [1, 36]")
    world.player.inventory_capacity = size

def _clear_inventory(world):
    world.player.inventory = [None] * len(world.player.inventory)

def _set_money(world, amount: int):
    if amount < 0:
        raise SimCommandError("money must be >= 0")
    world.player.money = amount

def _add_item_by_id(world, item_id: str, count: int = 1, quality: int = 0):
    grant_item(world, item_id, count, quality)

def _add_item_by_name(world, name: str, count: int = 1, quality: int = 0):
    grant_item(world, name, count, quality)

def _lookup(world, name: str) -> str:
    world.pack.item(name)
    return f"{name} -> {name}"

def _current_position(world) -> str:
    return f"{world.player.map_id} ({world.player.x}, {world.player.y})"

def _add_recipe(world, recipe_type: str, recipe: str):
    if recipe not in world.pack.recipes:
        raise SimCommandError(f"unknown recipe: {recipe!r}")
    world.player.recipes_known.add(recipe)

def _set_max_luck(world):
    world.player.luck = 1.0

def _print_luck(world) -> str:
    return f"luck={world.player.luck}"


# -- surroundings -------------------------------------------------------------

_ENTITY_KINDS = {
    "crops": None,
    "trees": "Tree",
    "weeds": "Weeds",
    "stones": "Stone",
    "twigs": "Twig",
    "grass": "Grass",
    "forage": None,
    "monsters": None,
    "debris": None,
}

def _world_clear(world, entity: str, location: str):
    if entity not in _ENTITY_KINDS:
        raise SimCommandError(f"unknown entity class: {entity!r}")
    map_id = world.pack.resolve_map_id(location)
    map_state = world.map_state(map_id)
    if entity == "crops":
        for tile in map_state.soil.values():
            tile.crop = None
    elif entity == "forage":
        map_state.ground_items.clear()
    elif entity == "monsters":
        world.monsters = [m for m in world.monsters if m.map_id != map_id]
    elif entity == "debris":
        map_state.objects = {
            pos: obj for pos, obj in map_state.objects.items()
            if obj.kind not in ("Weeds", "Stone", "Twig")
        }
    else:
        kind = _ENTITY_KINDS[entity]
        map_state.objects = {pos: obj for pos, obj in map_state.objects.items() if obj.kind != kind}

def _set_terrain(world, terrain: str, terrain_id: str, x: int, y: int):
    map_id = world.player.map_id
    map_state = world.map_state(map_id)
    if terrain == "tilled":
        if (x, y) not in world.map_def(map_id).diggable:
            raise SimCommandError(f"tile ({x},{y}) is not diggable")
        map_state.soil.setdefault((x, y), SoilTile())
    elif terrain == "clear":
        map_state.soil.pop((x, y), None)
    else:
        raise SimCommandError(f"unknown terrain: {terrain!r}")

def _place_item(world, item: str, item_type: str, x: int, y: int):
    map_state = world.current_map()
    if item_type == "object":
        spec = world.pack.config["objects"].get(item)
        if spec is None:
            raise SimCommandError(f"unknown object kind: {item!r}")
        map_state.objects[(x, y)] = WorldObject(kind=item, hits_left=spec["hits"])
    elif item_type == "item":
        world.pack.item(item)
        map_state.ground_items[(x, y)] = GroundItem(item=item)
    else:
        raise SimCommandError(f"unknown placement type: {item_type!r}")

def _remove_item(world, x: int, y: int):
    map_state = world.current_map()
    if map_state.objects.pop((x, y), None) is None and map_state.ground_items.pop((x, y), None) is None:
        raise SimCommandError(f"nothing to remove at ({x},{y})")

def _place_crop(world, crop: str, x: int, y: int):
    if crop not in world.pack.crops:
        raise SimCommandError(f"unknown crop: {crop!r}")
    map_id = world.player.map_id
    if (x, y) not in world.map_def(map_id).diggable:
        raise SimCommandError(f"tile ({x},{y}) is not diggable")
    world.map_state(map_id).soil[(x, y)] = SoilTile(crop=Crop(crop_name=crop))

def _grow_crop(world, day: int, x: int, y: int):
    tile = world.current_map().soil.get((x, y))
    if tile is None or tile.crop is None:
        raise SimCommandError(f"no crop at ({x},{y})")
    limit = world.pack.crops[tile.crop.crop_name].growth_days
    tile.crop.days_grown = min(limit, tile.crop.days_grown + day)

def _grow_tree(world, day: int, x: int, y: int):
    obj = world.current_map().objects.get((x, y))
    if obj is None or obj.kind != "Tree":
        raise SimCommandError(f"no tree at ({x},{y})")
    # Trees in this pack are always full-grown; growth is a recognized no-op.

def _build(world, building_type: str, force: bool, x: int, y: int):
    if building_type not in world.pack.buildings:
        raise SimCommandError(f"unknown building type: {building_type!r}")
    bdef = world.pack.buildings[building_type]
    if not force:
        for dx in range(bdef.width):
            for dy in range(bdef.height):
                if not world.is_passable("Farm", x + dx, y + dy):
                    raise SimCommandError(f"footprint blocked at ({x + dx},{y + dy})")
    world.buildings.append(Building(type_name=building_type, map_id="Farm", x=x, y=y))
    world.bump("built", building_type)

def _build_stable(world, x: int, y: int):
    _build(world, "Stable", True, x, y)

def _move_building(world, x_source: int, y_source: int, x_dest: int, y_dest: int):
    building = world.building_at("Farm", x_source, y_source)
    if building is None:
        raise SimCommandError(f"no building at ({x_source},{y_source})")
    building.x, building.y = x_dest, y_dest
    world.bump("moved", building.type_name)

def _remove_building(world, x: int, y: int):
    building = world.building_at("Farm", x, y)
    if building is None:
        raise SimCommandError(f"no building at ({x},{y})")
    world.buildings.remove(building)
    world.bump("demolished", building.type_name)

def _upgrade_house(world, level: int):
    if level < world.house_level:
        raise SimCommandError("house level cannot decrease")
    while world.house_level < level:
        world.house_level += 1
        world.bump_counter("house_upgrades")


# -- characters ---------------------------------------------------------------

def _spawn_pet(world, pet_type: str, breed: str, name: str, x: int, y: int):
    world.animals.append(
        Animal(type_name=pet_type.capitalize(), name=name, map_id=world.player.map_id, x=x, y=y, is_pet=True)
    )
    world.player.friendships.setdefault(name, 0)

def _spawn_animal(world, animal_type: str, name: str):
    coop = world.map_state("Coop")
    for y in range(3, 7):
        for x in range(3, 10):
            if (x, y) not in coop.ground_items and world.is_passable("Coop", x, y):
                world.animals.append(Animal(type_name=animal_type, name=name, map_id="Coop", x=x, y=y))
                world.player.friendships.setdefault(name, 0)
                return
    raise SimCommandError("no space in the animal house")

def _grow_animal(world, name: str):
    for animal in world.animals:
        if animal.name == name and animal.map_id == world.player.map_id:
            animal.adult = True
            return
    raise SimCommandError(f"no animal named {name!r} here")

def _animal_friendship(world, name: str, friendship: int):
    if all(a.name != name for a in world.animals):
        raise SimCommandError(f"unknown animal: {name!r}")
    world.player.friendships[name] = friendship

def _npc_friendship(world, npc: str, friendship: int):
    if npc not in world.pack.npcs:
        raise SimCommandError(f"unknown NPC: {npc!r}")
    world.player.friendships[npc] = friendship

def _all_npc_friendship(world, friendship: int):
    for npc in world.pack.npcs:
        world.player.friendships[npc] = friendship

def _dating(world, npc: str):
    if npc not in world.pack.npcs:
        raise SimCommandError(f"unknown NPC: {npc!r}")
    world.flags.add(f"dating:{npc}")


# -- locations ----------------------------------------------------------------

def _warp(world, location: str, x: int | None = None, y: int | None = None):
    map_id = world.pack.resolve_map_id(location)
    if x is None or y is None:
        x, y = world.pack.maps[map_id].default_spawn
    _require_passable(world, map_id, x, y)
    world.player.map_id, world.player.x, world.player.y = map_id, x, y

def _warp_mine(world, level: int):
    map_id = f"UndergroundMine{level}"
    if map_id not in world.pack.maps:
        raise SimCommandError(f"no mine level {level} in this pack")
    world.player.map_id = map_id
    world.player.x, world.player.y = world.pack.maps[map_id].default_spawn

def _warp_volcano(world, level: int):
    raise SimCommandError("volcano content is not part of this pack")

def _warp_home(world):
    spawn = world.map_def("FarmHouse").default_spawn
    world.player.map_id = "FarmHouse"
    world.player.x, world.player.y = spawn

def _warp_shop(world, npc: str):
    map_id, x, y = _find_shop_front(world, npc)
    world.player.map_id, world.player.x, world.player.y = map_id, x, y
    world.player.facing = "up"

def _warp_character(world, npc: str, location: str, x: int, y: int):
    map_id = world.pack.resolve_map_id(location)
    for npc_state in world.npcs:
        if npc_state.name == npc:
            npc_state.map_id, npc_state.x, npc_state.y = map_id, x, y
            npc_state.manual = True
            return
    raise SimCommandError(f"unknown NPC: {npc!r}")


# -- world --------------------------------------------------------------------

def _set_date(world, year: int, season: str, day: int):
    try:
        season_value = Season(season)
    except ValueError:
        raise SimCommandError(f"unknown season: {season!r}") from None
    if not 1 <= day <= 28:
        raise SimCommandError("day must be in [1, 28]")
    world.clock.year = year
    world.clock.season = season_value
    world.clock.day_of_season = day

def _set_time(world, time: int):
    try:
        world.clock.minutes_since_6am = clock_time_to_minutes(time)
    except ValueError as exc:
        raise SimCommandError(str(exc)) from None
    update_npc_positions(world)

def _rain(world):
    world.weather = "rainy"
    for map_id, map_state in world.maps.items():
        if world.map_def(map_id).outdoor:
            for tile in map_state.soil.values():
                tile.watered = True


# -- progression --------------------------------------------------------------

def _set_deepest_mine_level(world, level: int):
    world.deepest_mine_level = level

def _set_monster_stats(world, monster: str, kills: int):
    if monster not in world.pack.monsters:
        raise SimCommandError(f"unknown monster: {monster!r}")
    world.kill_stats[monster] = kills

def _print_monster_stats(world, monster: str) -> str:
    return f"{monster}: {world.kill_stats.get(monster, 0)}"

def _quest_from_catalog(world, quest_id: str) -> QuestState:
    catalog = world.pack.meta.get("quest_catalog", {})
    if quest_id not in catalog:
        raise SimCommandError(f"unknown quest id: {quest_id!r}")
    spec = catalog[quest_id]
    return QuestState(
        quest_id=quest_id,
        title=spec["title"],
        kind=spec["kind"],
        state="active",
        target=spec.get("target", 0),
        reward_money=spec.get("reward_money", 0),
        item=spec.get("item"),
        count=spec.get("count", 0),
    )

def _start_quest(world, quest_id: str):
    if any(q.quest_id == str(quest_id) for q in world.quests):
        return
    world.quests.append(_quest_from_catalog(world, str(quest_id)))

def _start_help_quest(world, quest_type: str):
    if world.help_board is None:
        raise SimCommandError("no help board in this save")
    board = world.help_board
    world.quests.append(
        QuestState(
            quest_id=f"help:{board['npc']}",
            title=board["text"],
            kind="help",
            state="active",
            item=board["item"],
            count=board["count"],
            npc=board["npc"],
            reward_money=board["reward_money"],
        )
    )

def _complete_quest(world, quest_id: str):
    quest_id = str(quest_id)
    for quest in world.quests:
        if quest.quest_id == quest_id:
            quest.state = "completed_unclaimed"
            world.completed_story.add(quest_id)
            return
    quest = _quest_from_catalog(world, quest_id)
    quest.state = "completed_unclaimed"
    world.quests.append(quest)
    world.completed_story.add(quest_id)

def _joja_membership(world):
    world.flags.add("Joja Membership")

def _spawn_junimo_note(world, note_id: str):
    world.flags.add(f"junimo_note:{note_id}")

def _mark_bundle(world, bundle_id: str):
    world.flags.add(f"bundle:{bundle_id}")

def _complete_room_bundles(world, room_id: str):
    world.flags.add(f"room_bundles:{room_id}")

def _community_development(world, project_id: str):
    world.flags.add(str(project_id))

def _receive_mail(world, mail: str):
    world.flags.add(f"mail:{mail}")

def _trigger_event(world, event_id: str):
    world.flags.add(f"event:{event_id}")

def _seen_event(world, event_id: str, see_or_forget: bool):
    flag = f"event_seen:{event_id}"
    if see_or_forget:
        world.flags.add(flag)
    else:
        world.flags.discard(flag)

def _load_save(world, save: str) -> WorldState:
    return init_world(save, world.seed, world.pack_name)


# Registry: command name -> (handler, [(param, type, required), ...]).
# Optional params carry their default in the handler signature.
_I, _S, _B = int, str, bool
REGISTRY: dict[str, tuple] = {
    "set_base_health": (_set_base_health, [("amount", _I, True)]),
    "set_health": (_set_health, [("amount", _I, True)]),
    "set_base_energy": (_set_base_energy, [("amount", _I, True)]),
    "set_energy": (_set_energy, [("amount", _I, True)]),
    "set_inventory_size": (_set_inventory_size, [("size", _I, True)]),
    "clear_inventory": (_clear_inventory, []),
    "set_money": (_set_money, [("amount", _I, True)]),
    "add_item_by_id": (_add_item_by_id, [("id", _S, True), ("count", _I, False), ("quality", _I, False)]),
    "add_item_by_name": (_add_item_by_name, [("name", _S, True), ("count", _I, False), ("quality", _I, False)]),
    "lookup": (_lookup, [("name", _S, True)]),
    "current_position": (_current_position, []),
    "add_recipe": (_add_recipe, [("type", _S, True), ("recipe", _S, True)]),
    "set_max_luck": (_set_max_luck, []),
    "print_luck": (_print_luck, []),
    "world_clear": (_world_clear, [("entity", _S, True), ("location", _S, True)]),
    "set_terrain": (_set_terrain, [("terrain", _S, True), ("id", _S, True), ("x", _I, True), ("y", _I, True)]),
    "place_item": (_place_item, [("item", _S, True), ("type", _S, True), ("x", _I, True), ("y", _I, True)]),
    "remove_item": (_remove_item, [("x", _I, True), ("y", _I, True)]),
    "place_crop": (_place_crop, [("crop", _S, True), ("x", _I, True), ("y", _I, True)]),
    "grow_crop": (_grow_crop, [("day", _I, True), ("x", _I, True), ("y", _I, True)]),
    "grow_tree": (_grow_tree, [("day", _I, True), ("x", _I, True), ("y", _I, True)]),
    "build": (_build, [("type", _S, True), ("force", _B, True), ("x", _I, True), ("y", _I, True)]),
    "build_stable": (_build_stable, [("x", _I, True), ("y", _I, True)]),
    "move_building": (_move_building, [("x_source", _I, True), ("y_source", _I, True), ("x_dest", _I, True), ("y_dest", _I, True)]),
    "remove_building": (_remove_building, [("x", _I, True), ("y", _I, True)]),
    "upgrade_house": (_upgrade_house, [("level", _I, True)]),
    "spawn_pet": (_spawn_pet, [("type", _S, True), ("breed", _S, True), ("name", _S, True), ("x", _I, True), ("y", _I, True)]),
    "spawn_animal": (_spawn_animal, [("type", _S, True), ("name", _S, True)]),
    "grow_animal": (_grow_animal, [("name", _S, True)]),
    "animal_friendship": (_animal_friendship, [("name", _S, True), ("friendship", _I, True)]),
    "npc_friendship": (_npc_friendship, [("npc", _S, True), ("friendship", _I, True)]),
    "all_npc_friendship": (_all_npc_friendship, [("friendship", _I, True)]),
    "dating": (_dating, [("npc", _S, True)]),
    "warp": (_warp, [("location", _S, True), ("x", _I, False), ("y", _I, False)]),
    "warp_mine": (_warp_mine, [("level", _I, True)]),
    "warp_volcano": (_warp_volcano, [("level", _I, True)]),
    "warp_home": (_warp_home, []),
    "warp_shop": (_warp_shop, [("npc", _S, True)]),
    "warp_character": (_warp_character, [("npc", _S, True), ("location", _S, True), ("x", _I, True), ("y", _I, True)]),
    "set_date": (_set_date, [("year", _I, True), ("season", _S, True), ("day", _I, True)]),
    "set_time": (_set_time, [("time", _I, True)]),
    "rain": (_rain, []),
    "set_deepest_mine_level": (_set_deepest_mine_level, [("level", _I, True)]),
    "set_monster_stats": (_set_monster_stats, [("monster", _S, True), ("kills", _I, True)]),
    "print_monster_stats": (_print_monster_stats, [("monster", _S, True)]),
    "start_quest": (_start_quest, [("id", _S, True)]),
    "start_help_quest": (_start_help_quest, [("type", _S, True)]),
    "complete_quest": (_complete_quest, [("id", _S, True)]),
    "joja_membership": (_joja_membership, []),
    "spawn_junimo_note": (_spawn_junimo_note, [("id", _S, True)]),
    "mark_bundle": (_mark_bundle, [("id", _S, True)]),
    "complete_room_bundles": (_complete_room_bundles, [("id", _S, True)]),
    "community_development": (_community_development, [("id", _S, True)]),
    "receive_mail": (_receive_mail, [("mail", _S, True)]),
    "trigger_event": (_trigger_event, [("id", _S, True)]),
    "seen_event": (_seen_event, [("id", _S, True), ("see_or_forget", _B, True)]),
    "load_save": (_load_save, [("save", _S, True)]),
}


def apply_sim_command(world: WorldState, cmd: SimCommand | str) -> tuple[WorldState, str | None]:
    """Apply one command; returns the (possibly replaced) world and any
    informational message the command printed."""
    if isinstance(cmd, str):
        cmd = parse_sim_command(cmd)
    if cmd.name not in REGISTRY:
        raise SimCommandError(f"unknown command: {cmd.name!r}")
    handler, spec = REGISTRY[cmd.name]

    _MISSING = object()
    args = list(cmd.args)
    kwargs = dict(cmd.kwargs)
    if len(args) > len(spec):
        raise SimCommandError(f"{cmd.name}: too many arguments")
    values: list = []
    for index, (param, expected, required) in enumerate(spec):
        if index < len(args):
            value = args[index]
            if param in kwargs:
                raise SimCommandError(f"{cmd.name}: duplicate parameter {param!r}")
        elif param in kwargs:
            value = kwargs.pop(param)
        elif required:
            raise SimCommandError(f"{cmd.name}: missing parameter {param!r}")
        else:
            values.append(_MISSING)
            continue
        if expected is int and isinstance(value, bool):
            raise SimCommandError(f"{cmd.name}: parameter {param!r} must be int")
        if not isinstance(value, expected):
            raise SimCommandError(f"{cmd.name}: parameter {param!r} must be {expected.__name__}")
        values.append(value)
    if kwargs:
        raise SimCommandError(f"{cmd.name}: unknown parameter {next(iter(kwargs))!r}")
    # Trailing optionals may be omitted, but gaps are missing parameters.
    while values and values[-1] is _MISSING:
        values.pop()
    for index, value in enumerate(values):
        if value is _MISSING:
            raise SimCommandError(f"{cmd.name}: missing parameter {spec[index][0]!r}")

    try:
        result = handler(world, *values)
    except (WorldError, ContentError, KeyError) as exc:
        raise SimCommandError(f"{cmd.name}: {exc}") from exc
    if isinstance(result, WorldState):
        return result, None
    return world, result


def run_commands(world: WorldState, commands: list[str]) -> WorldState:
    """Run a command list in order; the failing command is identified."""
    for source in commands:
        try:
            world, _ = apply_sim_command(world, source)
        except SimCommandError as exc:
            raise SimCommandError(f"init command failed: {source!r}: {exc}") from exc
    return world
