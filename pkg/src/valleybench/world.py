"""World construction and day-scale dynamics.

init_world materializes a registered save snapshot; advance_minutes moves the
in-game clock and fires nightfall/midnight/pass-out transitions; end_of_day
applies the overnight update (crop growth, weather draw, animal products,
energy restoration, shipping payout).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from valleybench.clock import (
    DAY_END_MINUTE,
    MIDNIGHT_MINUTE,
    GameClock,
    Season,
)
from valleybench.content import ContentPack, load_content_pack
from valleybench.rng import Rng
from valleybench.state import (
    INVENTORY_SLOTS,
    Animal,
    Building,
    Crop,
    GroundItem,
    ItemStack,
    MenuState,
    Monster,
    Npc,
    Player,
    QuestState,
    SoilTile,
    WorldObject,
    WorldState,
    empty_ledgers,
)

COOP_EGG_SPOTS = [(7, 3), (8, 3), (9, 3), (7, 4), (8, 4), (9, 4)]


class WorldError(ValueError):
    """Raised for invalid world construction or malformed snapshots."""


@dataclass(slots=True)
class Event:
    kind: str
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.data}


def make_item(pack: ContentPack, name: str, quantity: int = 1, quality: int = 0) -> ItemStack:
    item_def = pack.item(name)
    if item_def.category in ("tool", "weapon") and quantity != 1:
        raise WorldError(f"{name} does not stack")
    return ItemStack(name=name, quantity=quantity, quality=quality, category=item_def.category)


def grant_item(world: WorldState, name: str, quantity: int = 1, quality: int = 0) -> None:
    pack = world.pack
    item_def = pack.item(name)
    if item_def.category in ("tool", "weapon"):
        for _ in range(quantity):
            if not world.player.add_item(make_item(pack, name, 1, quality)):
                raise WorldError("inventory full")
    else:
        if not world.player.add_item(make_item(pack, name, quantity, quality)):
            raise WorldError("inventory full")


def build_scenario_world(pack_name: str, save_id: str, seed: int = 0) -> WorldState:
    """Materialize a WorldState from a scenario declaration in the pack."""
    pack = load_content_pack(pack_name)
    if save_id not in pack.scenarios:
        raise WorldError(f"unknown save_id: {save_id!r}")
    scenario = pack.scenarios[save_id]
    cfg = pack.config

    clock = GameClock(
        minutes_since_6am=0,
        day_of_season=scenario["clock"]["day"],
        season=Season(scenario["clock"]["season"]),
        year=scenario["clock"].get("year", 1),
    )
    player_spec = scenario["player"]
    player = Player(
        map_id=pack.resolve_map_id(player_spec["map"]),
        x=player_spec["x"],
        y=player_spec["y"],
        facing=player_spec.get("facing", "down"),
        health=cfg["base_health"],
        base_health=cfg["base_health"],
        energy=float(cfg["base_energy"]),
        base_energy=cfg["base_energy"],
        money=player_spec["money"],
        inventory=[None] * INVENTORY_SLOTS,
        inventory_capacity=cfg["backpack_capacity_initial"],
        chosen_slot=0,
        skills={"Farming": 0, "Mining": 0, "Foraging": 0, "Combat": 0},
        friendships={},
        recipes_known=set(scenario.get("recipes", ())),
        watering_can_charge=cfg["watering_can_capacity"],
    )

    world = WorldState(
        pack_name=pack_name,
        save_id=save_id,
        seed=seed,
        clock=clock,
        weather=scenario.get("weather", "sunny"),
        total_ticks=0,
        mode="paused",
        player=player,
        maps={},
        npcs=[],
        animals=[],
        monsters=[],
        buildings=[],
        quests=[],
        kill_stats={},
        shipped={},
        pending_ship_value=0,
        ledgers=empty_ledgers(),
        counters={},
        flags=set(),
        completed_story=set(),
        hay_in_silo=0,
        house_level=scenario.get("house_level", 0),
        deepest_mine_level=scenario.get("deepest_mine_level", 1),
        pet_bowl_filled=False,
        talked_today=set(),
        gifted_today=set(),
        petted_today=set(),
        help_board=dict(scenario["help_board"]) if scenario.get("help_board") else None,
        menu=MenuState(),
        rng=Rng.from_seed(seed),
    )

    for name in player_spec.get("inventory", ()):
        grant_item(world, name)

    for spec in scenario.get("buildings", ()):
        if spec["type"] not in pack.buildings:
            raise WorldError(f"unknown building type {spec['type']!r}")
        world.buildings.append(Building(type_name=spec["type"], map_id="Farm", x=spec["x"], y=spec["y"]))

    for spec in scenario.get("animals", ()):
        world.animals.append(
            Animal(
                type_name=spec["type"],
                name=spec["name"],
                map_id=pack.resolve_map_id(spec["map"]),
                x=spec["x"],
                y=spec["y"],
                is_pet=spec.get("pet", False),
            )
        )
        world.player.friendships.setdefault(spec["name"], 0)

    for group in scenario.get("objects", ()):
        map_id = pack.resolve_map_id(group["map"])
        map_state = world.map_state(map_id)
        kind = group["kind"]
        hits = cfg["objects"].get(kind, {}).get("hits", 1)
        for x, y in group["points"]:
            if not pack.map_def(map_id).in_bounds(x, y):
                raise WorldError(f"object {kind} out of bounds at ({x},{y}) on {map_id}")
            map_state.objects[(x, y)] = WorldObject(kind=kind, hits_left=hits)

    for spec in scenario.get("crops", ()):
        crop_def = pack.crops[spec["crop"]]
        map_state = world.map_state("Farm")
        days = crop_def.growth_days if spec.get("mature") else spec.get("days_grown", 0)
        map_state.soil[(spec["x"], spec["y"])] = SoilTile(
            watered=spec.get("watered", False),
            crop=Crop(crop_name=spec["crop"], days_grown=days),
        )

    for x, y in scenario.get("tilled", ()):
        world.map_state("Farm").soil[(x, y)] = SoilTile()

    for spec in scenario.get("eggs", ()):
        world.map_state(pack.resolve_map_id(spec["map"])).ground_items[(spec["x"], spec["y"])] = GroundItem(
            item="Egg"
        )

    for spec in scenario.get("forage", ()):
        map_id = pack.resolve_map_id(spec["map"])
        world.map_state(map_id).ground_items[(spec["x"], spec["y"])] = GroundItem(item=spec["item"])

    for spec in scenario.get("quests", ()):
        world.quests.append(
            QuestState(
                quest_id=str(spec["id"]),
                title=spec["title"],
                kind=spec["kind"],
                state=spec["state"],
                target=spec.get("target", 0),
                reward_money=spec.get("reward_money", 0),
                item=spec.get("item"),
                count=spec.get("count", 0),
            )
        )

    for npc_def in pack.npcs.values():
        entry = npc_def.position_at(0)
        world.npcs.append(Npc(name=npc_def.name, map_id=entry.map_id, x=entry.x, y=entry.y))
        world.player.friendships.setdefault(npc_def.name, 0)

    for level, level_def in pack.mine_levels.items():
        map_id = f"UndergroundMine{level}"
        map_state = world.map_state(map_id)
        for kind, x, y in level_def.nodes:
            hits = cfg["objects"][kind]["hits"]
            map_state.objects[(x, y)] = WorldObject(kind=kind, hits_left=hits)
        for item, x, y in level_def.forage:
            map_state.ground_items[(x, y)] = GroundItem(item=item)
        for item, x, y in level_def.artifacts:
            map_state.objects[(x, y)] = WorldObject(kind="Artifact Spot", hits_left=1, data={"item": item})
        for spawn in level_def.monsters:
            mdef = pack.monsters[spawn.species]
            world.monsters.append(
                Monster(
                    species=spawn.species,
                    map_id=map_id,
                    x=spawn.x,
                    y=spawn.y,
                    hp=mdef.hp,
                    home_x=spawn.x,
                    home_y=spawn.y,
                    patrol=[tuple(p) for p in spawn.patrol],
                    burrowed=(mdef.behavior == "duggy"),
                )
            )

    # Sanity: entities must start on in-bounds tiles.
    for npc in world.npcs:
        if not pack.map_def(npc.map_id).terrain_passable(npc.x, npc.y):
            raise WorldError(f"NPC {npc.name} starts on a blocked tile")
    return world


def _saves_dir(pack_name: str) -> Path:
    return load_content_pack(pack_name).pack_dir / "saves"


def save_registry(pack_name: str = "valleylite") -> dict[str, Path]:
    """Shipped save snapshots by id."""
    saves = {}
    directory = _saves_dir(pack_name)
    if directory.is_dir():
        for path in sorted(directory.glob("*.json")):
            saves[path.stem] = path
    return saves


def write_save(world: WorldState, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(world.serialize())


def load_save(path: Path) -> WorldState:
    return WorldState.deserialize(path.read_bytes())


def init_world(save_id: str, seed: int, pack_name: str = "valleylite") -> WorldState:
    """Load a registered save snapshot and seed its random stream."""
    registry = save_registry(pack_name)
    if save_id in registry:
        world = load_save(registry[save_id])
    else:
        pack = load_content_pack(pack_name)
        if save_id not in pack.scenarios:
            raise WorldError(f"unknown save_id: {save_id!r}")
        world = build_scenario_world(pack_name, save_id, seed)
    world.seed = seed
    world.rng = Rng.from_seed(seed)
    return world


def update_npc_positions(world: WorldState) -> None:
    minute = world.clock.minutes_since_6am
    for npc in world.npcs:
        if npc.manual:
            continue
        npc_def = world.pack.npcs[npc.name]
        entry = npc_def.position_at(minute)
        npc.map_id, npc.x, npc.y = entry.map_id, entry.x, entry.y


def advance_minutes(world: WorldState, minutes: int) -> list[Event]:
    """Advance the in-game clock, emitting nightfall/midnight events and
    forcing a pass-out day end at 2:00 AM.  Saturates at the forced day end."""
    if minutes < 0:
        raise WorldError("cannot advance time backwards")
    events: list[Event] = []
    cfg = world.pack.config
    nightfall = cfg["nightfall_minute"][world.clock.season.value]
    start = world.clock.minutes_since_6am
    target = start + minutes
    if start < nightfall <= min(target, DAY_END_MINUTE):
        events.append(Event("nightfall"))
    if start < MIDNIGHT_MINUTE <= min(target, DAY_END_MINUTE):
        events.append(Event("midnight"))
    if target >= DAY_END_MINUTE:
        world.clock.minutes_since_6am = DAY_END_MINUTE
        events.append(Event("passout"))
        events.extend(end_of_day(world, slept_in_bed=False))
    else:
        world.clock.minutes_since_6am = target
    update_npc_positions(world)
    return events


def end_of_day(world: WorldState, slept_in_bed: bool) -> list[Event]:
    """Overnight update: growth, products, weather, energy, payout."""
    events: list[Event] = []
    pack = world.pack
    cfg = pack.config
    past_midnight = world.clock.past_midnight

    # Crops advance one growth day when watered (rain counts via the watered flag).
    for map_state in world.maps.values():
        for tile in map_state.soil.values():
            if tile.crop is not None and tile.watered:
                crop_def = pack.crops[tile.crop.crop_name]
                tile.crop.days_grown = min(crop_def.growth_days, tile.crop.days_grown + 1)
            tile.watered = False

    # Animal products and incubation.
    for animal in world.animals:
        if animal.type_name == "Chicken" and animal.adult and animal.map_id == "Coop":
            coop = world.map_state("Coop")
            for spot in COOP_EGG_SPOTS:
                if spot not in coop.ground_items and world.is_passable("Coop", *spot):
                    coop.ground_items[spot] = GroundItem(item="Egg")
                    break
    for map_state in world.maps.values():
        for pos, obj in list(map_state.objects.items()):
            if obj.kind == "incubator" and obj.data.get("days_left") is not None:
                obj.data["days_left"] -= 1
                if obj.data["days_left"] <= 0:
                    obj.data["days_left"] = None
                    chick_type = obj.data.pop("hatches", "Chicken")
                    name = f"Chick {sum(1 for a in world.animals if a.type_name == chick_type) + 1}"
                    world.animals.append(
                        Animal(
                            type_name=chick_type,
                            name=name,
                            map_id=map_state.map_id,
                            x=pos[0] + 1,
                            y=pos[1] + 1,
                            adult=False,
                        )
                    )
                    world.player.friendships.setdefault(name, 0)
                    world.bump("hatched", chick_type)
                    events.append(Event("hatched", {"animal": name}))

    # Furnace jobs keep their tick deadlines; ticks continue across days.

    # Shipping payout.
    if world.pending_ship_value:
        world.player.money += world.pending_ship_value
        events.append(Event("shipment-paid", {"amount": world.pending_ship_value}))
        world.pending_ship_value = 0

    # Energy and pass-out penalty.
    if slept_in_bed:
        if past_midnight:
            world.player.energy = float(round(cfg["late_sleep_energy_factor"] * world.player.base_energy))
        else:
            world.player.energy = float(world.player.base_energy)
        world.bump_counter("slept")
        events.append(Event("slept", {"past_midnight": past_midnight}))
    else:
        fee = min(world.player.money, cfg["passout_fee"])
        world.player.money -= fee
        world.player.energy = float(round(cfg["late_sleep_energy_factor"] * world.player.base_energy))
        events.append(Event("passout-fee", {"amount": fee}))
    world.player.health = world.player.base_health

    # Calendar rollover and the next day's weather.
    world.clock.advance_day()
    weights = cfg["weather_weights"][world.clock.season.value]
    world.weather = world.rng.weighted_choice(sorted(weights.items()))
    if world.weather in ("rainy", "stormy"):
        for map_id, map_state in world.maps.items():
            if world.map_def(map_id).outdoor:
                for tile in map_state.soil.values():
                    tile.watered = True

    # Daily resets.
    world.talked_today.clear()
    world.gifted_today.clear()
    world.petted_today.clear()
    world.pet_bowl_filled = False
    world.menu = MenuState()
    for npc in world.npcs:
        npc.manual = False

    # Waking up happens at home.
    if slept_in_bed:
        world.player.map_id = "FarmHouse"
        spawn = world.map_def("FarmHouse").default_spawn
        world.player.x, world.player.y = spawn
    update_npc_positions(world)
    events.append(Event("day-started", {"day": world.clock.day_of_season, "season": world.clock.season.value}))
    return events
