"""World state: the complete simulation snapshot.

Everything mutable lives here; map terrain stays in the content pack and is
referenced by id.  A WorldState serializes to a canonical JSON document (the
save-snapshot format, schema_version 1) and round-trips bit-exactly, which is
what makes replays and cross-instance determinism checkable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterator

from valleybench.clock import GameClock
from valleybench.content import BuildingDef, ContentPack, MapDef, load_content_pack
from valleybench.rng import Rng

SAVE_SCHEMA_VERSION = 1

DIRECTIONS = ("up", "right", "down", "left")
DIR_DELTAS = {"up": (0, -1), "right": (1, 0), "down": (0, 1), "left": (-1, 0)}

INVENTORY_SLOTS = 36

LEDGER_KEYS = (
    "crafted", "harvested", "cleared", "sold", "purchased",
    "animals_purchased", "animals_sold", "built", "demolished", "moved",
    "tools_upgraded", "processed", "opened", "filled", "hatched",
    "talked", "gifted",
)


@dataclass(slots=True)
class ItemStack:
    name: str
    quantity: int = 1
    quality: int = 0
    category: str = "misc"
    attachment: "ItemStack | None" = None

    def to_dict(self) -> dict:
        data: dict[str, Any] = {
            "name": self.name,
            "quantity": self.quantity,
            "quality": self.quality,
            "category": self.category,
        }
        if self.attachment is not None:
            data["attachment"] = self.attachment.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ItemStack":
        attachment = data.get("attachment")
        return cls(
            name=data["name"],
            quantity=data["quantity"],
            quality=data["quality"],
            category=data["category"],
            attachment=cls.from_dict(attachment) if attachment else None,
        )


@dataclass(slots=True)
class Player:
    map_id: str
    x: int
    y: int
    facing: str
    health: int
    base_health: int
    energy: float
    base_energy: int
    money: int
    inventory: list[ItemStack | None]
    inventory_capacity: int
    chosen_slot: int = 0
    skills: dict[str, int] = field(default_factory=dict)
    friendships: dict[str, int] = field(default_factory=dict)
    recipes_known: set[str] = field(default_factory=set)
    luck: float = 0.0
    watering_can_charge: int = 40

    @property
    def position(self) -> tuple[int, int]:
        return (self.x, self.y)

    def chosen_item(self) -> ItemStack | None:
        return self.inventory[self.chosen_slot]

    def find_item(self, name: str) -> int:
        """Total quantity of an item across the inventory."""
        return sum(s.quantity for s in self.inventory if s is not None and s.name == name)

    def first_free_slot(self) -> int | None:
        for index in range(self.inventory_capacity):
            if self.inventory[index] is None:
                return index
        return None

    def add_item(self, stack: ItemStack) -> bool:
        """Add a stack, merging with an existing one when stackable.
        Returns False when no usable slot is free."""
        if stack.category not in ("tool", "weapon"):
            for slot in self.inventory[: self.inventory_capacity]:
                if (
                    slot is not None
                    and slot.name == stack.name
                    and slot.quality == stack.quality
                    and slot.attachment is None
                ):
                    slot.quantity += stack.quantity
                    return True
        index = self.first_free_slot()
        if index is None:
            return False
        self.inventory[index] = stack
        return True

    def remove_items(self, name: str, quantity: int) -> bool:
        """Remove a total quantity of an item; all-or-nothing."""
        if self.find_item(name) < quantity:
            return False
        remaining = quantity
        for index, slot in enumerate(self.inventory):
            if remaining == 0:
                break
            if slot is None or slot.name != name:
                continue
            take = min(slot.quantity, remaining)
            slot.quantity -= take
            remaining -= take
            if slot.quantity == 0:
                self.inventory[index] = None
        return True

    def to_dict(self) -> dict:
        return {
            "map_id": self.map_id,
            "x": self.x,
            "y": self.y,
            "facing": self.facing,
            "health": self.health,
            "base_health": self.base_health,
            "energy": self.energy,
            "base_energy": self.base_energy,
            "money": self.money,
            "inventory": [s.to_dict() if s else None for s in self.inventory],
            "inventory_capacity": self.inventory_capacity,
            "chosen_slot": self.chosen_slot,
            "skills": dict(sorted(self.skills.items())),
            "friendships": dict(sorted(self.friendships.items())),
            "recipes_known": sorted(self.recipes_known),
            "luck": self.luck,
            "watering_can_charge": self.watering_can_charge,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Player":
        return cls(
            map_id=data["map_id"],
            x=data["x"],
            y=data["y"],
            facing=data["facing"],
            health=data["health"],
            base_health=data["base_health"],
            energy=data["energy"],
            base_energy=data["base_energy"],
            money=data["money"],
            inventory=[ItemStack.from_dict(s) if s else None for s in data["inventory"]],
            inventory_capacity=data["inventory_capacity"],
            chosen_slot=data["chosen_slot"],
            skills=dict(data["skills"]),
            friendships=dict(data["friendships"]),
            recipes_known=set(data["recipes_known"]),
            luck=data["luck"],
            watering_can_charge=data["watering_can_charge"],
        )


@dataclass(slots=True)
class Npc:
    name: str
    map_id: str
    x: int
    y: int
    manual: bool = False  # pinned by warp_character until the next day

    def to_dict(self) -> dict:
        return {"name": self.name, "map_id": self.map_id, "x": self.x, "y": self.y, "manual": self.manual}

    @classmethod
    def from_dict(cls, data: dict) -> "Npc":
        return cls(**data)


@dataclass(slots=True)
class Animal:
    type_name: str
    name: str
    map_id: str
    x: int
    y: int
    is_pet: bool = False
    adult: bool = True

    def to_dict(self) -> dict:
        return {
            "type_name": self.type_name,
            "name": self.name,
            "map_id": self.map_id,
            "x": self.x,
            "y": self.y,
            "is_pet": self.is_pet,
            "adult": self.adult,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Animal":
        return cls(**data)


@dataclass(slots=True)
class Monster:
    species: str
    map_id: str
    x: int
    y: int
    hp: int
    home_x: int
    home_y: int
    patrol: list[tuple[int, int]] = field(default_factory=list)
    burrowed: bool = False
    surfaced_until: int = 0  # world tick until which a duggy stays surfaced

    def to_dict(self) -> dict:
        return {
            "species": self.species,
            "map_id": self.map_id,
            "x": self.x,
            "y": self.y,
            "hp": self.hp,
            "home_x": self.home_x,
            "home_y": self.home_y,
            "patrol": [list(p) for p in self.patrol],
            "burrowed": self.burrowed,
            "surfaced_until": self.surfaced_until,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Monster":
        data = dict(data)
        data["patrol"] = [tuple(p) for p in data["patrol"]]
        return cls(**data)


@dataclass(slots=True)
class Crop:
    crop_name: str
    days_grown: int = 0

    def to_dict(self) -> dict:
        return {"crop_name": self.crop_name, "days_grown": self.days_grown}

    @classmethod
    def from_dict(cls, data: dict) -> "Crop":
        return cls(**data)


@dataclass(slots=True)
class SoilTile:
    watered: bool = False
    fertilizer: str | None = None
    crop: Crop | None = None

    def to_dict(self) -> dict:
        return {
            "watered": self.watered,
            "fertilizer": self.fertilizer,
            "crop": self.crop.to_dict() if self.crop else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SoilTile":
        crop = data.get("crop")
        return cls(
            watered=data["watered"],
            fertilizer=data["fertilizer"],
            crop=Crop.from_dict(crop) if crop else None,
        )


@dataclass(slots=True)
class WorldObject:
    kind: str
    hits_left: int = 1
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "hits_left": self.hits_left, "data": self.data}

    @classmethod
    def from_dict(cls, data: dict) -> "WorldObject":
        return cls(kind=data["kind"], hits_left=data["hits_left"], data=dict(data["data"]))


@dataclass(slots=True)
class GroundItem:
    item: str
    quantity: int = 1

    def to_dict(self) -> dict:
        return {"item": self.item, "quantity": self.quantity}

    @classmethod
    def from_dict(cls, data: dict) -> "GroundItem":
        return cls(**data)


def _coord_key(x: int, y: int) -> str:
    return f"{x},{y}"


def _coord_from_key(key: str) -> tuple[int, int]:
    x_str, y_str = key.split(",")
    return int(x_str), int(y_str)


@dataclass(slots=True)
class MapState:
    map_id: str
    objects: dict[tuple[int, int], WorldObject] = field(default_factory=dict)
    soil: dict[tuple[int, int], SoilTile] = field(default_factory=dict)
    ground_items: dict[tuple[int, int], GroundItem] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "map_id": self.map_id,
            "objects": {_coord_key(*pos): obj.to_dict() for pos, obj in sorted(self.objects.items())},
            "soil": {_coord_key(*pos): tile.to_dict() for pos, tile in sorted(self.soil.items())},
            "ground_items": {
                _coord_key(*pos): item.to_dict() for pos, item in sorted(self.ground_items.items())
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MapState":
        return cls(
            map_id=data["map_id"],
            objects={_coord_from_key(k): WorldObject.from_dict(v) for k, v in data["objects"].items()},
            soil={_coord_from_key(k): SoilTile.from_dict(v) for k, v in data["soil"].items()},
            ground_items={
                _coord_from_key(k): GroundItem.from_dict(v) for k, v in data["ground_items"].items()
            },
        )


@dataclass(slots=True)
class Building:
    type_name: str
    map_id: str
    x: int
    y: int
    animal_door_open: bool = False

    def to_dict(self) -> dict:
        return {
            "type_name": self.type_name,
            "map_id": self.map_id,
            "x": self.x,
            "y": self.y,
            "animal_door_open": self.animal_door_open,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Building":
        return cls(**data)


@dataclass(slots=True)
class QuestState:
    quest_id: str
    title: str
    kind: str           # greet, gather, help
    state: str          # active, completed_unclaimed, rewarded, cancelled
    target: int = 0
    progress: int = 0
    reward_money: int = 0
    item: str | None = None
    count: int = 0
    npc: str | None = None

    def to_dict(self) -> dict:
        return {
            "quest_id": self.quest_id,
            "title": self.title,
            "kind": self.kind,
            "state": self.state,
            "target": self.target,
            "progress": self.progress,
            "reward_money": self.reward_money,
            "item": self.item,
            "count": self.count,
            "npc": self.npc,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuestState":
        return cls(**data)


@dataclass(slots=True)
class MenuState:
    kind: str = "none"  # none, dialogue, shop, crafting, animals, building, quest_log, map, shipping
    message: str = ""
    shop_id: str | None = None
    options: list[dict] = field(default_factory=list)
    out_options: list[dict] = field(default_factory=list)
    context: dict = field(default_factory=dict)

    @property
    def is_open(self) -> bool:
        return self.kind != "none"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "message": self.message,
            "shop_id": self.shop_id,
            "options": self.options,
            "out_options": self.out_options,
            "context": self.context,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MenuState":
        return cls(
            kind=data["kind"],
            message=data["message"],
            shop_id=data["shop_id"],
            options=list(data["options"]),
            out_options=list(data["out_options"]),
            context=dict(data["context"]),
        )


@dataclass(slots=True)
class WorldState:
    pack_name: str
    save_id: str
    seed: int
    clock: GameClock
    weather: str
    total_ticks: int
    mode: str  # paused | realtime
    player: Player
    maps: dict[str, MapState]
    npcs: list[Npc]
    animals: list[Animal]
    monsters: list[Monster]
    buildings: list[Building]
    quests: list[QuestState]
    kill_stats: dict[str, int]
    shipped: dict[str, int]
    pending_ship_value: int
    ledgers: dict[str, dict[str, int]]
    counters: dict[str, int]
    flags: set[str]
    completed_story: set[str]
    hay_in_silo: int
    house_level: int
    deepest_mine_level: int
    pet_bowl_filled: bool
    talked_today: set[str]
    gifted_today: set[str]
    petted_today: set[str]
    help_board: dict | None
    menu: MenuState
    rng: Rng

    # -- content helpers -------------------------------------------------

    @property
    def pack(self) -> ContentPack:
        return load_content_pack(self.pack_name)

    def map_state(self, map_id: str) -> MapState:
        if map_id not in self.maps:
            self.maps[map_id] = MapState(map_id=map_id)
        return self.maps[map_id]

    def map_def(self, map_id: str) -> MapDef:
        return self.pack.map_def(map_id)

    def current_map(self) -> MapState:
        return self.map_state(self.player.map_id)

    def bump(self, ledger: str, key: str, amount: int = 1) -> None:
        book = self.ledgers[ledger]
        book[key] = book.get(key, 0) + amount

    def bump_counter(self, key: str, amount: int = 1) -> None:
        self.counters[key] = self.counters.get(key, 0) + amount

    # -- geometry ---------------------------------------------------------

    def building_def(self, building: Building) -> BuildingDef:
        return self.pack.buildings[building.type_name]

    def building_tiles(self, building: Building) -> Iterator[tuple[int, int]]:
        bdef = self.building_def(building)
        for dx in range(bdef.width):
            for dy in range(bdef.height):
                yield (building.x + dx, building.y + dy)

    def building_door(self, building: Building) -> tuple[int, int] | None:
        bdef = self.building_def(building)
        if bdef.door is None:
            return None
        return (building.x + bdef.door[0], building.y + bdef.door[1])

    def building_at(self, map_id: str, x: int, y: int) -> Building | None:
        for building in self.buildings:
            if building.map_id != map_id:
                continue
            if (x, y) in set(self.building_tiles(building)):
                return building
        return None

    def building_of_interior(self, interior_map: str) -> Building | None:
        for building in self.buildings:
            if self.building_def(building).interior == interior_map:
                return building
        return None

    def is_passable(self, map_id: str, x: int, y: int) -> bool:
        map_def = self.map_def(map_id)
        if not map_def.terrain_passable(x, y):
            return False
        for building in self.buildings:
            if building.map_id == map_id:
                bdef = self.building_def(building)
                if building.x <= x < building.x + bdef.width and building.y <= y < building.y + bdef.height:
                    return False
        obj = self.map_state(map_id).objects.get((x, y))
        if obj is not None and obj.kind not in ("Weeds", "Grass"):
            return False
        return True

    def exit_at(self, map_id: str, x: int, y: int) -> tuple[str, int, int] | None:
        """Resolve the travel target for an exit/door tile, or None."""
        map_def = self.map_def(map_id)
        for exit_def in map_def.exits:
            if (exit_def.x, exit_def.y) != (x, y):
                continue
            if exit_def.to_building is None:
                return (exit_def.target_map, exit_def.target_x, exit_def.target_y)
            building = self.building_of_interior(map_id)
            if building is None:
                return None
            door = self.building_door(building)
            if door is None:
                return None
            return (building.map_id, door[0], door[1] + 1)
        building = self.building_at(map_id, x, y)
        if building is not None:
            door = self.building_door(building)
            bdef = self.building_def(building)
            if door == (x, y) and bdef.interior is not None:
                return (bdef.interior, bdef.interior_spawn[0], bdef.interior_spawn[1])
        return None

    def feature_at(self, map_id: str, x: int, y: int):
        for feature in self.map_def(map_id).features:
            if (feature.x, feature.y) == (x, y):
                return feature
        return None

    def npcs_on(self, map_id: str) -> list[Npc]:
        return [npc for npc in self.npcs if npc.map_id == map_id]

    def monsters_on(self, map_id: str) -> list[Monster]:
        return [m for m in self.monsters if m.map_id == map_id and m.hp > 0]

    def animals_on(self, map_id: str) -> list[Animal]:
        return [a for a in self.animals if a.map_id == map_id]

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema_version": SAVE_SCHEMA_VERSION,
            "pack_name": self.pack_name,
            "save_id": self.save_id,
            "seed": self.seed,
            "clock": self.clock.to_dict(),
            "weather": self.weather,
            "total_ticks": self.total_ticks,
            "mode": self.mode,
            "player": self.player.to_dict(),
            "maps": {map_id: ms.to_dict() for map_id, ms in sorted(self.maps.items())},
            "npcs": [npc.to_dict() for npc in self.npcs],
            "animals": [animal.to_dict() for animal in self.animals],
            "monsters": [monster.to_dict() for monster in self.monsters],
            "buildings": [building.to_dict() for building in self.buildings],
            "quests": [quest.to_dict() for quest in self.quests],
            "kill_stats": dict(sorted(self.kill_stats.items())),
            "shipped": dict(sorted(self.shipped.items())),
            "pending_ship_value": self.pending_ship_value,
            "ledgers": {k: dict(sorted(v.items())) for k, v in sorted(self.ledgers.items())},
            "counters": dict(sorted(self.counters.items())),
            "flags": sorted(self.flags),
            "completed_story": sorted(self.completed_story),
            "hay_in_silo": self.hay_in_silo,
            "house_level": self.house_level,
            "deepest_mine_level": self.deepest_mine_level,
            "pet_bowl_filled": self.pet_bowl_filled,
            "talked_today": sorted(self.talked_today),
            "gifted_today": sorted(self.gifted_today),
            "petted_today": sorted(self.petted_today),
            "help_board": self.help_board,
            "menu": self.menu.to_dict(),
            "rng_state": self.rng.state,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WorldState":
        if data.get("schema_version") != SAVE_SCHEMA_VERSION:
            raise ValueError(f"unsupported save schema_version: {data.get('schema_version')}")
        return cls(
            pack_name=data["pack_name"],
            save_id=data["save_id"],
            seed=data["seed"],
            clock=GameClock.from_dict(data["clock"]),
            weather=data["weather"],
            total_ticks=data["total_ticks"],
            mode=data["mode"],
            player=Player.from_dict(data["player"]),
            maps={map_id: MapState.from_dict(ms) for map_id, ms in data["maps"].items()},
            npcs=[Npc.from_dict(n) for n in data["npcs"]],
            animals=[Animal.from_dict(a) for a in data["animals"]],
            monsters=[Monster.from_dict(m) for m in data["monsters"]],
            buildings=[Building.from_dict(b) for b in data["buildings"]],
            quests=[QuestState.from_dict(q) for q in data["quests"]],
            kill_stats=dict(data["kill_stats"]),
            shipped=dict(data["shipped"]),
            pending_ship_value=data["pending_ship_value"],
            ledgers={k: dict(v) for k, v in data["ledgers"].items()},
            counters=dict(data["counters"]),
            flags=set(data["flags"]),
            completed_story=set(data["completed_story"]),
            hay_in_silo=data["hay_in_silo"],
            house_level=data["house_level"],
            deepest_mine_level=data["deepest_mine_level"],
            pet_bowl_filled=data["pet_bowl_filled"],
            talked_today=set(data["talked_today"]),
            gifted_today=set(data["gifted_today"]),
            petted_today=set(data["petted_today"]),
            help_board=data["help_board"],
            menu=MenuState.from_dict(data["menu"]),
            rng=Rng(state=data["rng_state"]),
        )

    def serialize(self) -> bytes:
        """Canonical byte encoding; equal states produce equal bytes."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")).encode("utf-8")

    @classmethod
    def deserialize(cls, raw: bytes) -> "WorldState":
        return cls.from_dict(json.loads(raw.decode("utf-8")))


def empty_ledgers() -> dict[str, dict[str, int]]:
    return {key: {} for key in LEDGER_KEYS}
