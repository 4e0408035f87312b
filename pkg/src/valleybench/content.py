"""Content pack loading and validation.

All game data (maps, items, recipes, crops, monsters, NPC schedules, shops,
buildings, mine levels, save scenarios) lives in versioned YAML files under
``data/<pack>/``.  The engine hard-asserts the headline constants it is built
around (270 base energy, 28-day seasons, the 6AM-2AM day) at load time so a
patched pack cannot silently change them.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import yaml

from valleybench.clock import DAY_END_MINUTE, DAYS_PER_SEASON

PACK_SCHEMA_VERSION = 1


class ContentError(ValueError):
    """Raised when a content pack is malformed or self-inconsistent."""


@dataclass(slots=True, frozen=True)
class ItemDef:
    name: str
    category: str  # tool, weapon, seed, crop, resource, craftable, food, misc
    sell_value: int = 0
    stackable: bool = True
    attachable: bool = False
    edible_energy: int = 0
    giftable: bool = True
    fertilizer: bool = False


@dataclass(slots=True, frozen=True)
class RecipeDef:
    product: str
    ingredients: dict[str, int]
    station: str | None = None  # None, "stove", "furnace" (machine recipes)
    machine_ticks: int = 0      # smelting time; 0 for instant hand-crafts
    count: int = 1


@dataclass(slots=True, frozen=True)
class CropDef:
    name: str            # harvested item name
    seed: str
    growth_days: int
    yield_count: int = 1


@dataclass(slots=True, frozen=True)
class MonsterDef:
    species: str
    hp: int
    damage: int
    aggro_radius: int
    behavior: str        # pursuit, patrol, fly, duggy, rock_crab
    speed: int = 1


@dataclass(slots=True, frozen=True)
class ScheduleEntry:
    at_minute: int
    map_id: str
    x: int
    y: int


@dataclass(slots=True, frozen=True)
class NpcDef:
    name: str
    schedule: tuple[ScheduleEntry, ...]
    loved: tuple[str, ...] = ()
    liked: tuple[str, ...] = ()
    disliked: tuple[str, ...] = ()

    def position_at(self, minute: int) -> ScheduleEntry:
        current = self.schedule[0]
        for entry in self.schedule:
            if entry.at_minute <= minute:
                current = entry
        return current


@dataclass(slots=True, frozen=True)
class ShopService:
    kind: str            # backpack, geode, tool_upgrade, joja_membership, joja_project
    label: str
    price: int
    item: str | None = None        # resulting item, if any
    requires_items: dict[str, int] = field(default_factory=dict)
    requires_flag: str | None = None
    grants_flag: str | None = None


@dataclass(slots=True, frozen=True)
class ShopDef:
    shop_id: str
    owner: str
    menu_kind: str = "shop"                  # shop, animals, building
    wares: tuple[tuple[str, int], ...] = ()  # (item name, buy price)
    services: tuple[ShopService, ...] = ()
    animals: tuple[tuple[str, int], ...] = ()  # (animal type, price)
    buys_items: bool = True


@dataclass(slots=True, frozen=True)
class BuildingDef:
    type_name: str
    width: int
    height: int
    door: tuple[int, int] | None = None       # offset of door tile in footprint
    interior: str | None = None
    interior_spawn: tuple[int, int] | None = None
    animal_door: tuple[int, int] | None = None
    build_cost: dict[str, int] = field(default_factory=dict)
    build_price: int = 0


@dataclass(slots=True, frozen=True)
class ExitDef:
    x: int
    y: int
    target_map: str = ""
    target_x: int = 0
    target_y: int = 0
    paired: bool = True
    to_building: str | None = None  # interior exits resolve against the placed building


@dataclass(slots=True, frozen=True)
class FeatureDef:
    kind: str
    x: int
    y: int
    data: dict = field(default_factory=dict)


@dataclass(slots=True)
class MapDef:
    map_id: str
    width: int
    height: int
    outdoor: bool
    default_spawn: tuple[int, int]
    walls: set[tuple[int, int]] = field(default_factory=set)
    water: set[tuple[int, int]] = field(default_factory=set)
    diggable: set[tuple[int, int]] = field(default_factory=set)
    exits: list[ExitDef] = field(default_factory=list)
    features: list[FeatureDef] = field(default_factory=list)
    build_sites: list[tuple[int, int]] = field(default_factory=list)

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def terrain_passable(self, x: int, y: int) -> bool:
        if not self.in_bounds(x, y):
            return False
        return (x, y) not in self.walls and (x, y) not in self.water


@dataclass(slots=True, frozen=True)
class MonsterSpawn:
    species: str
    x: int
    y: int
    patrol: tuple[tuple[int, int], ...] = ()


@dataclass(slots=True, frozen=True)
class MineLevelDef:
    level: int
    nodes: tuple[tuple[str, int, int], ...]       # (node kind, x, y)
    forage: tuple[tuple[str, int, int], ...]      # (item, x, y)
    monsters: tuple[MonsterSpawn, ...]
    diggable: tuple[tuple[int, int], ...] = ()
    artifacts: tuple[tuple[str, int, int], ...] = ()
    ladder: tuple[int, int] = (14, 9)
    pillars: tuple[tuple[int, int], ...] = ()


@dataclass(slots=True)
class ContentPack:
    pack_dir: Path
    meta: dict
    config: dict
    items: dict[str, ItemDef]
    recipes: dict[str, RecipeDef]
    crops: dict[str, CropDef]
    crops_by_seed: dict[str, CropDef]
    monsters: dict[str, MonsterDef]
    npcs: dict[str, NpcDef]
    shops: dict[str, ShopDef]
    buildings: dict[str, BuildingDef]
    maps: dict[str, MapDef]
    mine_levels: dict[int, MineLevelDef]
    map_aliases: dict[str, str]
    scenarios: dict[str, dict]
    gift_points: dict[str, int]

    def item(self, name: str) -> ItemDef:
        try:
            return self.items[name]
        except KeyError:
            raise ContentError(f"unknown item: {name!r}") from None

    def map_def(self, map_id: str) -> MapDef:
        resolved = self.map_aliases.get(map_id.lower(), map_id)
        try:
            return self.maps[resolved]
        except KeyError:
            raise ContentError(f"unknown map: {map_id!r}") from None

    def resolve_map_id(self, name: str) -> str:
        resolved = self.map_aliases.get(name.lower(), name)
        if resolved not in self.maps:
            raise ContentError(f"unknown map: {name!r}")
        return resolved

    def gift_reaction(self, npc: str, item: str) -> tuple[str, int]:
        npc_def = self.npcs[npc]
        if item in npc_def.loved:
            taste = "loved"
        elif item in npc_def.liked:
            taste = "liked"
        elif item in npc_def.disliked:
            taste = "disliked"
        else:
            taste = "neutral"
        return taste, self.gift_points[taste]


def _read_yaml(path: Path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle)
    return data or {}


def _apply_fills(map_def: MapDef, fills: list[dict]) -> None:
    for fill in fills:
        kind = fill["kind"]
        if "rect" in fill:
            x0, y0, x1, y1 = fill["rect"]
            coords = [(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1)]
        else:
            coords = [(fill["x"], fill["y"])]
        target = {"wall": map_def.walls, "water": map_def.water, "diggable": map_def.diggable}[kind]
        target.update(coords)


_MINE_WIDTH = 18
_MINE_HEIGHT = 12
MINE_ENTRY = (3, 4)
MINE_ELEVATOR = (2, 2)
MINE_UP_EXIT = (2, 4)  # adjacent to the entry landing so door transit pairs cleanly


def _build_mine_map(level: int, level_def: MineLevelDef, pack_dir_name: str) -> MapDef:
    map_id = f"UndergroundMine{level}"
    map_def = MapDef(
        map_id=map_id,
        width=_MINE_WIDTH,
        height=_MINE_HEIGHT,
        outdoor=False,
        default_spawn=MINE_ENTRY,
    )
    for x in range(_MINE_WIDTH):
        map_def.walls.add((x, 0))
        map_def.walls.add((x, _MINE_HEIGHT - 1))
    for y in range(_MINE_HEIGHT):
        map_def.walls.add((0, y))
        map_def.walls.add((_MINE_WIDTH - 1, y))
    map_def.walls.update(level_def.pillars)
    map_def.diggable.update(level_def.diggable)
    map_def.features.append(FeatureDef(kind="elevator", x=MINE_ELEVATOR[0], y=MINE_ELEVATOR[1]))
    map_def.walls.add(MINE_ELEVATOR)
    lx, ly = level_def.ladder
    map_def.features.append(FeatureDef(kind="ladder_down", x=lx, y=ly, data={"to_level": level + 1}))
    map_def.walls.add((lx, ly))
    # Up exit: level 1 returns to the mountain entrance, deeper levels to the level above.
    if level == 1:
        map_def.exits.append(ExitDef(MINE_UP_EXIT[0], MINE_UP_EXIT[1], "Mountain", 17, 5, paired=True))
    else:
        map_def.exits.append(
            ExitDef(MINE_UP_EXIT[0], MINE_UP_EXIT[1], f"UndergroundMine{level - 1}", MINE_ENTRY[0], MINE_ENTRY[1], paired=False)
        )
    map_def.walls.add(MINE_UP_EXIT)
    return map_def


def _validate(pack: ContentPack) -> None:
    cfg = pack.config
    if cfg["base_energy"] != 270:
        raise ContentError("base_energy must be 270")
    if cfg["day_end_minute"] != DAY_END_MINUTE:
        raise ContentError("day must span 6AM to 2AM (1200 minutes)")
    if cfg["days_per_season"] != DAYS_PER_SEASON:
        raise ContentError("seasons must last 28 days")

    for recipe in pack.recipes.values():
        if recipe.product not in pack.items:
            raise ContentError(f"recipe product not an item: {recipe.product}")
        for ingredient in recipe.ingredients:
            if ingredient not in pack.items:
                raise ContentError(f"recipe ingredient not an item: {ingredient}")
    for crop in pack.crops.values():
        if crop.name not in pack.items or crop.seed not in pack.items:
            raise ContentError(f"crop {crop.name} references unknown items")
    for shop in pack.shops.values():
        for ware, _price in shop.wares:
            if ware not in pack.items:
                raise ContentError(f"shop {shop.shop_id} sells unknown item {ware}")
        if shop.owner not in pack.npcs:
            raise ContentError(f"shop {shop.shop_id} owner {shop.owner} is not an NPC")
    for map_def in pack.maps.values():
        for exit_def in map_def.exits:
            if exit_def.to_building is not None:
                if exit_def.to_building not in pack.buildings:
                    raise ContentError(f"exit in {map_def.map_id} targets unknown building type")
                continue
            if exit_def.target_map not in pack.maps:
                raise ContentError(f"exit in {map_def.map_id} targets unknown map {exit_def.target_map}")
            target = pack.maps[exit_def.target_map]
            if not target.terrain_passable(exit_def.target_x, exit_def.target_y):
                raise ContentError(
                    f"exit {map_def.map_id}({exit_def.x},{exit_def.y}) lands on blocked tile "
                    f"in {exit_def.target_map}"
                )
    for npc in pack.npcs.values():
        for entry in npc.schedule:
            if entry.map_id not in pack.maps:
                raise ContentError(f"NPC {npc.name} scheduled on unknown map {entry.map_id}")


@functools.lru_cache(maxsize=4)
def load_content_pack(name: str = "valleylite") -> ContentPack:
    """Load and validate a content pack by directory name."""
    base = resources.files("valleybench").joinpath("data", name)
    pack_dir = Path(str(base))
    if not pack_dir.is_dir():
        raise ContentError(f"content pack not found: {name}")

    meta = _read_yaml(pack_dir / "pack.yaml")
    if meta.get("schema_version") != PACK_SCHEMA_VERSION:
        raise ContentError(f"unsupported pack schema_version: {meta.get('schema_version')}")
    config = meta["config"]

    items = {
        name_: ItemDef(
            name=name_,
            category=spec["category"],
            sell_value=spec.get("sell_value", 0),
            stackable=spec.get("stackable", spec["category"] not in ("tool", "weapon")),
            attachable=spec.get("attachable", False),
            edible_energy=spec.get("edible_energy", 0),
            giftable=spec.get("giftable", spec["category"] not in ("tool", "weapon")),
            fertilizer=spec.get("fertilizer", False),
        )
        for name_, spec in _read_yaml(pack_dir / "items.yaml").items()
    }

    recipes = {
        product: RecipeDef(
            product=product,
            ingredients=dict(spec.get("ingredients", {})),
            station=spec.get("station"),
            machine_ticks=spec.get("machine_ticks", 0),
            count=spec.get("count", 1),
        )
        for product, spec in _read_yaml(pack_dir / "recipes.yaml").items()
    }

    crops = {}
    for name_, spec in _read_yaml(pack_dir / "crops.yaml").items():
        crops[name_] = CropDef(
            name=name_,
            seed=spec["seed"],
            growth_days=spec["growth_days"],
            yield_count=spec.get("yield_count", 1),
        )
    crops_by_seed = {crop.seed: crop for crop in crops.values()}

    monsters = {
        species: MonsterDef(
            species=species,
            hp=spec["hp"],
            damage=spec["damage"],
            aggro_radius=spec.get("aggro_radius", 6),
            behavior=spec["behavior"],
            speed=spec.get("speed", 1),
        )
        for species, spec in _read_yaml(pack_dir / "monsters.yaml").items()
    }

    npcs = {}
    for name_, spec in _read_yaml(pack_dir / "npcs.yaml").items():
        schedule = tuple(
            ScheduleEntry(entry["at"], entry["map"], entry["x"], entry["y"])
            for entry in spec["schedule"]
        )
        npcs[name_] = NpcDef(
            name=name_,
            schedule=schedule,
            loved=tuple(spec.get("loved", ())),
            liked=tuple(spec.get("liked", ())),
            disliked=tuple(spec.get("disliked", ())),
        )

    shops = {}
    for shop_id, spec in _read_yaml(pack_dir / "shops.yaml").items():
        services = tuple(
            ShopService(
                kind=svc["kind"],
                label=svc["label"],
                price=svc.get("price", 0),
                item=svc.get("item"),
                requires_items=dict(svc.get("requires_items", {})),
                requires_flag=svc.get("requires_flag"),
                grants_flag=svc.get("grants_flag"),
            )
            for svc in spec.get("services", ())
        )
        shops[shop_id] = ShopDef(
            shop_id=shop_id,
            owner=spec["owner"],
            menu_kind=spec.get("menu", "shop"),
            wares=tuple((ware["item"], ware["price"]) for ware in spec.get("wares", ())),
            services=services,
            animals=tuple((a["type"], a["price"]) for a in spec.get("animals", ())),
            buys_items=spec.get("buys_items", True),
        )

    buildings = {}
    for type_name, spec in _read_yaml(pack_dir / "buildings.yaml").items():
        buildings[type_name] = BuildingDef(
            type_name=type_name,
            width=spec["width"],
            height=spec["height"],
            door=tuple(spec["door"]) if "door" in spec else None,
            interior=spec.get("interior"),
            interior_spawn=tuple(spec["interior_spawn"]) if "interior_spawn" in spec else None,
            animal_door=tuple(spec["animal_door"]) if "animal_door" in spec else None,
            build_cost=dict(spec.get("build_cost", {})),
            build_price=spec.get("build_price", 0),
        )

    maps = {}
    maps_raw = _read_yaml(pack_dir / "maps.yaml")
    for map_id, spec in maps_raw.items():
        map_def = MapDef(
            map_id=map_id,
            width=spec["width"],
            height=spec["height"],
            outdoor=spec.get("outdoor", False),
            default_spawn=tuple(spec["default_spawn"]),
        )
        if spec.get("border_walls", True):
            for x in range(map_def.width):
                map_def.walls.add((x, 0))
                map_def.walls.add((x, map_def.height - 1))
            for y in range(map_def.height):
                map_def.walls.add((0, y))
                map_def.walls.add((map_def.width - 1, y))
        _apply_fills(map_def, spec.get("fills", []))
        for exit_spec in spec.get("exits", []):
            if "to_building" in exit_spec:
                map_def.exits.append(
                    ExitDef(x=exit_spec["x"], y=exit_spec["y"], to_building=exit_spec["to_building"])
                )
            else:
                map_def.exits.append(
                    ExitDef(
                        x=exit_spec["x"],
                        y=exit_spec["y"],
                        target_map=exit_spec["to"][0],
                        target_x=exit_spec["to"][1],
                        target_y=exit_spec["to"][2],
                        paired=exit_spec.get("paired", True),
                    )
                )
            map_def.walls.add((exit_spec["x"], exit_spec["y"]))
        for feat in spec.get("features", []):
            extra = {k: v for k, v in feat.items() if k not in ("kind", "x", "y", "passable")}
            map_def.features.append(FeatureDef(kind=feat["kind"], x=feat["x"], y=feat["y"], data=extra))
            if not feat.get("passable", False):
                map_def.walls.add((feat["x"], feat["y"]))
        map_def.build_sites = [tuple(site) for site in spec.get("build_sites", [])]
        maps[map_id] = map_def

    mines_raw = _read_yaml(pack_dir / "mines.yaml")
    mine_levels = {}
    for level_str, spec in mines_raw.get("levels", {}).items():
        level = int(level_str)
        mine_levels[level] = MineLevelDef(
            level=level,
            nodes=tuple((n["kind"], n["x"], n["y"]) for n in spec.get("nodes", ())),
            forage=tuple((f["item"], f["x"], f["y"]) for f in spec.get("forage", ())),
            monsters=tuple(
                MonsterSpawn(
                    species=m["species"],
                    x=m["x"],
                    y=m["y"],
                    patrol=tuple((p[0], p[1]) for p in m.get("patrol", ())),
                )
                for m in spec.get("monsters", ())
            ),
            diggable=tuple((d[0], d[1]) for d in spec.get("diggable", ())),
            artifacts=tuple((a["item"], a["x"], a["y"]) for a in spec.get("artifacts", ())),
            ladder=tuple(spec.get("ladder", (14, 9))),
            pillars=tuple((p[0], p[1]) for p in spec.get("pillars", ())),
        )
    max_level = mines_raw.get("max_level", 15)
    for level in range(1, max_level + 1):
        if level not in mine_levels:
            mine_levels[level] = MineLevelDef(level=level, nodes=(), forage=(), monsters=())
        maps[f"UndergroundMine{level}"] = _build_mine_map(level, mine_levels[level], name)

    map_aliases = {alias.lower(): target for alias, target in meta.get("map_aliases", {}).items()}
    scenarios = _read_yaml(pack_dir / "scenarios.yaml")

    pack = ContentPack(
        pack_dir=pack_dir,
        meta=meta,
        config=config,
        items=items,
        recipes=recipes,
        crops=crops,
        crops_by_seed=crops_by_seed,
        monsters=monsters,
        npcs=npcs,
        shops=shops,
        buildings=buildings,
        maps=maps,
        mine_levels=mine_levels,
        map_aliases=map_aliases,
        scenarios=scenarios,
        gift_points=dict(meta["gift_points"]),
    )
    _validate(pack)
    return pack
