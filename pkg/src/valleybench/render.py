"""Schematic top-down raster renderer.

One flat-colored square per tile with inset markers for objects, crops and
entities; the player sits at the window center.  Output is a numpy RGB
array plus a minimal self-contained PNG encoder (fixed zlib level, filter 0)
so identical states produce identical bytes.  The color code is documented
in data/valleylite/render_legend.yaml.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass

import numpy as np

from valleybench.state import WorldState

DEFAULT_TILE_SIZE = 32
MIN_WIDTH = 640
MIN_HEIGHT = 360

COLORS = {
    "void": (12, 12, 16),
    "wall": (64, 62, 70),
    "ground": (92, 142, 66),
    "floor": (168, 136, 96),
    "dirt": (136, 100, 62),
    "tilled": (104, 70, 44),
    "watered": (72, 52, 40),
    "water": (52, 94, 170),
    "exit": (196, 64, 196),
    "building": (112, 82, 52),
    "door": (196, 64, 196),
    "animal_door": (86, 62, 96),
    "Weeds": (44, 124, 44),
    "Grass": (120, 184, 76),
    "Stone": (132, 132, 132),
    "Twig": (152, 112, 60),
    "Tree": (24, 92, 32),
    "Copper Node": (190, 110, 50),
    "Coal Node": (40, 40, 44),
    "Furnace": (96, 74, 74),
    "Chest": (164, 122, 44),
    "incubator": (222, 202, 182),
    "Artifact Spot": (162, 142, 102),
    "object": (150, 150, 150),
    "crop_young": (70, 160, 70),
    "crop_mature": (240, 200, 48),
    "ground_item": (240, 240, 160),
    "bed": (200, 44, 64),
    "counter": (122, 82, 44),
    "board": (182, 152, 92),
    "elevator": (182, 182, 204),
    "ladder_down": (222, 222, 104),
    "pet_bowl": (92, 160, 200),
    "stove": (84, 84, 94),
    "npc": (250, 220, 64),
    "animal": (204, 164, 124),
    "monster": (222, 44, 44),
    "player": (255, 255, 255),
}


@dataclass(slots=True)
class VisualObservation:
    width: int
    height: int
    tile_size: int
    pixels: np.ndarray  # (height, width, 3) uint8

    @property
    def tiles_x(self) -> int:
        return -(-self.width // self.tile_size)

    @property
    def tiles_y(self) -> int:
        return -(-self.height // self.tile_size)


def _base_color(world: WorldState, map_id: str, x: int, y: int) -> tuple[int, int, int]:
    map_def = world.map_def(map_id)
    if not map_def.in_bounds(x, y):
        return COLORS["void"]
    if world.exit_at(map_id, x, y) is not None:
        return COLORS["exit"]
    if (x, y) in map_def.water:
        return COLORS["water"]
    building = world.building_at(map_id, x, y)
    if building is not None:
        bdef = world.building_def(building)
        if world.building_door(building) == (x, y):
            return COLORS["door"]
        if bdef.animal_door is not None and (x, y) == (
            building.x + bdef.animal_door[0],
            building.y + bdef.animal_door[1],
        ):
            return COLORS["animal_door"]
        return COLORS["building"]
    feature = world.feature_at(map_id, x, y)
    if feature is not None:
        return COLORS.get(feature.kind, COLORS["wall"])
    if (x, y) in map_def.walls:
        return COLORS["wall"]
    tile = world.map_state(map_id).soil.get((x, y))
    if tile is not None:
        return COLORS["watered"] if tile.watered else COLORS["tilled"]
    if (x, y) in map_def.diggable:
        return COLORS["dirt"]
    return COLORS["ground"] if map_def.outdoor else COLORS["floor"]


def render_visual(world: WorldState, width: int = 1280, height: int = 720,
                  tile_size: int = DEFAULT_TILE_SIZE) -> VisualObservation:
    """Render the player-centered window; a larger resolution at the same
    tile size widens the field of view."""
    if width < MIN_WIDTH or height < MIN_HEIGHT:
        raise ValueError(f"unsupported size {width}x{height}; floor is {MIN_WIDTH}x{MIN_HEIGHT}")
    tiles_x = -(-width // tile_size)
    tiles_y = -(-height // tile_size)
    origin_tx = world.player.x - tiles_x // 2
    origin_ty = world.player.y - tiles_y // 2
    map_id = world.player.map_id
    map_state = world.map_state(map_id)

    canvas = np.zeros((tiles_y * tile_size, tiles_x * tile_size, 3), dtype=np.uint8)
    canvas[:, :] = COLORS["void"]

    inset = max(2, tile_size // 8)

    def fill(tx: int, ty: int, color, pad: int = 0) -> None:
        x0, y0 = tx * tile_size + pad, ty * tile_size + pad
        x1, y1 = (tx + 1) * tile_size - pad, (ty + 1) * tile_size - pad
        canvas[y0:y1, x0:x1] = color

    for ty in range(tiles_y):
        for tx in range(tiles_x):
            wx, wy = origin_tx + tx, origin_ty + ty
            fill(tx, ty, _base_color(world, map_id, wx, wy))
            tile = map_state.soil.get((wx, wy))
            if tile is not None and tile.crop is not None:
                crop_def = world.pack.crops[tile.crop.crop_name]
                mature = tile.crop.days_grown >= crop_def.growth_days
                fill(tx, ty, COLORS["crop_mature"] if mature else COLORS["crop_young"], pad=inset * 2)
            obj = map_state.objects.get((wx, wy))
            if obj is not None:
                fill(tx, ty, COLORS.get(obj.kind, COLORS["object"]), pad=inset)
            if (wx, wy) in map_state.ground_items:
                fill(tx, ty, COLORS["ground_item"], pad=inset * 2)

    def mark(entity_x: int, entity_y: int, color) -> None:
        tx, ty = entity_x - origin_tx, entity_y - origin_ty
        if 0 <= tx < tiles_x and 0 <= ty < tiles_y:
            fill(tx, ty, color, pad=inset * 2)

    for npc in world.npcs_on(map_id):
        mark(npc.x, npc.y, COLORS["npc"])
    for animal in world.animals_on(map_id):
        mark(animal.x, animal.y, COLORS["animal"])
    for monster in world.monsters_on(map_id):
        if not monster.burrowed:
            mark(monster.x, monster.y, COLORS["monster"])
    mark(world.player.x, world.player.y, COLORS["player"])

    return VisualObservation(width=width, height=height, tile_size=tile_size,
                             pixels=canvas[:height, :width])


def _png_chunk(tag: bytes, data: bytes) -> bytes:
    return (
        struct.pack("!I", len(data))
        + tag
        + data
        + struct.pack("!I", zlib.crc32(tag + data) & 0xFFFFFFFF)
    )


def encode_png(pixels: np.ndarray) -> bytes:
    """Lossless PNG (8-bit RGB, filter 0, fixed compression level)."""
    height, width, _ = pixels.shape
    raw = np.zeros((height, 1 + width * 3), dtype=np.uint8)
    raw[:, 1:] = pixels.reshape(height, width * 3)
    idat = zlib.compress(raw.tobytes(), 3)
    ihdr = struct.pack("!IIBBBBB", width, height, 8, 2, 0, 0, 0)
    return (
        b"\x89PNG\r\n\x1a\n"
        + _png_chunk(b"IHDR", ihdr)
        + _png_chunk(b"IDAT", idat)
        + _png_chunk(b"IEND", b"")
    )


def decode_png(data: bytes) -> np.ndarray:
    """Inverse of encode_png for the subset it emits."""
    if data[:8] != b"\x89PNG\r\n\x1a\n":
        raise ValueError("not a PNG")
    offset = 8
    width = height = 0
    idat = b""
    while offset < len(data):
        (length,) = struct.unpack("!I", data[offset:offset + 4])
        tag = data[offset + 4:offset + 8]
        body = data[offset + 8:offset + 8 + length]
        if tag == b"IHDR":
            width, height = struct.unpack("!II", body[:8])
        elif tag == b"IDAT":
            idat += body
        offset += 12 + length
    raw = np.frombuffer(zlib.decompress(idat), dtype=np.uint8).reshape(height, 1 + width * 3)
    if raw[:, 0].any():
        raise ValueError("unsupported PNG filter")
    return raw[:, 1:].reshape(height, width, 3).copy()
