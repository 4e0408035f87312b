"""Monster behavior, run once per simulation tick on the player's map.

Pursuit movement is deterministic (no random draws) so combat scripts replay
identically across seeds; only the fly's far-range sidestep consumes RNG.
"""

from __future__ import annotations

from valleybench.state import Monster, WorldState
from valleybench.world import Event

SURFACE_DURATION_TICKS = 3
CRAB_PHASE_TICKS = 3  # walking for 3 ticks, shelled for 3


def crab_is_walking(total_ticks: int) -> bool:
    return (total_ticks // CRAB_PHASE_TICKS) % 2 == 0


def _manhattan(ax: int, ay: int, bx: int, by: int) -> int:
    return abs(ax - bx) + abs(ay - by)


def _pursuit_step(world: WorldState, monster: Monster, px: int, py: int) -> None:
    """One deterministic step toward the player: larger-gap axis first."""
    dx = px - monster.x
    dy = py - monster.y
    moves = []
    step_x = (1 if dx > 0 else -1, 0)
    step_y = (0, 1 if dy > 0 else -1)
    if abs(dx) >= abs(dy):
        if dx != 0:
            moves.append(step_x)
        if dy != 0:
            moves.append(step_y)
    else:
        if dy != 0:
            moves.append(step_y)
        if dx != 0:
            moves.append(step_x)
    map_def = world.map_def(monster.map_id)
    for mx, my in moves:
        nx, ny = monster.x + mx, monster.y + my
        if map_def.terrain_passable(nx, ny) and world.is_passable(monster.map_id, nx, ny):
            monster.x, monster.y = nx, ny
            return


def _attack(world: WorldState, monster: Monster, events: list[Event]) -> None:
    damage = world.pack.monsters[monster.species].damage
    world.player.health = max(0, world.player.health - damage)
    events.append(Event("player-hit", {"by": monster.species, "damage": damage}))


def monster_ai_step(world: WorldState, elapsed_ticks: int = 1) -> list[Event]:
    """Advance monster behavior; assumes world.total_ticks already reflects
    the tick being processed.  Only the player's map is simulated."""
    events: list[Event] = []
    for _ in range(elapsed_ticks):
        px, py = world.player.x, world.player.y
        for monster in world.monsters_on(world.player.map_id):
            mdef = world.pack.monsters[monster.species]
            behavior = mdef.behavior

            if behavior == "patrol" and monster.patrol:
                monster.x, monster.y = monster.patrol[world.total_ticks % len(monster.patrol)]
                if (monster.x, monster.y) == (px, py):
                    _attack(world, monster, events)
                continue

            dist = _manhattan(monster.x, monster.y, px, py)

            if behavior == "pursuit":
                if dist > mdef.aggro_radius:
                    continue
                if dist == 1:
                    _attack(world, monster, events)
                else:
                    _pursuit_step(world, monster, px, py)
                continue

            if behavior == "fly":
                if dist > mdef.aggro_radius:
                    continue
                if dist == 1:
                    _attack(world, monster, events)
                    continue
                steps = mdef.speed if dist > 4 else 1
                for _step in range(steps):
                    if _manhattan(monster.x, monster.y, px, py) <= 1:
                        break
                    far = _manhattan(monster.x, monster.y, px, py) > 4
                    if far and world.rng.random() < 0.25:
                        # Erratic sidestep perpendicular to the main approach axis.
                        if abs(px - monster.x) >= abs(py - monster.y):
                            side = (0, 1 if world.rng.random() < 0.5 else -1)
                        else:
                            side = (1 if world.rng.random() < 0.5 else -1, 0)
                        nx, ny = monster.x + side[0], monster.y + side[1]
                        if world.map_def(monster.map_id).terrain_passable(nx, ny):
                            monster.x, monster.y = nx, ny
                            continue
                    _pursuit_step(world, monster, px, py)
                continue

            if behavior == "duggy":
                if monster.burrowed:
                    if dist <= mdef.aggro_radius:
                        spot = _nearest_surfacing_tile(world, monster.map_id, px, py)
                        if spot is not None:
                            monster.x, monster.y = spot
                            monster.burrowed = False
                            monster.surfaced_until = world.total_ticks + SURFACE_DURATION_TICKS
                            events.append(Event("duggy-surfaced", {"x": spot[0], "y": spot[1]}))
                else:
                    if world.total_ticks >= monster.surfaced_until:
                        monster.burrowed = True
                        monster.x, monster.y = monster.home_x, monster.home_y
                    elif dist == 1:
                        _attack(world, monster, events)
                continue

            if behavior == "rock_crab":
                if not crab_is_walking(world.total_ticks):
                    continue
                if dist > mdef.aggro_radius:
                    continue
                if dist == 1:
                    _attack(world, monster, events)
                else:
                    _pursuit_step(world, monster, px, py)
                continue
    return events


def _nearest_surfacing_tile(world: WorldState, map_id: str, px: int, py: int) -> tuple[int, int] | None:
    """Closest diggable tile sharing the player's row or column, within 2
    tiles, excluding the player's own tile; ties break on (distance, y, x)."""
    map_def = world.map_def(map_id)
    candidates = []
    for (x, y) in map_def.diggable:
        if (x, y) == (px, py):
            continue
        if x == px and abs(y - py) <= 2:
            candidates.append((abs(y - py), y, x))
        elif y == py and abs(x - px) <= 2:
            candidates.append((abs(x - px), y, x))
    if not candidates:
        return None
    _, y, x = min(candidates)
    return (x, y)


def strike_tile(world: WorldState, x: int, y: int, damage: int) -> tuple[list[Event], bool, str]:
    """Apply weapon damage to every vulnerable monster on a tile.
    Returns (events, hit_anything, failure_reason)."""
    events: list[Event] = []
    hit = False
    reason = "nothing to hit"
    for monster in list(world.monsters_on(world.player.map_id)):
        if (monster.x, monster.y) != (x, y):
            continue
        mdef = world.pack.monsters[monster.species]
        if mdef.behavior == "duggy" and monster.burrowed:
            continue
        if mdef.behavior == "rock_crab" and not crab_is_walking(world.total_ticks):
            reason = "the blow bounced off its shell"
            continue
        monster.hp -= damage
        hit = True
        if monster.hp <= 0:
            world.monsters.remove(monster)
            world.kill_stats[monster.species] = world.kill_stats.get(monster.species, 0) + 1
            events.append(Event("monster-killed", {"species": monster.species}))
        else:
            events.append(Event("monster-hit", {"species": monster.species, "hp": monster.hp}))
    return events, hit, reason
