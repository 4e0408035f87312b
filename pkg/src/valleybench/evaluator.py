"""Incremental task evaluation.

An EvalState stores the previous projected observation and accumulates the
per-step quantity change returned by compare(); the first call only primes
the stored observation and reports (False, 0).  Every evaluator type is a
pure diff rule over two projections, clamped at zero so progress never
regresses.  Keys whose in-game meaning is underdocumented carry an explicit
interpretation note in EVALUATOR_DOCS.
"""

from __future__ import annotations

from dataclasses import dataclass

from valleybench.state import WorldState


def project_observation(world: WorldState) -> dict:
    """The evaluator-relevant projection of a WorldState.

    Carries cumulative ledgers alongside instantaneous tallies so that
    every evaluator type reduces to a monotone diff even when items are
    consumed, sold or shipped after being acquired.
    """
    inventory: dict[str, int] = {}
    for stack in world.player.inventory:
        if stack is not None:
            inventory[stack.name] = inventory.get(stack.name, 0) + stack.quantity

    tallies = {"tilled": 0, "watered": 0, "sown": 0, "fertilized": 0}
    object_counts: dict[str, int] = {}
    for map_state in world.maps.values():
        for tile in map_state.soil.values():
            tallies["tilled"] += 1
            if tile.watered:
                tallies["watered"] += 1
            if tile.crop is not None:
                tallies["sown"] += 1
            if tile.fertilizer is not None:
                tallies["fertilized"] += 1
        for obj in map_state.objects.values():
            object_counts[obj.kind] = object_counts.get(obj.kind, 0) + 1
    debris_kinds = world.pack.config["debris_kinds"]
    object_counts["Debris"] = sum(object_counts.get(kind, 0) for kind in debris_kinds)

    return {
        "location": world.player.map_id,
        "money": world.player.money,
        "inventory": inventory,
        "inventory_capacity": world.player.inventory_capacity,
        "kill_stats": dict(world.kill_stats),
        "shipped": dict(world.shipped),
        "friendships": dict(world.player.friendships),
        "ledgers": {k: dict(v) for k, v in world.ledgers.items()},
        "counters": dict(world.counters),
        "flags": sorted(world.flags),
        "completed_story": sorted(world.completed_story),
        "quest_states": {q.quest_id: q.state for q in world.quests},
        "buildings": sorted(b.type_name for b in world.buildings),
        "house_level": world.house_level,
        "hay_in_silo": world.hay_in_silo,
        "tallies": tallies,
        "object_counts": object_counts,
        "recipes_known": sorted(world.player.recipes_known),
    }


def _delta(now: int, before: int) -> int:
    return max(0, now - before)


def _ledger_delta(ledger: str, key: str, obs: dict, last: dict) -> int:
    return _delta(obs["ledgers"][ledger].get(key, 0), last["ledgers"][ledger].get(key, 0))


def _counter_delta(key: str, obs: dict, last: dict) -> int:
    return _delta(obs["counters"].get(key, 0), last["counters"].get(key, 0))


def _cmp_clear(obj: str, obs: dict, last: dict) -> int:
    return _delta(last["object_counts"].get(obj, 0), obs["object_counts"].get(obj, 0))

def _cmp_till(obj: str, obs: dict, last: dict) -> int:
    return _delta(obs["tallies"]["tilled"], last["tallies"]["tilled"])

def _cmp_water(obj: str, obs: dict, last: dict) -> int:
    return _delta(obs["tallies"]["watered"], last["tallies"]["watered"])

def _cmp_sow(obj: str, obs: dict, last: dict) -> int:
    return _delta(obs["tallies"]["sown"], last["tallies"]["sown"])

def _cmp_fertilize(obj: str, obs: dict, last: dict) -> int:
    return _delta(obs["tallies"]["fertilized"], last["tallies"]["fertilized"])

def _cmp_harvest(obj: str, obs: dict, last: dict) -> int:
    now = obs["inventory"].get(obj, 0) + obs["shipped"].get(obj, 0)
    before = last["inventory"].get(obj, 0) + last["shipped"].get(obj, 0)
    return _delta(now, before)

def _cmp_craft(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("crafted", obj, obs, last)

def _cmp_kill(obj: str, obs: dict, last: dict) -> int:
    return _delta(obs["kill_stats"].get(obj, 0), last["kill_stats"].get(obj, 0))

def _cmp_location(obj: str, obs: dict, last: dict) -> int:
    return 1 if obs["location"] == obj and last["location"] != obj else 0

def _cmp_sell(obj: str, obs: dict, last: dict) -> int:
    now = obs["ledgers"]["sold"].get(obj, 0) + obs["shipped"].get(obj, 0)
    before = last["ledgers"]["sold"].get(obj, 0) + last["shipped"].get(obj, 0)
    return _delta(now, before)

def _cmp_purchase(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("purchased", obj, obs, last)

def _cmp_purchase_animal(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("animals_purchased", obj, obs, last)

def _cmp_sell_animal(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("animals_sold", obj, obs, last)

def _cmp_build(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("built", obj, obs, last)

def _cmp_demolish(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("demolished", obj, obs, last)

def _cmp_move(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("moved", obj, obs, last)

def _cmp_upgrade_tool(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("tools_upgraded", obj, obs, last)

def _cmp_upgrade_farmhouse(obj: str, obs: dict, last: dict) -> int:
    return _counter_delta("house_upgrades", obs, last)

def _cmp_gift(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("gifted", obj, obs, last)

def _cmp_talk(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("talked", obj, obs, last)

def _cmp_friendship(obj: str, obs: dict, last: dict) -> int:
    return _delta(obs["friendships"].get(obj, 0), last["friendships"].get(obj, 0))

def _cmp_sleep(obj: str, obs: dict, last: dict) -> int:
    return _counter_delta("slept", obs, last)

def _cmp_pet(obj: str, obs: dict, last: dict) -> int:
    return _counter_delta("pet", obs, last)

def _cmp_open(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("opened", obj, obs, last)

def _cmp_fill(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("filled", obj, obs, last)

def _cmp_incubate(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("hatched", obj, obs, last)

def _cmp_silo(obj: str, obs: dict, last: dict) -> int:
    return _delta(obs["hay_in_silo"], last["hay_in_silo"])

def _cmp_jojamart(obj: str, obs: dict, last: dict) -> int:
    return 1 if obj in obs["flags"] and obj not in last["flags"] else 0

def _cmp_backpack(obj: str, obs: dict, last: dict) -> int:
    return 1 if obs["inventory_capacity"] > last["inventory_capacity"] else 0

def _cmp_break(obj: str, obs: dict, last: dict) -> int:
    return _ledger_delta("processed", obj, obs, last)

def _cmp_quit(obj: str, obs: dict, last: dict) -> int:
    return _counter_delta("quests_cancelled", obs, last)

def _cmp_reward(obj: str, obs: dict, last: dict) -> int:
    return _counter_delta("rewards_claimed", obs, last)

def _cmp_complete_help(obj: str, obs: dict, last: dict) -> int:
    return _counter_delta("help_completed", obs, last)

def _cmp_complete_story(obj: str, obs: dict, last: dict) -> int:
    return 1 if obj in obs["completed_story"] and obj not in last["completed_story"] else 0


REGISTRY = {
    "clear": _cmp_clear,
    "till": _cmp_till,
    "water": _cmp_water,
    "sow": _cmp_sow,
    "fertilize": _cmp_fertilize,
    "harvest": _cmp_harvest,
    "craft": _cmp_craft,
    "kill": _cmp_kill,
    "location": _cmp_location,
    "sell": _cmp_sell,
    "purchase": _cmp_purchase,
    "purchase_animal": _cmp_purchase_animal,
    "sell_animal": _cmp_sell_animal,
    "build": _cmp_build,
    "demolish": _cmp_demolish,
    "move": _cmp_move,
    "upgrade_tool": _cmp_upgrade_tool,
    "upgrade_farmhouse": _cmp_upgrade_farmhouse,
    "gift": _cmp_gift,
    "talk": _cmp_talk,
    "friendship": _cmp_friendship,
    "sleep": _cmp_sleep,
    "pet": _cmp_pet,
    "open": _cmp_open,
    "fill": _cmp_fill,
    "incubate": _cmp_incubate,
    "silo": _cmp_silo,
    "jojamart": _cmp_jojamart,
    "backpack": _cmp_backpack,
    "break": _cmp_break,
    "quit": _cmp_quit,
    "reward": _cmp_reward,
    "complete_help": _cmp_complete_help,
    "complete_story": _cmp_complete_story,
}

# Interpretation notes for keys whose exact diff semantics were not spelled
# out anywhere authoritative; each is one auditable rule.
EVALUATOR_DOCS = {
    "clear": "decrease in world count of the object kind (Debris = Weeds+Stone+Twig)",
    "harvest": "increase in inventory + shipped count: shipping does not erase progress",
    "sell": "increase in cumulative sold + shipped ledgers for the object",
    "silo": "interpretation: increase of hay stored in the silo",
    "jojamart": "interpretation: the named membership/project flag turned on",
    "backpack": "interpretation: 1 per inventory-capacity upgrade event",
    "break": "interpretation: cumulative geodes-processed ledger delta",
    "open": "interpretation: 1 per animal-door opening of the named building",
    "fill": "interpretation: 1 per fill event of the named receptacle",
    "incubate": "interpretation: 1 per hatched animal of the object type",
    "quit": "interpretation: 1 per quest abandoned from the quest log",
    "reward": "interpretation: 1 per quest reward claimed",
    "complete_help": "interpretation: 1 per help-wanted quest delivered",
    "complete_story": "interpretation: the story quest with the object id reached completion",
    "move": "interpretation: 1 per relocation of the named building type",
    "demolish": "interpretation: 1 per demolition of the named building type",
    "upgrade_farmhouse": "interpretation: 1 per farmhouse level increase",
    "pet": "interpretation: total pet events (any animal), once per animal per day",
}


def registered_evaluators() -> list[str]:
    return sorted(REGISTRY)


def compare(evaluator_type: str, obj: str, obs: dict, last_obs: dict) -> int:
    """Per-type progress between two projections; never negative."""
    try:
        rule = REGISTRY[evaluator_type]
    except KeyError:
        raise KeyError(f"unknown evaluator type: {evaluator_type!r}") from None
    return max(0, rule(obj, obs, last_obs))


@dataclass(slots=True)
class EvalConfig:
    evaluator_type: str
    obj: str
    quantity: int
    max_steps: int

    def to_dict(self) -> dict:
        return {
            "evaluator_type": self.evaluator_type,
            "object": self.obj,
            "quantity": self.quantity,
            "max_steps": self.max_steps,
        }


@dataclass(slots=True)
class EvalState:
    config: EvalConfig
    last_obs: dict | None = None
    current_quantity: int = 0
    completed: bool = False
    steps_used: int = 0


def evaluate(state: EvalState, obs: dict) -> dict:
    """One evaluation step; the first call primes last_obs and reports no
    progress.  completed never flips back to False."""
    if state.last_obs is None:
        state.last_obs = obs
        return {"completed": False, "current_quantity": 0}
    change = compare(state.config.evaluator_type, state.config.obj, obs, state.last_obs)
    state.last_obs = obs
    state.current_quantity += change
    if state.current_quantity >= state.config.quantity:
        state.completed = True
    return {"completed": state.completed, "current_quantity": state.current_quantity}
