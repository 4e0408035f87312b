#!/usr/bin/env python3
"""A guided tour of the simulation core: load a save, act in the world,
watch the clock, and sleep into the next day.

Run with: python demos/01_world_basics.py
"""

from valleybench import execute, init_world, parse_action

world = init_world("save_new", seed=7)
print(f"Woke up on {world.clock.season.value} {world.clock.day_of_season}, "
      f"{world.clock.formatted()}, with {world.player.energy:.0f} energy "
      f"and {world.player.money}g.")

def act(source: str) -> None:
    global world
    world, result = execute(world, parse_action(source))
    mark = "ok" if result.ok else "!!"
    print(f"  [{mark}] {source:45s} {result.message}")

# Till a patch of the field and water it.
act("choose_item(slot_index=0)")           # hoe
act("move(x=10, y=7)")
act('use(direction="down")')
act("choose_item(slot_index=1)")           # watering can
act('use(direction="down")')
print(f"Time is now {world.clock.formatted()} "
      f"(every tool swing costs one 10-minute tick).")

# Clear a weed for fiber.
act("choose_item(slot_index=4)")           # scythe
act("move(x=16, y=14)")
act('use(direction="down")')
print(f"Fiber in inventory: {world.player.find_item('Fiber')}")

# Walk east to the bus stop and back (exits are interacted with, like doors).
act("move(x=28, y=10)")
act('interact(direction="right")')
print(f"Now standing in {world.player.map_id} at {world.player.position}.")
act('interact(direction="left")')

# Head home and go to bed.
act("move(x=4, y=5)")
act('interact(direction="up")')            # through the farmhouse door
act("move(x=9, y=3)")
act('interact(direction="up")')            # bed prompt
act("choose_option(option_index=0)")       # yes
print(f"Good morning: day {world.clock.day_of_season}, {world.clock.formatted()}, "
      f"energy {world.player.energy:.0f}, weather {world.weather}.")
