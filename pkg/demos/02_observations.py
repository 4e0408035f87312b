#!/usr/bin/env python3
"""The dual observation channel: the structured text record and the
schematic raster, and how resolution widens the field of view.

Run with: python demos/02_observations.py  (writes demo_frame.png)
"""

import json
from pathlib import Path

from valleybench import init_world, render_visual, text_observation
from valleybench.payload import serialize_observation
from valleybench.render import encode_png

world = init_world("save_farming", seed=1)

obs = text_observation(world, n=3)
print(f"{obs['current_time']} on {obs['season']} {obs['day']} at {obs['location']}")
print("item in hand:", obs["item_in_hand"])
print("first toolbar rows:")
for line in obs["toolbar"][:3]:
    print("   ", line)
print(f"surrounding blocks in the 7x7 window: {len(obs['surrounding_blocks'])}")
below = next(b for b in obs["surrounding_blocks"] if b["position"] == [0, 1])
print("the tile just below me:", below["object"])

# Resolution scaling is not a resize: more pixels means more visible tiles.
for width, height in ((640, 360), (1280, 720), (1920, 1080)):
    visual = render_visual(world, width, height)
    print(f"{width}x{height} -> {visual.tiles_x} x {visual.tiles_y} tiles in view")

frame = render_visual(world, 1280, 720)
Path("demo_frame.png").write_bytes(encode_png(frame.pixels))
print("wrote demo_frame.png")

# Payload modes for the wire protocol: text_only carries no image bytes.
payload = serialize_observation(obs, frame, mode="both")
print("payload keys in 'both' mode:", sorted(payload))
text_only = serialize_observation(obs, None, mode="text_only")
print("payload keys in 'text_only' mode:", sorted(text_only),
      "| bytes:", len(json.dumps(text_only)))
