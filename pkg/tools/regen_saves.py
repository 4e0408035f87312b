#!/usr/bin/env python3
"""Regenerate the shipped save snapshots from scenarios.yaml.

Run after editing scenario data; tests pin the snapshot bytes to the
builder output, so stale files fail fast.
"""

from __future__ import annotations

from valleybench.content import load_content_pack
from valleybench.world import build_scenario_world


def main(pack_name: str = "valleylite") -> None:
    pack = load_content_pack(pack_name)
    out = pack.pack_dir / "saves"
    out.mkdir(parents=True, exist_ok=True)
    for save_id in sorted(pack.scenarios):
        world = build_scenario_world(pack_name, save_id, 0)
        path = out / f"{save_id}.json"
        path.write_bytes(world.serialize())
        print(f"wrote {path} ({path.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
