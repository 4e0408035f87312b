#!/usr/bin/env python3
"""Dev tool: run every oracle script against the engine and report failures
with enough state to fix the script or the content."""

from __future__ import annotations

import sys
import time

from valleybench.harness import ScriptedAgent, run_task
from valleybench.instance import EnvInstance, InstanceConfig, ObservationConfig
from valleybench.tasks import load_builtin_suite, load_oracle_scripts


def trace_one(task_name: str, seed: int) -> None:
    suite = load_builtin_suite()
    scripts = load_oracle_scripts()
    instance = EnvInstance(config=InstanceConfig(observation=ObservationConfig(mode="text_only")))
    response = instance.reset(task_name, seed)
    print(f"== {task_name} seed={seed} budget={response['max_steps']}")
    script = scripts[task_name]
    for index in range(0, len(script), 2):
        chunk = script[index:index + 2]
        if instance.done:
            break
        response = instance.step(chunk)
        world = instance.world
        for action, result in zip(chunk, response["results"]):
            status = "ok " if result["ok"] else "FAIL"
            print(f"  [{status}] {action} -> {result['message']}"
                  f"  @{world.player.map_id}{world.player.position} t={world.total_ticks}")
        ev = response["eval"]
        print(f"    eval: q={ev['current_quantity']} done={response['done']} steps={response['steps_used']}")
    print("  inventory:", [(i, s.name, s.quantity) for i, s in enumerate(instance.world.player.inventory) if s])
    if instance.world.menu.is_open:
        print("  menu:", instance.world.menu.kind,
              [o["label"] for o in instance.world.menu.options],
              "out:", [o["label"] for o in instance.world.menu.out_options])


def main() -> int:
    if len(sys.argv) > 1 and sys.argv[1] != "all":
        trace_one(sys.argv[1], int(sys.argv[2]) if len(sys.argv) > 2 else 0)
        return 0
    suite = load_builtin_suite()
    scripts = load_oracle_scripts()
    missing = [t.name for t in suite if t.name not in scripts]
    if missing:
        print("missing oracle scripts:", missing)
    started = time.perf_counter()
    failures = []
    for spec in suite:
        if spec.name not in scripts:
            continue
        for seed in (0, 1, 2):
            record = run_task(spec, ScriptedAgent(scripts[spec.name]), seed)
            if not record.completed:
                failures.append((spec.name, seed, record.steps_used, record.current_quantity))
                print(f"FAIL {spec.name} seed={seed} steps={record.steps_used} q={record.current_quantity}")
            elif seed == 0:
                print(f"ok   {spec.name} steps={record.steps_used}")
    elapsed = time.perf_counter() - started
    print(f"\n{len(failures)} failing (task,seed) pairs; wall {elapsed:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
