#!/usr/bin/env python3
"""Run a slice of the benchmark with the scripted oracles and the random
baseline, then print the aggregated results table.

Run with: python demos/05_benchmark_run.py
"""

from valleybench.harness import run_suite
from valleybench.report import report
from valleybench.tasks import load_builtin_suite

suite = load_builtin_suite()
sample = [
    "clear_10_weeds_with_scythe",
    "craft_1_wood_fence",
    "go_to_bus_stop",
    "kill_1_bug_with_rusty_sword",
    "ship_1_parsnip_with_shipping_bin",
    "kill_1_duggy_with_rusty_sword",
    "craft_1_furnace",
    "cultivate_and_harvest_1_garlic",
]

print("oracle agent, 3 repeats, 4-way parallel:")
table, records = run_suite(suite, agent_kind="oracle", repeats=3, parallelism=4, tasks=sample)
print(report(table, "markdown"))
print()

print("random agent on the same tasks:")
table, records = run_suite(suite, agent_kind="random", repeats=3, parallelism=4, tasks=sample)
print(report(table, "markdown"))
mean, std = table.cell("total", "Total")
print(f"\nrandom baseline total: {mean:.1f}% +/- {std:.1f}")
