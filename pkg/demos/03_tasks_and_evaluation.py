#!/usr/bin/env python3
"""Tasks and incremental evaluation: load the shipped suite, set a task up,
and watch the evaluator accumulate progress step by step.

Run with: python demos/03_tasks_and_evaluation.py
"""

from valleybench import execute, parse_action, setup_task
from valleybench.evaluator import EvalState, evaluate, project_observation
from valleybench.tasks import load_builtin_suite, load_oracle_scripts

suite = load_builtin_suite()
print(f"shipped suite: {len(suite)} tasks across {sorted(suite.by_category())}")
print(f"evaluator types covered: {len(suite.evaluator_types())}")

spec = suite.get("clear_10_weeds_with_scythe")
print(f"\ntask: {spec.name} (object={spec.obj}, quantity={spec.quantity}, "
      f"budget={spec.max_steps} steps)")

world, config = setup_task(spec, seed=0)
state = EvalState(config=config)

# The first evaluation only primes the stored observation.
print("first evaluate:", evaluate(state, project_observation(world)))

script = load_oracle_scripts()[spec.name]
for index in range(0, len(script), 2):
    chunk = script[index:index + 2]
    for source in chunk:
        world, _ = execute(world, parse_action(source))
    result = evaluate(state, project_observation(world))
    print(f"after {chunk}: {result}")
    if result["completed"]:
        break
