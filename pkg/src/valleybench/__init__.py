"""ValleyBench: a deterministic production-living simulation benchmark.

The package provides a headless tile-world simulation (farming, crafting,
exploration, combat, social play), a ten-action agent interface with dual
visual + textual observations, a YAML task format with incremental
evaluation, and a per-instance socket protocol for parallel stepping.
"""

from valleybench.clock import GameClock, Season
from valleybench.world import WorldState, init_world
from valleybench.actions import Action, parse_action, print_action
from valleybench.mechanics import execute
from valleybench.observe import text_observation
from valleybench.render import render_visual
from valleybench.tasks import TaskSpec, load_builtin_suite, parse_task_suite, setup_task
from valleybench.evaluator import EvalState, evaluate, compare

__version__ = "0.1.0"

__all__ = [
    "GameClock",
    "Season",
    "WorldState",
    "init_world",
    "Action",
    "parse_action",
    "print_action",
    "execute",
    "text_observation",
    "render_visual",
    "TaskSpec",
    "parse_task_suite",
    "load_builtin_suite",
    "setup_task",
    "EvalState",
    "evaluate",
    "compare",
    "__version__",
]
