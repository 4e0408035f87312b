"""Task suites: parsing, validation and world setup.

A suite is YAML mapping category names to task entries; the entry key is the
task name and doubles as the agent-facing prompt.  Setup loads the task's
save snapshot and replays its init_commands through the simulator-API
interpreter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml

from valleybench.content import load_content_pack
from valleybench.evaluator import EvalConfig, REGISTRY as EVALUATOR_REGISTRY
from valleybench.simcmd import SimCommandError, parse_sim_command, run_commands
from valleybench.state import WorldState
from valleybench.world import init_world

CATEGORIES = ("Farming", "Crafting", "Exploration", "Combat", "Social")
MAX_STEPS = {"easy": 30, "medium": 50, "hard": 150}


class TaskError(ValueError):
    """Malformed task suite or failing task setup."""


@dataclass(slots=True)
class TaskSpec:
    name: str
    task_id: int
    category: str
    obj: str
    quantity: int
    tool: list[str]
    save: str
    init_commands: list[str]
    evaluator: str
    difficulty: str

    @property
    def max_steps(self) -> int:
        return MAX_STEPS[self.difficulty]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "id": self.task_id,
            "category": self.category,
            "object": self.obj,
            "quantity": self.quantity,
            "tool": list(self.tool),
            "save": self.save,
            "init_commands": list(self.init_commands),
            "evaluator": self.evaluator,
            "difficulty": self.difficulty,
        }


@dataclass(slots=True)
class TaskSuite:
    tasks: dict[str, TaskSpec] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.tasks)

    def __iter__(self):
        return iter(self.tasks.values())

    def get(self, name: str) -> TaskSpec:
        try:
            return self.tasks[name]
        except KeyError:
            raise TaskError(f"unknown task: {name!r}") from None

    def by_category(self) -> dict[str, list[TaskSpec]]:
        grouped: dict[str, list[TaskSpec]] = {}
        for task in self.tasks.values():
            grouped.setdefault(task.category, []).append(task)
        return grouped

    def evaluator_types(self) -> set[str]:
        return {task.evaluator for task in self.tasks.values()}


def parse_task_suite(source: str | dict, pack_name: str = "valleylite") -> TaskSuite:
    """Parse and validate a suite from YAML text or an already-loaded dict."""
    if isinstance(source, str):
        data = yaml.safe_load(source)
    else:
        data = source
    if not isinstance(data, dict):
        raise TaskError("suite must be a mapping of categories")
    pack = load_content_pack(pack_name)
    known_saves = set(pack.scenarios)

    suite = TaskSuite()
    for category, entries in data.items():
        if category not in CATEGORIES:
            raise TaskError(f"unknown category: {category!r}")
        if not entries:
            continue
        seen_ids: set[int] = set()
        for name, spec in entries.items():
            if name in suite.tasks:
                raise TaskError(f"duplicate task name: {name!r}")
            task_id = spec.get("id")
            if task_id in seen_ids:
                raise TaskError(f"duplicate id {task_id} in {category}")
            seen_ids.add(task_id)
            evaluator = spec.get("evaluator")
            if evaluator not in EVALUATOR_REGISTRY:
                raise TaskError(f"{name}: unknown evaluator {evaluator!r}")
            save = spec.get("save")
            if save not in known_saves:
                raise TaskError(f"{name}: unknown save {save!r}")
            difficulty = spec.get("difficulty")
            if difficulty not in MAX_STEPS:
                raise TaskError(f"{name}: unknown difficulty {difficulty!r}")
            quantity = spec.get("quantity", 1)
            if not isinstance(quantity, int) or quantity < 1:
                raise TaskError(f"{name}: quantity must be a positive integer")
            init_commands = list(spec.get("init_commands") or ())
            for command in init_commands:
                try:
                    parse_sim_command(command)
                except SimCommandError as exc:
                    raise TaskError(f"{name}: bad init command {command!r}: {exc}") from exc
            tool = spec.get("tool")
            if tool is None:
                tool = []
            elif isinstance(tool, str):
                tool = [part.strip() for part in tool.split(",") if part.strip()]
            suite.tasks[name] = TaskSpec(
                name=name,
                task_id=task_id,
                category=category,
                obj=str(spec.get("object", "")),
                quantity=quantity,
                tool=tool,
                save=save,
                init_commands=init_commands,
                evaluator=evaluator,
                difficulty=difficulty,
            )
    return suite


def load_builtin_suite(pack_name: str = "valleylite") -> TaskSuite:
    pack = load_content_pack(pack_name)
    path = pack.pack_dir / "tasks.yaml"
    return parse_task_suite(path.read_text(encoding="utf-8"), pack_name)


def setup_task(spec: TaskSpec, seed: int, pack_name: str = "valleylite") -> tuple[WorldState, EvalConfig]:
    """Build the task's starting world: load the save, then run every
    init command in order.  A failing command aborts setup."""
    world = init_world(spec.save, seed, pack_name)
    world = run_commands(world, spec.init_commands)
    config = EvalConfig(
        evaluator_type=spec.evaluator,
        obj=spec.obj,
        quantity=spec.quantity,
        max_steps=spec.max_steps,
    )
    return world, config


def load_oracle_scripts(pack_name: str = "valleylite") -> dict[str, list[str]]:
    """Hand-authored per-task action scripts shipped beside the suite."""
    pack = load_content_pack(pack_name)
    path = pack.pack_dir / "oracles.yaml"
    if not path.exists():
        return {}
    data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    return {name: list(script or ()) for name, script in data.items()}
