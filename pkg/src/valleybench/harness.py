"""Benchmark harness: drives agents over instances, enforces step budgets,
aggregates success rates and writes replayable run records.

Each run gets a fresh, fully isolated instance; parallelism is a thread pool
over runs with zero shared mutable state, so results are independent of the
worker count.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from valleybench.instance import EnvInstance, InstanceConfig, ObservationConfig, observation_digest
from valleybench.rng import Rng
from valleybench.tasks import TaskSpec, TaskSuite, load_oracle_scripts

DIFFICULTY_ROWS = ("easy", "medium", "hard")
CATEGORY_COLUMNS = ("Farming", "Crafting", "Exploration", "Combat", "Social")


class Agent:
    """Agent interface for the harness: emits 1-2 action strings per step."""

    def begin(self, task: dict, observation: dict) -> None:  # pragma: no cover - hook
        pass

    def act(self, observation: dict, last_results: list[dict], eval_result: dict) -> list[str]:
        raise NotImplementedError


class ScriptedAgent(Agent):
    """Replays a fixed action list, two actions per step, then idles."""

    def __init__(self, script: list[str], per_step: int = 2):
        self.script = list(script)
        self.per_step = per_step
        self._cursor = 0

    def begin(self, task: dict, observation: dict) -> None:
        self._cursor = 0

    def act(self, observation: dict, last_results: list[dict], eval_result: dict) -> list[str]:
        if self._cursor >= len(self.script):
            return ['menu(option="close", menu_name="map")']
        chunk = self.script[self._cursor:self._cursor + self.per_step]
        self._cursor += len(chunk)
        return chunk


class RandomAgent(Agent):
    """Seeded random baseline over the full action grammar."""

    def __init__(self, seed: int = 0):
        self.rng = Rng.from_seed(seed)

    def act(self, observation: dict, last_results: list[dict], eval_result: dict) -> list[str]:
        return [self._random_action() for _ in range(self.rng.randint(1, 2))]

    def _random_action(self) -> str:
        rng = self.rng
        roll = rng.random()
        direction = rng.choice(["up", "right", "down", "left"])
        if roll < 0.45:
            dx, dy = rng.randint(-6, 6), rng.randint(-6, 6)
            return f"move(x={dx + 15}, y={dy + 10})"
        if roll < 0.65:
            return f'use(direction="{direction}")'
        if roll < 0.85:
            return f'interact(direction="{direction}")'
        if roll < 0.92:
            return f"choose_item(slot_index={rng.randint(0, 11)})"
        if roll < 0.97:
            return f"choose_option(option_index={rng.randint(0, 3)})"
        return 'menu(option="close", menu_name="map")'


class OracleAgent(ScriptedAgent):
    """Scripted oracle loaded from the pack's oracle data files."""

    def __init__(self, task_name: str, pack_name: str = "valleylite"):
        scripts = load_oracle_scripts(pack_name)
        if task_name not in scripts:
            raise KeyError(f"no oracle script for task {task_name!r}")
        super().__init__(scripts[task_name])


@dataclass(slots=True)
class RunRecord:
    task: str
    category: str
    difficulty: str
    seed: int
    steps_used: int
    completed: bool
    current_quantity: int
    wall_time: float
    log_path: str = ""

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "category": self.category,
            "difficulty": self.difficulty,
            "seed": self.seed,
            "steps_used": self.steps_used,
            "completed": self.completed,
            "current_quantity": self.current_quantity,
            "wall_time": self.wall_time,
            "log_path": self.log_path,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunRecord":
        return cls(**data)


@dataclass(slots=True)
class ResultsTable:
    """Mean success % and sample std per (difficulty x category) plus totals.

    The std is computed over repeat-level success rates: repeat r's rate for a
    cell is the fraction of that cell's tasks completed on run r.
    """

    cells: dict[tuple[str, str], tuple[float, float]] = field(default_factory=dict)
    repeats: int = 0

    def rows(self) -> list[str]:
        return [d.capitalize() for d in DIFFICULTY_ROWS] + ["Total"]

    def columns(self) -> list[str]:
        return list(CATEGORY_COLUMNS) + ["Total"]

    def cell(self, difficulty: str, category: str) -> tuple[float, float]:
        return self.cells.get((difficulty.lower(), category), (float("nan"), float("nan")))


def make_agent(kind: str, task_name: str, seed: int, pack_name: str = "valleylite") -> Agent:
    if kind == "random":
        return RandomAgent(seed=seed)
    if kind == "oracle":
        return OracleAgent(task_name, pack_name)
    raise ValueError(f"unknown agent kind {kind!r} (expected 'random' or 'oracle')")


def run_task(
    spec: TaskSpec,
    agent: Agent,
    seed: int,
    instance_config: InstanceConfig | None = None,
    log_path: Path | None = None,
    per_step_latency: float = 0.0,
    log_full_observations: bool = False,
) -> RunRecord:
    """Run one episode to completion or budget exhaustion.

    Trajectory logs hold observation digests by default to stay small;
    log_full_observations embeds the complete payloads instead.
    """
    config = instance_config or InstanceConfig(observation=ObservationConfig(mode="text_only"))
    instance = EnvInstance(config=config)

    def log_entry(step: int, actions: list[str], response: dict) -> dict:
        entry = {
            "step": step,
            "actions": actions,
            "eval": response["eval"],
            "observation_digest": observation_digest(response["observation"]),
        }
        if log_full_observations:
            entry["observation"] = response["observation"]
        return entry

    started = time.perf_counter()
    response = instance.reset(spec.name, seed)
    agent.begin(response["task"], response["observation"])
    log_entries = [log_entry(0, [], response)]
    results: list[dict] = []
    eval_result = response["eval"]
    observation = response["observation"]
    done = response["done"]
    steps = 0
    while not done:
        if per_step_latency > 0:
            time.sleep(per_step_latency)
        actions = agent.act(observation, results, eval_result)
        response = instance.step(actions)
        results = response["results"]
        eval_result = response["eval"]
        observation = response["observation"]
        done = response["done"]
        steps = response["steps_used"]
        log_entries.append(log_entry(steps, actions, response))
    wall = time.perf_counter() - started
    record = RunRecord(
        task=spec.name,
        category=spec.category,
        difficulty=spec.difficulty,
        seed=seed,
        steps_used=steps,
        completed=bool(eval_result["completed"]),
        current_quantity=int(eval_result["current_quantity"]),
        wall_time=wall,
    )
    if log_path is not None:
        log_path.parent.mkdir(parents=True, exist_ok=True)
        with open(log_path, "w", encoding="utf-8") as handle:
            for entry in log_entries:
                handle.write(json.dumps(entry, sort_keys=True) + "\n")
        record.log_path = str(log_path)
    return record


def run_suite(
    suite: TaskSuite,
    agent_kind: str = "random",
    repeats: int = 3,
    parallelism: int = 1,
    base_seed: int = 0,
    out_dir: Path | None = None,
    instance_config: InstanceConfig | None = None,
    tasks: list[str] | None = None,
    pack_name: str = "valleylite",
    log_full_observations: bool = False,
) -> tuple[ResultsTable, list[RunRecord]]:
    """Run every task `repeats` times; seed of repeat r is base_seed + r."""
    selected = [suite.get(name) for name in tasks] if tasks else list(suite)
    jobs = []
    for spec in selected:
        for repeat in range(repeats):
            jobs.append((spec, repeat))

    def one(job: tuple[TaskSpec, int]) -> RunRecord:
        spec, repeat = job
        seed = base_seed + repeat
        log_path = None
        if out_dir is not None:
            log_path = Path(out_dir) / "logs" / f"{spec.name}__seed{seed}.jsonl"
        config = instance_config
        if config is not None:
            config = InstanceConfig(
                seed=seed,
                realtime=instance_config.realtime,
                navigate_enabled=instance_config.navigate_enabled,
                pack_name=instance_config.pack_name,
                observation=replace(instance_config.observation),
            )
        try:
            agent = make_agent(agent_kind, spec.name, seed=seed, pack_name=pack_name)
            return run_task(spec, agent, seed, instance_config=config, log_path=log_path,
                            log_full_observations=log_full_observations)
        except Exception as exc:
            # A single broken run must not take down the suite; it is
            # reported as a failed record instead.
            return RunRecord(
                task=spec.name,
                category=spec.category,
                difficulty=spec.difficulty,
                seed=seed,
                steps_used=0,
                completed=False,
                current_quantity=0,
                wall_time=0.0,
                log_path=f"error: {type(exc).__name__}: {exc}",
            )

    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            records = list(pool.map(one, jobs))
    else:
        records = [one(job) for job in jobs]

    table = aggregate(records, repeats=repeats, base_seed=base_seed)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "runrecords.jsonl", "w", encoding="utf-8") as handle:
            for record in records:
                handle.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")
    return table, records


def aggregate(records: list[RunRecord], repeats: int, base_seed: int = 0) -> ResultsTable:
    """Recompute the table from run records (also used to audit reports)."""
    table = ResultsTable(repeats=repeats)
    by_cell: dict[tuple[str, str], dict[int, list[bool]]] = {}
    for record in records:
        repeat = record.seed - base_seed
        for key in [
            (record.difficulty, record.category),
            (record.difficulty, "Total"),
            ("total", record.category),
            ("total", "Total"),
        ]:
            by_cell.setdefault(key, {}).setdefault(repeat, []).append(record.completed)
    for key, per_repeat in by_cell.items():
        rates = [
            100.0 * sum(outcomes) / len(outcomes)
            for _, outcomes in sorted(per_repeat.items())
        ]
        mean = float(np.mean(rates))
        std = float(np.std(rates, ddof=1)) if len(rates) > 1 else 0.0
        table.cells[key] = (mean, std)
    return table


def load_records(path: Path) -> list[RunRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                records.append(RunRecord.from_dict(json.loads(line)))
    return records


def replay_record(record: RunRecord, suite: TaskSuite,
                  instance_config: InstanceConfig | None = None) -> tuple[RunRecord, bool]:
    """Re-run a record's logged actions; returns the fresh record and whether
    outcome, steps and observation digests all match the log."""
    spec = suite.get(record.task)
    log_path = Path(record.log_path)
    entries = [json.loads(line) for line in log_path.read_text(encoding="utf-8").splitlines() if line.strip()]
    script: list[str] = []
    for entry in entries[1:]:
        script.extend(entry["actions"])

    config = instance_config or InstanceConfig(observation=ObservationConfig(mode="text_only"))
    instance = EnvInstance(config=config)
    response = instance.reset(record.task, record.seed)
    digests = [observation_digest(response["observation"])]
    evals = [response["eval"]]
    done = response["done"]
    cursor = 0
    steps = 0
    per_step = [entry["actions"] for entry in entries[1:]]
    for actions in per_step:
        if done:
            break
        response = instance.step(actions)
        digests.append(observation_digest(response["observation"]))
        evals.append(response["eval"])
        done = response["done"]
        steps = response["steps_used"]
        cursor += 1
    fresh = RunRecord(
        task=record.task,
        category=record.category,
        difficulty=record.difficulty,
        seed=record.seed,
        steps_used=steps,
        completed=bool(evals[-1]["completed"]),
        current_quantity=int(evals[-1]["current_quantity"]),
        wall_time=0.0,
        log_path=record.log_path,
    )
    logged_digests = [entry["observation_digest"] for entry in entries]
    matches = (
        fresh.completed == record.completed
        and fresh.steps_used == record.steps_used
        and fresh.current_quantity == record.current_quantity
        and digests == logged_digests
    )
    return fresh, matches
