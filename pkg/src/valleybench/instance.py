"""A single steppable environment instance.

The instance owns one WorldState plus one EvalState and advances only
inside reset/step calls: pause is a property of the construction, not a
frozen loop.  Real-time mode additionally converts wall-clock time elapsed
between requests into in-game minutes at the pack's day rate.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field

from valleybench.actions import MalformedActionError, parse_action
from valleybench.evaluator import EvalState, evaluate, project_observation
from valleybench.mechanics import execute
from valleybench.monsters import monster_ai_step
from valleybench.observe import text_observation
from valleybench.payload import serialize_observation
from valleybench.render import render_visual
from valleybench.tasks import TaskSuite, load_builtin_suite, setup_task
from valleybench.world import advance_minutes

MAX_ACTIONS_PER_STEP = 2


class InstanceError(Exception):
    """Protocol-level failure; the world is left untouched."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(slots=True)
class ObservationConfig:
    mode: str = "both"            # both | image_only | text_only
    window: int = 3               # 7x7 surroundings
    width: int = 1280
    height: int = 720
    include_map_info: bool = False


@dataclass(slots=True)
class InstanceConfig:
    seed: int = 0
    realtime: bool = False
    navigate_enabled: bool = False
    pack_name: str = "valleylite"
    observation: ObservationConfig = field(default_factory=ObservationConfig)


def observation_digest(payload: dict) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()


class EnvInstance:
    """One task episode at a time; strictly request-driven."""

    def __init__(self, config: InstanceConfig | None = None, suite: TaskSuite | None = None):
        self.config = config or InstanceConfig()
        self.suite = suite or load_builtin_suite(self.config.pack_name)
        self.world = None
        self.eval_state: EvalState | None = None
        self.task_name: str | None = None
        self.steps_used = 0
        self.done = False
        self._wall_mark: float | None = None
        self._minute_carry = 0.0
        self._wall_paused = False

    # -- configuration ------------------------------------------------------

    def configure(self, **settings) -> dict:
        obs = self.config.observation
        for key, value in settings.items():
            if key == "mode":
                if value not in ("both", "image_only", "text_only"):
                    raise InstanceError("bad_request", f"unknown observation mode {value!r}")
                obs.mode = value
            elif key == "window":
                obs.window = int(value)
            elif key == "width":
                obs.width = int(value)
            elif key == "height":
                obs.height = int(value)
            elif key == "include_map_info":
                obs.include_map_info = bool(value)
            elif key == "navigate_enabled":
                self.config.navigate_enabled = bool(value)
            elif key == "realtime":
                self.config.realtime = bool(value)
                if self.world is not None:
                    self.world.mode = "realtime" if self.config.realtime else "paused"
                self._wall_mark = time.monotonic()
                self._minute_carry = 0.0
            else:
                raise InstanceError("bad_request", f"unknown configure key {key!r}")
        return {"configured": sorted(settings)}

    # -- realtime clock -----------------------------------------------------

    def _realtime_rate(self) -> float:
        cfg = self.world.pack.config
        return cfg["realtime_game_minutes"] / cfg["realtime_wall_seconds"]

    def _apply_wall_clock(self) -> None:
        """Convert wall time since the last request into in-game minutes."""
        if not self.config.realtime or self.world is None or self.done or self._wall_paused:
            return
        now = time.monotonic()
        if self._wall_mark is None:
            self._wall_mark = now
            return
        elapsed = now - self._wall_mark
        self._wall_mark = now
        self._minute_carry += elapsed * self._realtime_rate()
        whole = int(self._minute_carry)
        self._minute_carry -= whole
        for _ in range(whole):
            events = advance_minutes(self.world, 1)
            if any(e.kind == "passout" for e in events):
                continue
            if self.world.clock.minutes_since_6am % 10 == 0:
                self.world.total_ticks += 1
                monster_ai_step(self.world, 1)

    def pause(self) -> dict:
        self._apply_wall_clock()
        self._wall_paused = True
        return {"paused": True}

    def resume(self) -> dict:
        self._wall_paused = False
        self._wall_mark = time.monotonic()
        return {"paused": False}

    # -- episode ------------------------------------------------------------

    def reset(self, task_name: str, seed: int | None = None) -> dict:
        spec = self.suite.get(task_name)
        seed = self.config.seed if seed is None else seed
        world, eval_config = setup_task(spec, seed, self.config.pack_name)
        world.mode = "realtime" if self.config.realtime else "paused"
        self.world = world
        self.eval_state = EvalState(config=eval_config)
        self.task_name = task_name
        self.steps_used = 0
        self.done = False
        self._wall_mark = time.monotonic()
        self._minute_carry = 0.0
        # Algorithm start: the first evaluation only primes the stored
        # observation and reports no progress.
        eval_result = evaluate(self.eval_state, project_observation(world))
        return {
            "task": spec.to_dict(),
            "seed": seed,
            "observation": self._observation_payload(),
            "eval": eval_result,
            "steps_used": 0,
            "max_steps": spec.max_steps,
            "done": False,
        }

    def step(self, action_strings: list[str]) -> dict:
        if self.world is None or self.eval_state is None:
            raise InstanceError("no_task", "no task loaded; send reset first")
        if self.done:
            raise InstanceError("episode_done", "episode finished; send reset")
        if not isinstance(action_strings, list) or not 1 <= len(action_strings) <= MAX_ACTIONS_PER_STEP:
            raise InstanceError(
                "too_many_actions",
                f"step takes 1..{MAX_ACTIONS_PER_STEP} action strings",
            )
        self._apply_wall_clock()

        results = []
        for index, source in enumerate(action_strings):
            try:
                action = parse_action(source)
            except MalformedActionError as exc:
                results.append({
                    "ok": False,
                    "message": f"malformed action: {exc}",
                    "ticks_consumed": 0,
                    "events": [],
                    "action_index": index,
                    "error": "parse_error",
                })
                break
            self.world, result = execute(self.world, action, self.config.navigate_enabled)
            entry = result.to_dict()
            entry["action_index"] = index
            results.append(entry)

        self.steps_used += 1
        eval_result = evaluate(self.eval_state, project_observation(self.world))
        self.eval_state.steps_used = self.steps_used
        self.done = bool(eval_result["completed"]) or self.steps_used >= self.eval_state.config.max_steps
        return {
            "results": results,
            "observation": self._observation_payload(),
            "eval": eval_result,
            "steps_used": self.steps_used,
            "max_steps": self.eval_state.config.max_steps,
            "done": self.done,
        }

    def observe(self) -> dict:
        if self.world is None:
            raise InstanceError("no_task", "no task loaded; send reset first")
        self._apply_wall_clock()
        return {"observation": self._observation_payload()}

    def _observation_payload(self) -> dict:
        obs_cfg = self.config.observation
        text = None
        visual = None
        if obs_cfg.mode in ("both", "text_only"):
            text = text_observation(self.world, obs_cfg.window, obs_cfg.include_map_info)
        if obs_cfg.mode in ("both", "image_only"):
            visual = render_visual(self.world, obs_cfg.width, obs_cfg.height)
        return serialize_observation(text, visual, obs_cfg.mode)
