"""Baseline agents: seeded random, scripted oracles, and an LLM adapter.

The LLM side is an interface so tests run against recorded completions; no
vendor client is baked in.
"""

from __future__ import annotations

import random
from pathlib import Path
from typing import Protocol

import yaml

from valleybench_sdk.actions import ActionParseError, parse_actions
from valleybench_sdk.client import EpisodeHandle
from valleybench_sdk.prompts import PromptContext, build_prompt


def scripted_oracle(task_name: str, scripts_path: str | Path) -> list[str]:
    """Load the deterministic action script for a task from an oracle data
    file (a YAML mapping of task name to action-string list)."""
    data = yaml.safe_load(Path(scripts_path).read_text(encoding="utf-8")) or {}
    if task_name not in data:
        raise KeyError(f"no oracle script for task {task_name!r}")
    return list(data[task_name])


class ScriptedAgent:
    """Replays a fixed script, two actions per step."""

    def __init__(self, script: list[str], per_step: int = 2):
        self.script = list(script)
        self.per_step = per_step
        self._cursor = 0

    def act(self, episode: EpisodeHandle) -> list[str]:
        if self._cursor >= len(self.script):
            return ['menu(option="close", menu_name="map")']
        chunk = self.script[self._cursor:self._cursor + self.per_step]
        self._cursor += len(chunk)
        return chunk

    def run(self, episode: EpisodeHandle) -> EpisodeHandle:
        while not episode.done:
            episode.step(self.act(episode))
        return episode


class RandomAgent:
    """Uniform-ish action babbling, reproducible from its seed."""

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def act(self, episode: EpisodeHandle) -> list[str]:
        return [self._one() for _ in range(self.rng.randint(1, 2))]

    def _one(self) -> str:
        rng = self.rng
        roll = rng.random()
        direction = rng.choice(["up", "right", "down", "left"])
        if roll < 0.5:
            return f"move(x={rng.randint(1, 28)}, y={rng.randint(1, 18)})"
        if roll < 0.7:
            return f'use(direction="{direction}")'
        if roll < 0.9:
            return f'interact(direction="{direction}")'
        return f"choose_item(slot_index={rng.randint(0, 11)})"


class LLMClient(Protocol):
    """Anything that maps (prompt text, images) to a completion string."""

    def complete(self, prompt: str, images: list[bytes]) -> str:  # pragma: no cover - protocol
        ...


class RecordedLLM:
    """Deterministic fake that replays canned completions; used in tests and
    offline development."""

    def __init__(self, completions: list[str]):
        self._completions = list(completions)
        self.prompts: list[str] = []
        self._cursor = 0

    def complete(self, prompt: str, images: list[bytes]) -> str:
        self.prompts.append(prompt)
        if self._cursor >= len(self._completions):
            raise RuntimeError("recorded completions exhausted")
        completion = self._completions[self._cursor]
        self._cursor += 1
        return completion


class LLMAgent:
    """Prompt-render / complete / parse loop around an LLMClient.

    Keeps one step of history: the previous action and the previous image
    are carried into the next prompt.
    """

    def __init__(self, llm: LLMClient, task_description: str):
        self.llm = llm
        self.task_description = task_description
        self.pre_action = "none"
        self.previous_image: bytes | None = None

    def act(self, episode: EpisodeHandle) -> list[str]:
        observation = episode.observation
        current_image = None
        image_record = observation.get("image")
        if image_record is not None:
            import base64

            current_image = base64.b64decode(image_record["data"])
        ctx = PromptContext.from_observation(
            self.task_description,
            observation,
            pre_action=self.pre_action,
            current_image=current_image,
            previous_image=self.previous_image,
        )
        prompt, images = build_prompt(ctx)
        completion = self.llm.complete(prompt, images)
        try:
            actions = parse_actions(completion)
        except ActionParseError:
            actions = ['menu(option="close", menu_name="map")']
        self.pre_action = "; ".join(actions)
        self.previous_image = current_image
        return actions

    def run(self, episode: EpisodeHandle) -> EpisodeHandle:
        while not episode.done:
            episode.step(self.act(episode))
        return episode
