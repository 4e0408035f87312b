"""SDK acceptance: protocol round-trip parity with the in-process harness,
and the prompt/parser contract."""

from __future__ import annotations

from pathlib import Path

import pytest
import yaml

from valleybench_sdk import EnvClient, RecordedLLM, LLMAgent, ScriptedAgent, scripted_oracle
from valleybench_sdk.actions import parse_actions
from valleybench_sdk.prompts import PromptContext, build_prompt, template_placeholders


def _line(ok: bool, label: str, detail: str = "") -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))


def _oracle_path() -> Path:
    import valleybench

    return Path(valleybench.__file__).parent / "data" / "valleylite" / "oracles.yaml"


def test_sdk_round_trip_matches_in_process_harness(server):
    """A scripted episode through the SDK socket client produces the same
    run record fields and per-step evaluations as the in-process harness."""
    from valleybench.harness import ScriptedAgent as InProcScripted, run_task
    from valleybench.tasks import load_builtin_suite

    task_names = ["clear_30_debris_with_scythe_and_pickaxe_and_axe", "harvest_5_parsnip"]
    suite = load_builtin_suite()
    host, port = server
    checked = 0
    for task_name in task_names:
        script = scripted_oracle(task_name, _oracle_path())
        spec = suite.get(task_name)
        reference = run_task(spec, InProcScripted(script), seed=1)

        with EnvClient(host, port) as client:
            episode = client.reset(task_name, 1)
            evals = [episode.eval_result]
            agent = ScriptedAgent(script)
            while not episode.done:
                episode.step(agent.act(episode))
                evals.append(episode.eval_result)

        assert episode.steps_used == reference.steps_used
        assert episode.completed == reference.completed
        assert episode.current_quantity == reference.current_quantity
        checked += 1
    _line(True, "sdk round trip", f"{checked} scripted episodes match the in-process harness")


def test_sdk_observation_stream_identical_to_harness_log(server, tmp_path):
    from valleybench.harness import run_suite
    from valleybench.instance import observation_digest
    from valleybench.tasks import load_builtin_suite
    import json

    suite = load_builtin_suite()
    task_name = "clear_10_weeds_with_scythe"
    _, records = run_suite(suite, agent_kind="oracle", repeats=1, base_seed=2,
                           out_dir=tmp_path, tasks=[task_name])
    log_lines = Path(records[0].log_path).read_text().splitlines()
    logged = [json.loads(line)["observation_digest"] for line in log_lines]

    script = scripted_oracle(task_name, _oracle_path())
    host, port = server
    with EnvClient(host, port) as client:
        episode = client.reset(task_name, 2)
        digests = [observation_digest(episode.observation)]
        agent = ScriptedAgent(script)
        while not episode.done:
            episode.step(agent.act(episode))
            digests.append(observation_digest(episode.observation))
    ok = digests == logged
    _line(ok, "sdk observation stream", f"{len(digests)} digests identical")
    assert ok


def test_prompt_binds_every_template_placeholder():
    ctx = PromptContext(
        task_description="till_5_tile_with_hoe",
        health=100, energy=270, money=2000, time="06:00 AM", day=1, season="spring",
        chosen_item={"index": 0, "currentitem": "Hoe"},
        toolbar_information=["slot_index 0: [Hoe] (quantity: 1)"],
        current_menu={"type": "none"},
        surroundings=[],
        skill_library=["move(x, y)"],
        pre_action="none",
    )
    text, _ = build_prompt(ctx)
    unresolved = [name for name in template_placeholders() if f"<${name}$>" in text]
    _line(not unresolved, "prompt contract", f"{len(template_placeholders())} placeholders bound")
    assert unresolved == []


def test_parser_contract_on_recorded_fixtures():
    fixtures = yaml.safe_load(
        (Path(__file__).parent / "fixtures" / "completions.yaml").read_text(encoding="utf-8")
    )
    assert len(fixtures) == 20
    failures = []
    truncation_seen = False
    for fixture in fixtures:
        if fixture["name"] == "three_actions_truncated":
            truncation_seen = True
            with pytest.warns(UserWarning):
                actions = parse_actions(fixture["completion"])
        else:
            actions = parse_actions(fixture["completion"])
        if actions != fixture["expected"] or len(actions) > 2:
            failures.append(fixture["name"])
    ok = not failures and truncation_seen
    _line(ok, "parser contract", f"20 fixtures, {len(failures)} failures, truncation case included")
    assert failures == []
    assert truncation_seen


def test_llm_agent_drives_episode_with_recorded_completions(server):
    host, port = server
    completions = [
        "Reasoning:\n1. Move toward the exit first.\nActions:\n```python\nmove(x=28, y=10)\n```",
        "Reasoning:\n1. The exit tile is to my right.\nActions:\n```python\ninteract(direction=\"right\")\n```",
    ]
    llm = RecordedLLM(completions)
    with EnvClient(host, port) as client:
        episode = client.reset("go_to_bus_stop", 0)
        agent = LLMAgent(llm, task_description="go_to_bus_stop")
        while not episode.done:
            episode.step(agent.act(episode))
    assert episode.completed
    assert len(llm.prompts) == 2
    assert "go_to_bus_stop" in llm.prompts[0]
    # One-step history: the second prompt names the previously executed action.
    assert "move(x=28, y=10)" in llm.prompts[1]
