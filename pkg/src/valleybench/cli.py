"""Command line interface: serve, run, replay, play, report."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from valleybench.actions import MalformedActionError, parse_action
from valleybench.harness import (
    load_records,
    replay_record,
    run_suite,
)
from valleybench.instance import EnvInstance, InstanceConfig, ObservationConfig
from valleybench.report import report as render_report
from valleybench.harness import aggregate
from valleybench.protocol import InstanceServer
from valleybench.tasks import load_builtin_suite, parse_task_suite


def _load_suite(suite_path: str | None, pack: str):
    if suite_path:
        return parse_task_suite(Path(suite_path).read_text(encoding="utf-8"), pack)
    return load_builtin_suite(pack)


def _instance_config(seed: int, mode: str, window: int, width: int, height: int,
                     realtime: bool, navigate: bool, pack: str) -> InstanceConfig:
    return InstanceConfig(
        seed=seed,
        realtime=realtime,
        navigate_enabled=navigate,
        pack_name=pack,
        observation=ObservationConfig(mode=mode, window=window, width=width, height=height),
    )


@click.group()
def main() -> None:
    """ValleyBench: deterministic production-living benchmark tools."""


@main.command()
@click.option("--port", default=5000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--suite", "suite_path", default=None, help="Task suite YAML (defaults to the shipped pack).")
@click.option("--mode", default="both", type=click.Choice(["both", "image_only", "text_only"]), show_default=True)
@click.option("--window", default=3, show_default=True, help="Surrounding-blocks radius n for a (2n+1)^2 window.")
@click.option("--width", default=1280, show_default=True)
@click.option("--height", default=720, show_default=True)
@click.option("--realtime", is_flag=True, help="Advance the in-game clock with wall time between requests.")
@click.option("--navigate", is_flag=True, help="Enable the navigate action (off by default).")
@click.option("--pack", default="valleylite", show_default=True)
def serve(port, host, seed, suite_path, mode, window, width, height, realtime, navigate, pack) -> None:
    """Serve one environment instance on a port (one instance per port)."""
    suite = _load_suite(suite_path, pack)
    config = _instance_config(seed, mode, window, width, height, realtime, navigate, pack)
    try:
        server = InstanceServer(port=port, host=host, config=config, suite=suite)
    except OSError as exc:
        click.echo(f"cannot bind {host}:{port}: {exc}", err=True)
        sys.exit(1)
    click.echo(f"serving on {server.host}:{server.port} (pack={pack}, mode={mode}, realtime={realtime})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.stop()


@main.command()
@click.option("--suite", "suite_path", default=None)
@click.option("--agent", default="random", type=click.Choice(["random", "oracle"]), show_default=True)
@click.option("--repeats", default=3, show_default=True)
@click.option("--parallelism", default=1, show_default=True)
@click.option("--base-seed", default=0, show_default=True)
@click.option("--task", "tasks", multiple=True, help="Restrict to specific tasks (repeatable).")
@click.option("--mode", default="text_only", type=click.Choice(["both", "image_only", "text_only"]), show_default=True)
@click.option("--window", default=3, show_default=True)
@click.option("--width", default=1280, show_default=True)
@click.option("--height", default=720, show_default=True)
@click.option("--realtime", is_flag=True)
@click.option("--navigate", is_flag=True)
@click.option("--log-observations", is_flag=True,
              help="Store full observation payloads in trajectory logs instead of digests.")
@click.option("--out", "out_dir", default="runs", show_default=True)
@click.option("--format", "fmt", default="markdown", type=click.Choice(["markdown", "csv"]), show_default=True)
@click.option("--pack", default="valleylite", show_default=True)
def run(suite_path, agent, repeats, parallelism, base_seed, tasks, mode, window, width, height,
        realtime, navigate, log_observations, out_dir, fmt, pack) -> None:
    """Run the benchmark suite and write records, logs and a report."""
    suite = _load_suite(suite_path, pack)
    config = _instance_config(base_seed, mode, window, width, height, realtime, navigate, pack)
    table, records = run_suite(
        suite,
        agent_kind=agent,
        repeats=repeats,
        parallelism=parallelism,
        base_seed=base_seed,
        out_dir=Path(out_dir),
        instance_config=config,
        tasks=list(tasks) or None,
        pack_name=pack,
        log_full_observations=log_observations,
    )
    document = render_report(table, fmt)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report_path = out / ("report.md" if fmt == "markdown" else "report.csv")
    report_path.write_text(document, encoding="utf-8")
    click.echo(document)
    completed = sum(1 for r in records if r.completed)
    click.echo(f"\n{completed}/{len(records)} runs completed; records in {out / 'runrecords.jsonl'}")


@main.command()
@click.option("--records", "records_path", default="runs/runrecords.jsonl", show_default=True)
@click.option("--task", default=None, help="Replay only this task's records.")
@click.option("--suite", "suite_path", default=None)
@click.option("--pack", default="valleylite", show_default=True)
def replay(records_path, task, suite_path, pack) -> None:
    """Re-run logged action sequences and verify identical outcomes."""
    suite = _load_suite(suite_path, pack)
    records = load_records(Path(records_path))
    if task:
        records = [r for r in records if r.task == task]
    if not records:
        click.echo("no records to replay", err=True)
        sys.exit(1)
    failures = 0
    for record in records:
        if not record.log_path or not Path(record.log_path).exists():
            click.echo(f"SKIP {record.task} seed={record.seed}: no trajectory log")
            continue
        _, match = replay_record(record, suite)
        status = "OK" if match else "MISMATCH"
        if not match:
            failures += 1
        click.echo(f"{status} {record.task} seed={record.seed}")
    sys.exit(1 if failures else 0)


@main.command()
@click.argument("task")
@click.option("--seed", default=0, show_default=True)
@click.option("--suite", "suite_path", default=None)
@click.option("--window", default=3, show_default=True)
@click.option("--pack", default="valleylite", show_default=True)
def play(task, seed, suite_path, window, pack) -> None:
    """Interactive terminal session: type action strings, watch progress."""
    suite = _load_suite(suite_path, pack)
    config = _instance_config(seed, "text_only", window, 1280, 720, False, False, pack)
    instance = EnvInstance(config=config, suite=suite)
    response = instance.reset(task, seed)
    click.echo(f"Task: {task} (budget {response['max_steps']} steps)")
    _print_text_obs(response["observation"]["text"])
    while True:
        try:
            line = click.prompt("action(s)", default="", show_default=False)
        except (EOFError, KeyboardInterrupt, click.Abort):
            click.echo("bye")
            return
        actions = [part.strip() for part in line.split(";") if part.strip()]
        if not actions:
            continue
        if len(actions) > 2:
            click.echo("at most 2 actions per step")
            continue
        try:
            for source in actions:
                parse_action(source)
        except MalformedActionError as exc:
            click.echo(f"parse error: {exc}")
            continue
        response = instance.step(actions)
        for result in response["results"]:
            click.echo(f"  [{'ok' if result['ok'] else 'fail'}] {result['message']}")
        _print_text_obs(response["observation"]["text"])
        eval_result = response["eval"]
        click.echo(
            f"progress: {eval_result['current_quantity']} "
            f"(completed={eval_result['completed']}) "
            f"steps {response['steps_used']}/{response['max_steps']}"
        )
        if response["done"]:
            click.echo(f"done: completed={eval_result['completed']}")
            sys.exit(0 if eval_result["completed"] else 1)


def _print_text_obs(obs: dict) -> None:
    click.echo(
        f"[{obs['current_time']} {obs['season']} {obs['day']}] {obs['location']} "
        f"{tuple(obs['position'])} hp={obs['health']} energy={obs['energy']:.0f} "
        f"money={obs['money']} holding={obs['item_in_hand']['currentitem']}"
    )
    menu = obs["current_menu"]
    if menu["type"] != "none":
        click.echo(f"menu[{menu['type']}]: {menu['message']}")
        for option in menu.get("options", []):
            click.echo(f"  {option['index']}: {option['label']}")
        for option in menu.get("out_options", []):
            click.echo(f"  out {option['index']}: {option['label']}")
    nearby = [
        block for block in obs["surrounding_blocks"]
        if block["position"] != [0, 0] and len(block["object"]) > 3
    ]
    for block in nearby[:10]:
        click.echo(f"  {tuple(block['position'])}: {'; '.join(block['object'][3:])}")


@main.command("report")
@click.option("--records", "records_path", default="runs/runrecords.jsonl", show_default=True)
@click.option("--repeats", default=3, show_default=True)
@click.option("--base-seed", default=0, show_default=True)
@click.option("--format", "fmt", default="markdown", type=click.Choice(["markdown", "csv"]), show_default=True)
def report_cmd(records_path, repeats, base_seed, fmt) -> None:
    """Rebuild the results table from run records."""
    records = load_records(Path(records_path))
    table = aggregate(records, repeats=repeats, base_seed=base_seed)
    click.echo(render_report(table, fmt))


if __name__ == "__main__":
    main()
