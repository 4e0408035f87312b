"""Result reporting: a markdown table shaped rows=difficulty+Total,
columns=categories+Total, each cell mean% +/- std, plus a CSV form that
parses back into the identical table."""

from __future__ import annotations

import csv
import io
import math

from valleybench.harness import CATEGORY_COLUMNS, DIFFICULTY_ROWS, ResultsTable


def _fmt(cell: tuple[float, float]) -> str:
    mean, std = cell
    if math.isnan(mean):
        return "-"
    return f"{mean:.1f} ± {std:.1f}"


def report(table: ResultsTable, fmt: str = "markdown") -> str:
    if fmt == "markdown":
        return _markdown(table)
    if fmt == "csv":
        return _csv(table)
    raise ValueError(f"unknown report format {fmt!r}")


def _row_keys() -> list[tuple[str, str]]:
    return [(d, d.capitalize()) for d in DIFFICULTY_ROWS] + [("total", "Total")]


def _markdown(table: ResultsTable) -> str:
    columns = list(CATEGORY_COLUMNS) + ["Total"]
    lines = [
        "| Task | " + " | ".join(columns) + " |",
        "|" + "---|" * (len(columns) + 1),
    ]
    for key, label in _row_keys():
        cells = [_fmt(table.cells.get((key, col), (float("nan"), 0.0))) for col in columns]
        lines.append(f"| {label} | " + " | ".join(cells) + " |")
    lines.append("")
    lines.append(f"Success rates (%) mean ± std over {table.repeats} runs per task.")
    return "\n".join(lines)


def _csv(table: ResultsTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    columns = list(CATEGORY_COLUMNS) + ["Total"]
    writer.writerow(["repeats", table.repeats])
    writer.writerow(["difficulty"] + [f"{c}_mean" for c in columns] + [f"{c}_std" for c in columns])
    for key, label in _row_keys():
        means = []
        stds = []
        for col in columns:
            mean, std = table.cells.get((key, col), (float("nan"), float("nan")))
            means.append(f"{mean:.6f}")
            stds.append(f"{std:.6f}")
        writer.writerow([label] + means + stds)
    return buffer.getvalue()


def parse_csv(text: str) -> ResultsTable:
    """Inverse of report(..., 'csv')."""
    rows = list(csv.reader(io.StringIO(text)))
    table = ResultsTable(repeats=int(rows[0][1]))
    columns = list(CATEGORY_COLUMNS) + ["Total"]
    for row in rows[2:]:
        label = row[0].lower()
        means = row[1:1 + len(columns)]
        stds = row[1 + len(columns):1 + 2 * len(columns)]
        for col, mean, std in zip(columns, means, stds):
            mean_f, std_f = float(mean), float(std)
            if not math.isnan(mean_f):
                table.cells[(label, col)] = (mean_f, std_f)
    return table
