"""Parsing model completions into validated action strings.

The environment accepts ten call templates; completions must put their
actions in a fenced code block after an "Actions:" marker, at most two per
step (extras are dropped with a warning).
"""

from __future__ import annotations

import re
import warnings

DIRECTIONS = ("up", "right", "down", "left")

# template name -> ordered (param, kind) with kind in int | str | direction | inout
TEMPLATES: dict[str, list[tuple[str, str]]] = {
    "move": [("x", "int"), ("y", "int")],
    "use": [("direction", "direction")],
    "interact": [("direction", "direction")],
    "choose_item": [("slot_index", "slot")],
    "attach_item": [("slot_index", "slot")],
    "detach_item": [],
    "unattach_item": [],
    "craft": [("item", "str")],
    "choose_option": [("option_index", "int"), ("quantity", "int?"), ("direction", "inout?")],
    "menu": [("option", "openclose"), ("menu_name", "str")],
    "navigate": [("name", "str")],
}

_CALL_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)\s*$", re.DOTALL)
_SPLIT_RE = re.compile(r""",(?=(?:[^"']*["'][^"']*["'])*[^"']*$)""")
_BLOCK_RE = re.compile(r"```(?:\s*python)?\s*\n(.*?)```", re.DOTALL | re.IGNORECASE)


class ActionParseError(ValueError):
    pass


def _parse_value(raw: str):
    raw = raw.strip()
    if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "\"'":
        return raw[1:-1]
    try:
        return int(raw)
    except ValueError:
        raise ActionParseError(f"bad argument value: {raw!r}") from None


def _check(kind: str, value, name: str, call: str):
    base = kind.rstrip("?")
    if base == "int" and isinstance(value, int):
        return
    if base == "slot" and isinstance(value, int) and 0 <= value <= 35:
        return
    if base == "str" and isinstance(value, str):
        return
    if base == "direction" and value in DIRECTIONS:
        return
    if base == "inout" and value in ("in", "out"):
        return
    if base == "openclose" and value in ("open", "close"):
        return
    raise ActionParseError(f"{call}: parameter {name!r} is invalid")


def validate_action(text: str) -> str:
    """Validate one action call against the templates; returns the trimmed
    string unchanged on success."""
    match = _CALL_RE.match(text)
    if not match:
        raise ActionParseError(f"not an action call: {text!r}")
    name, body = match.group(1), match.group(2).strip()
    if name not in TEMPLATES:
        raise ActionParseError(f"unknown action: {name!r}")
    spec = TEMPLATES[name]
    chunks = [c.strip() for c in _SPLIT_RE.split(body)] if body else []
    if any(not c for c in chunks):
        raise ActionParseError(f"{name}: empty argument")

    seen: dict[str, object] = {}
    positional_index = 0
    for chunk in chunks:
        kv = re.match(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$", chunk, re.DOTALL)
        if kv:
            key, value = kv.group(1), _parse_value(kv.group(2))
            if key not in {param for param, _ in spec}:
                raise ActionParseError(f"{name}: unknown parameter {key!r}")
            if key in seen:
                raise ActionParseError(f"{name}: duplicate parameter {key!r}")
            seen[key] = value
        else:
            if seen and positional_index < len(seen):
                raise ActionParseError(f"{name}: positional after keyword argument")
            if positional_index >= len(spec):
                raise ActionParseError(f"{name}: too many arguments")
            seen[spec[positional_index][0]] = _parse_value(chunk)
        positional_index += 1
    for param, kind in spec:
        if param in seen:
            _check(kind, seen[param], param, name)
        elif not kind.endswith("?"):
            raise ActionParseError(f"{name}: missing parameter {param!r}")
    return text.strip()


def parse_actions(completion: str, limit: int = 2) -> list[str]:
    """Extract the action strings from a model completion.

    Looks for the fenced code block after "Actions:", validates each line,
    and truncates to the step limit.  Raises when no block or no valid
    action is present.
    """
    marker = completion.find("Actions:")
    searched = completion[marker:] if marker >= 0 else completion
    block = _BLOCK_RE.search(searched)
    if block is None:
        raise ActionParseError("no fenced action block found")
    lines = [line.strip() for line in block.group(1).splitlines()]
    lines = [line for line in lines if line and line.lower() != "python"]
    actions: list[str] = []
    problems: list[str] = []
    for line in lines:
        try:
            actions.append(validate_action(line))
        except ActionParseError as exc:
            problems.append(str(exc))
    if not actions:
        raise ActionParseError(
            "no valid actions in block" + (f" ({problems[0]})" if problems else "")
        )
    if len(actions) > limit:
        warnings.warn(f"completion produced {len(actions)} actions; keeping the first {limit}")
        actions = actions[:limit]
    return actions
