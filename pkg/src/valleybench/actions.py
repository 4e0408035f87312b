"""The ten-action space and its textual call grammar.

Actions travel over the wire as function-call strings, e.g.
``move(x=3, y=5)`` or ``use(direction="up")``.  parse_action and
print_action are exact inverses on canonical strings; the parser also
accepts positional arguments and the unattach_item alias, both normalized
away on printing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

DIRECTIONS = ("up", "right", "down", "left")
MENU_NAMES = ("map", "quest_log", "crafting", "shipping")


class MalformedActionError(ValueError):
    """The action string or its parameters violate the call templates."""


@dataclass(frozen=True, slots=True)
class Move:
    x: int
    y: int


@dataclass(frozen=True, slots=True)
class Use:
    direction: str


@dataclass(frozen=True, slots=True)
class Interact:
    direction: str


@dataclass(frozen=True, slots=True)
class ChooseItem:
    slot_index: int


@dataclass(frozen=True, slots=True)
class AttachItem:
    slot_index: int


@dataclass(frozen=True, slots=True)
class DetachItem:
    pass


@dataclass(frozen=True, slots=True)
class Craft:
    item: str


@dataclass(frozen=True, slots=True)
class ChooseOption:
    option_index: int
    quantity: int | None = None
    direction: str | None = None  # "in" buys/takes, "out" sells/puts


@dataclass(frozen=True, slots=True)
class Menu:
    option: str  # "open" | "close"
    menu_name: str


@dataclass(frozen=True, slots=True)
class Navigate:
    name: str


Action = (
    Move | Use | Interact | ChooseItem | AttachItem | DetachItem
    | Craft | ChooseOption | Menu | Navigate
)

_CALL_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)\s*$", re.DOTALL)
_ARG_SPLIT_RE = re.compile(r""",(?=(?:[^"']*["'][^"']*["'])*[^"']*$)""")


def _parse_value(raw: str) -> int | str:
    raw = raw.strip()
    if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "\"'":
        return raw[1:-1]
    try:
        return int(raw)
    except ValueError:
        raise MalformedActionError(f"bad argument value: {raw!r}") from None


def _parse_args(body: str) -> tuple[list[int | str], dict[str, int | str]]:
    positional: list[int | str] = []
    keyword: dict[str, int | str] = {}
    body = body.strip()
    if not body:
        return positional, keyword
    for chunk in _ARG_SPLIT_RE.split(body):
        chunk = chunk.strip()
        if not chunk:
            raise MalformedActionError("empty argument")
        match = re.match(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$", chunk, re.DOTALL)
        if match:
            keyword[match.group(1)] = _parse_value(match.group(2))
        else:
            if keyword:
                raise MalformedActionError("positional argument after keyword argument")
            positional.append(_parse_value(chunk))
    return positional, keyword


def _bind(name: str, spec: list[tuple[str, type]], positional, keyword, optional: set[str] = frozenset()):
    values: dict[str, int | str | None] = {}
    names = [param for param, _ in spec]
    if len(positional) > len(spec):
        raise MalformedActionError(f"{name}: too many arguments")
    for value, (param, _) in zip(positional, spec):
        values[param] = value
    for param, value in keyword.items():
        if param not in names:
            raise MalformedActionError(f"{name}: unknown parameter {param!r}")
        if param in values:
            raise MalformedActionError(f"{name}: duplicate parameter {param!r}")
        values[param] = value
    for param, expected in spec:
        if param not in values:
            if param in optional:
                values[param] = None
                continue
            raise MalformedActionError(f"{name}: missing parameter {param!r}")
        if values[param] is not None and not isinstance(values[param], expected):
            raise MalformedActionError(f"{name}: parameter {param!r} must be {expected.__name__}")
    return values


def _check_direction(value: str) -> str:
    if value not in DIRECTIONS:
        raise MalformedActionError(f"direction must be one of {DIRECTIONS}, got {value!r}")
    return value


def _check_slot(value: int) -> int:
    if not 0 <= value <= 35:
        raise MalformedActionError(f"slot_index must be in [0, 35], got {value}")
    return value


def parse_action(text: str) -> Action:
    """Parse one action call string; raises MalformedActionError otherwise."""
    match = _CALL_RE.match(text)
    if not match:
        raise MalformedActionError(f"not an action call: {text!r}")
    name, body = match.group(1), match.group(2)
    positional, keyword = _parse_args(body)

    if name == "move":
        values = _bind(name, [("x", int), ("y", int)], positional, keyword)
        return Move(x=values["x"], y=values["y"])
    if name == "use":
        values = _bind(name, [("direction", str)], positional, keyword)
        return Use(direction=_check_direction(values["direction"]))
    if name == "interact":
        values = _bind(name, [("direction", str)], positional, keyword)
        return Interact(direction=_check_direction(values["direction"]))
    if name == "choose_item":
        values = _bind(name, [("slot_index", int)], positional, keyword)
        return ChooseItem(slot_index=_check_slot(values["slot_index"]))
    if name == "attach_item":
        values = _bind(name, [("slot_index", int)], positional, keyword)
        return AttachItem(slot_index=_check_slot(values["slot_index"]))
    if name in ("detach_item", "unattach_item"):
        _bind(name, [], positional, keyword)
        return DetachItem()
    if name == "craft":
        values = _bind(name, [("item", str)], positional, keyword)
        return Craft(item=values["item"])
    if name == "choose_option":
        values = _bind(
            name,
            [("option_index", int), ("quantity", int), ("direction", str)],
            positional,
            keyword,
            optional={"quantity", "direction"},
        )
        direction = values["direction"]
        if direction is not None and direction not in ("in", "out"):
            raise MalformedActionError(f'choose_option direction must be "in" or "out", got {direction!r}')
        quantity = values["quantity"]
        if quantity is not None and quantity < 1:
            raise MalformedActionError("choose_option quantity must be >= 1")
        if values["option_index"] < 0:
            raise MalformedActionError("option_index must be >= 0")
        return ChooseOption(option_index=values["option_index"], quantity=quantity, direction=direction)
    if name == "menu":
        values = _bind(name, [("option", str), ("menu_name", str)], positional, keyword)
        if values["option"] not in ("open", "close"):
            raise MalformedActionError(f'menu option must be "open" or "close", got {values["option"]!r}')
        return Menu(option=values["option"], menu_name=values["menu_name"])
    if name == "navigate":
        values = _bind(name, [("name", str)], positional, keyword)
        return Navigate(name=values["name"])
    raise MalformedActionError(f"unknown action: {name!r}")


def print_action(action: Action) -> str:
    """Canonical call-template string for an action."""
    if isinstance(action, Move):
        return f"move(x={action.x}, y={action.y})"
    if isinstance(action, Use):
        return f'use(direction="{action.direction}")'
    if isinstance(action, Interact):
        return f'interact(direction="{action.direction}")'
    if isinstance(action, ChooseItem):
        return f"choose_item(slot_index={action.slot_index})"
    if isinstance(action, AttachItem):
        return f"attach_item(slot_index={action.slot_index})"
    if isinstance(action, DetachItem):
        return "detach_item()"
    if isinstance(action, Craft):
        return f'craft(item="{action.item}")'
    if isinstance(action, ChooseOption):
        parts = [f"option_index={action.option_index}"]
        if action.quantity is not None:
            parts.append(f"quantity={action.quantity}")
        if action.direction is not None:
            parts.append(f'direction="{action.direction}"')
        return f"choose_option({', '.join(parts)})"
    if isinstance(action, Menu):
        return f'menu(option="{action.option}", menu_name="{action.menu_name}")'
    if isinstance(action, Navigate):
        return f'navigate(name="{action.name}")'
    raise TypeError(f"not an action: {action!r}")
