"""Prompt construction from the shipped template.

Every <$placeholder$> must be bound before rendering; unbound names raise
with the full list so the failure is actionable.  Images ride alongside the
text: the previous step's frame (when present) precedes the current one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

_PLACEHOLDER_RE = re.compile(r"<\$([a-z_]+)\$>")


class PromptError(ValueError):
    pass


def load_template() -> str:
    return resources.files("valleybench_sdk").joinpath("data", "prompt_template.txt").read_text(
        encoding="utf-8"
    )


def template_placeholders(template: str | None = None) -> list[str]:
    template = template if template is not None else load_template()
    seen: list[str] = []
    for name in _PLACEHOLDER_RE.findall(template):
        if name not in seen:
            seen.append(name)
    return seen


@dataclass(slots=True)
class PromptContext:
    task_description: str
    health: object = None
    energy: object = None
    money: object = None
    time: str | None = None
    day: object = None
    season: str | None = None
    chosen_item: object = None
    toolbar_information: object = None
    current_menu: object = None
    surroundings: object = None
    skill_library: object = None
    pre_action: str | None = None
    current_image: bytes | None = None
    previous_image: bytes | None = None

    @classmethod
    def from_observation(cls, task_description: str, observation: dict,
                         skill_library: list[str] | None = None,
                         pre_action: str = "none",
                         current_image: bytes | None = None,
                         previous_image: bytes | None = None) -> "PromptContext":
        """Bind the context from a text-observation payload record."""
        text = observation.get("text", observation)
        return cls(
            task_description=task_description,
            health=text["health"],
            energy=text["energy"],
            money=text["money"],
            time=text["current_time"],
            day=text["day"],
            season=text["season"],
            chosen_item=text["item_in_hand"],
            toolbar_information=text["toolbar"],
            current_menu=text["current_menu"],
            surroundings=text["surrounding_blocks"],
            skill_library=skill_library or DEFAULT_SKILL_LIBRARY,
            pre_action=pre_action,
            current_image=current_image,
            previous_image=previous_image,
        )


DEFAULT_SKILL_LIBRARY = [
    "move(x, y)",
    "use(direction)",
    "interact(direction)",
    "choose_item(slot_index)",
    "attach_item(slot_index)",
    "detach_item()",
    "craft(item)",
    "choose_option(option_index, quantity, direction)",
    "menu(option, menu_name)",
]


def build_prompt(ctx: PromptContext) -> tuple[str, list[bytes]]:
    """Render the template; same context gives identical text."""
    images: list[bytes] = []
    if ctx.previous_image is not None:
        images.append(ctx.previous_image)
    if ctx.current_image is not None:
        images.append(ctx.current_image)
    if len(images) == 2:
        image_introduction = (
            "The first image is the screenshot from the previous step; "
            "the second image is the current screenshot."
        )
    elif len(images) == 1:
        image_introduction = "The image shows the current screenshot."
    else:
        image_introduction = "No screenshot is available for this step."

    bindings = {
        "task_description": ctx.task_description,
        "health": ctx.health,
        "energy": ctx.energy,
        "money": ctx.money,
        "time": ctx.time,
        "day": ctx.day,
        "season": ctx.season,
        "chosen_item": ctx.chosen_item,
        "toolbar_information": ctx.toolbar_information,
        "current_menu": ctx.current_menu,
        "surroundings": ctx.surroundings,
        "skill_library": ctx.skill_library,
        "pre_action": ctx.pre_action,
        "image_introduction": image_introduction,
    }
    template = load_template()
    unbound = [
        name for name in template_placeholders(template)
        if name not in bindings or bindings[name] is None
    ]
    if unbound:
        raise PromptError(f"unbound placeholders: {', '.join(unbound)}")

    def substitute(match: re.Match) -> str:
        value = bindings[match.group(1)]
        return value if isinstance(value, str) else repr(value)

    return _PLACEHOLDER_RE.sub(substitute, template), images
