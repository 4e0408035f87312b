"""Observation payload packing for the wire protocol.

The payload carries exactly the modalities the mode selects: text_only
payloads contain no image bytes, image_only payloads no text record, and
serialize/deserialize round-trip losslessly.
"""

from __future__ import annotations

import base64

from valleybench.render import VisualObservation, decode_png, encode_png

MODES = ("both", "image_only", "text_only")


def serialize_observation(text: dict | None, visual: VisualObservation | None, mode: str = "both") -> dict:
    if mode not in MODES:
        raise ValueError(f"unknown observation mode {mode!r}")
    payload: dict = {"mode": mode}
    if mode in ("both", "text_only"):
        if text is None:
            raise ValueError("text record required for this mode")
        payload["text"] = text
    if mode in ("both", "image_only"):
        if visual is None:
            raise ValueError("visual record required for this mode")
        payload["image"] = {
            "format": "png",
            "width": visual.width,
            "height": visual.height,
            "tile_size": visual.tile_size,
            "data": base64.b64encode(encode_png(visual.pixels)).decode("ascii"),
        }
    return payload


def deserialize_observation(payload: dict) -> tuple[dict | None, VisualObservation | None]:
    text = payload.get("text")
    visual = None
    if "image" in payload:
        image = payload["image"]
        pixels = decode_png(base64.b64decode(image["data"]))
        visual = VisualObservation(
            width=image["width"],
            height=image["height"],
            tile_size=image["tile_size"],
            pixels=pixels,
        )
    return text, visual
