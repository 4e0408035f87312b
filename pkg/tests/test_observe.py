from __future__ import annotations

import numpy as np
import pytest

from valleybench import init_world, render_visual, text_observation
from valleybench.payload import deserialize_observation, serialize_observation
from valleybench.render import decode_png, encode_png
from valleybench.simcmd import apply_sim_command


@pytest.fixture()
def world():
    return init_world("save_new", 0)


def test_default_window_is_7x7(world):
    # Park the player away from edges so the window is complete.
    world, _ = apply_sim_command(world, 'warp("Town", 18, 10)')
    obs = text_observation(world, n=3)
    assert len(obs["surrounding_blocks"]) == 49


def test_window_completeness_general(world):
    world, _ = apply_sim_command(world, 'warp("Town", 18, 10)')
    for n in (0, 1, 2, 4):
        obs = text_observation(world, n=n)
        assert len(obs["surrounding_blocks"]) == (2 * n + 1) ** 2


def test_out_of_map_tiles_omitted(world):
    world, _ = apply_sim_command(world, 'warp("Town", 1, 8)')
    obs = text_observation(world, n=3)
    assert len(obs["surrounding_blocks"]) < 49
    for block in obs["surrounding_blocks"]:
        dx, dy = block["position"]
        assert 0 <= 1 + dx < 36 and 0 <= 8 + dy < 20


def test_player_tile_is_origin(world):
    obs = text_observation(world)
    assert any(block["position"] == [0, 0] for block in obs["surrounding_blocks"])


def test_time_format_at_day_start(world):
    assert text_observation(world)["current_time"] == "06:00 AM"


def test_toolbar_has_36_entries_and_empty_format(world):
    obs = text_observation(world)
    assert len(obs["toolbar"]) == 36
    assert obs["toolbar"][6] == "slot_index 6: No item"
    assert obs["toolbar"][0] == "slot_index 0: [Hoe] (quantity: 1)"


def test_attribute_strings_reflect_state(world):
    world.player.x, world.player.y = 16, 14
    obs = text_observation(world, n=1)
    below = next(b for b in obs["surrounding_blocks"] if b["position"] == [0, 1])
    assert "Object: Weeds" in below["object"]


def test_attribute_strings_are_true_world_predicates(world):
    """Sampled cross-check: every emitted attribute matches the state it
    claims to describe."""
    from valleybench.simcmd import apply_sim_command

    for warp in ('warp("Farm", 10, 6)', 'warp("Town", 18, 10)', "warp_mine(2)"):
        world, _ = apply_sim_command(world, warp)
        obs = text_observation(world, n=3)
        for block in obs["surrounding_blocks"]:
            dx, dy = block["position"]
            x, y = world.player.x + dx, world.player.y + dy
            attrs = block["object"]
            passable = world.is_passable(world.player.map_id, x, y)
            assert f"Passable: {passable}" in attrs
            diggable = (x, y) in world.map_def(world.player.map_id).diggable
            assert f"Diggable: {diggable}" in attrs
            obj = world.current_map().objects.get((x, y))
            object_attrs = [a for a in attrs if a.startswith("Object: ")]
            if obj is None:
                assert object_attrs == []
            else:
                assert len(object_attrs) == 1
            monsters_here = [
                m for m in world.monsters_on(world.player.map_id)
                if (m.x, m.y) == (x, y) and not m.burrowed
            ]
            monster_attrs = [a for a in attrs if a.startswith("Monster: ")]
            assert len(monster_attrs) == len(monsters_here)


def test_npc_record_attached(world):
    world, _ = apply_sim_command(world, 'warp("Town", 14, 11)')
    obs = text_observation(world, n=1)
    above = next(b for b in obs["surrounding_blocks"] if b["position"] == [0, -1])
    assert above["npc_on_this_tile"]["name"] == "Alex"


def test_map_info_only_when_enabled(world):
    obs = text_observation(world, include_map_info=False)
    assert "map_info" not in obs
    obs = text_observation(world, include_map_info=True)
    assert "buildings" in obs["map_info"]


def test_observation_deterministic(world):
    a = text_observation(world)
    b = text_observation(init_world("save_new", 0))
    assert a == b


# -- visual -------------------------------------------------------------------

def test_render_identical_bytes(world):
    png_a = encode_png(render_visual(world, 1280, 720).pixels)
    png_b = encode_png(render_visual(world, 1280, 720).pixels)
    assert png_a == png_b


def test_field_of_view_scales_with_resolution(world):
    small = render_visual(world, 1280, 720, tile_size=32)
    large = render_visual(world, 1920, 1080, tile_size=32)
    assert (small.tiles_x, small.tiles_y) == (40, 23)
    assert (large.tiles_x, large.tiles_y) == (60, 34)


def test_render_rejects_below_floor(world):
    with pytest.raises(ValueError):
        render_visual(world, 320, 240)


def test_png_round_trip(world):
    visual = render_visual(world, 640, 360)
    decoded = decode_png(encode_png(visual.pixels))
    assert np.array_equal(decoded, visual.pixels)


# -- payload ------------------------------------------------------------------

def test_payload_mode_both(world):
    payload = serialize_observation(text_observation(world), render_visual(world, 640, 360), "both")
    assert "text" in payload and "image" in payload
    text, visual = deserialize_observation(payload)
    assert text == text_observation(world)
    assert np.array_equal(visual.pixels, render_visual(world, 640, 360).pixels)


def test_payload_text_only_has_no_image_bytes(world):
    payload = serialize_observation(text_observation(world), None, "text_only")
    assert "image" not in payload
    import json

    assert b'"image"' not in json.dumps(payload).encode()


def test_payload_image_only_has_no_text(world):
    payload = serialize_observation(None, render_visual(world, 640, 360), "image_only")
    assert "text" not in payload


def test_text_only_payload_independent_of_render_settings(world):
    a = serialize_observation(text_observation(world), None, "text_only")
    b = serialize_observation(text_observation(world), None, "text_only")
    import json

    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
