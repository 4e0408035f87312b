from __future__ import annotations

import pytest

from valleybench_sdk import EnvClient, EpisodeDone, ServerError


def test_reset_exposes_initial_observation(server):
    host, port = server
    with EnvClient(host, port) as client:
        episode = client.reset("go_to_bus_stop", 1)
        assert episode.task_name == "go_to_bus_stop"
        assert episode.max_steps == 30
        assert episode.steps_used == 0
        assert not episode.done
        assert episode.observation["text"]["location"] == "Farm"
        # Reset twice: the server's initial observation is authoritative.
        again = client.reset("go_to_bus_stop", 1)
        assert again.observation == episode.observation


def test_step_updates_from_response_only(server):
    host, port = server
    with EnvClient(host, port) as client:
        episode = client.reset("go_to_bus_stop", 1)
        episode.step(["move(x=28, y=10)", 'interact(direction="right")'])
        assert episode.completed
        assert episode.done
        assert episode.current_quantity == 1
        assert episode.steps_used == 1


def test_step_after_done_is_client_error(server):
    host, port = server
    with EnvClient(host, port) as client:
        episode = client.reset("go_to_bus_stop", 1)
        episode.step(["move(x=28, y=10)", 'interact(direction="right")'])
        with pytest.raises(EpisodeDone):
            episode.step(["move(x=1, y=1)"])


def test_malformed_action_reported_with_index(server):
    host, port = server
    with EnvClient(host, port) as client:
        episode = client.reset("go_to_bus_stop", 2)
        payload = episode.step(["definitely_not_an_action("])
        assert payload["results"][0]["error"] == "parse_error"
        assert payload["results"][0]["action_index"] == 0


def test_server_errors_surface_as_exceptions(server):
    host, port = server
    with EnvClient(host, port) as client:
        with pytest.raises(ServerError) as err:
            client.reset("walk_on_water", 0)
        assert err.value.code == "unknown_task"


def test_connection_refused_raises():
    with pytest.raises(OSError):
        EnvClient("127.0.0.1", 1, timeout=0.5)
