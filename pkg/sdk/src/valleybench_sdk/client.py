"""Socket client for the environment protocol.

Wire format, as documented by the server: a 4-byte big-endian length prefix
followed by a UTF-8 JSON body; every request carries a kind and a request_id
echoed on exactly one response.  The client never mutates local episode
state on its own; the server response is the single source of truth.
"""

from __future__ import annotations

import json
import socket
import struct

_HEADER = struct.Struct("!I")


class ProtocolFault(Exception):
    """Transport-level problem: closed connection, bad frame, id mismatch."""


class ServerError(Exception):
    """The server answered with an error envelope."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class EpisodeDone(Exception):
    """step() was called after the episode finished."""


class EnvClient:
    """One controlling connection to one environment instance."""

    def __init__(self, host: str = "127.0.0.1", port: int = 5000, timeout: float = 60.0):
        self._conn = socket.create_connection((host, port), timeout=timeout)
        self._request_id = 0

    def close(self) -> None:
        try:
            self._conn.close()
        except OSError:
            pass

    def __enter__(self) -> "EnvClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- framing --------------------------------------------------------

    def _send(self, message: dict) -> None:
        body = json.dumps(message, separators=(",", ":")).encode("utf-8")
        self._conn.sendall(_HEADER.pack(len(body)) + body)

    def _recv(self) -> dict:
        header = self._recv_exact(_HEADER.size)
        (length,) = _HEADER.unpack(header)
        return json.loads(self._recv_exact(length).decode("utf-8"))

    def _recv_exact(self, n: int) -> bytes:
        buf = b""
        while len(buf) < n:
            chunk = self._conn.recv(n - len(buf))
            if not chunk:
                raise ProtocolFault("connection closed by server")
            buf += chunk
        return buf

    # -- requests --------------------------------------------------------

    def request(self, kind: str, **fields) -> dict:
        self._request_id += 1
        self._send({"kind": kind, "request_id": self._request_id, **fields})
        response = self._recv()
        if response.get("request_id") != self._request_id:
            raise ProtocolFault("response id does not match request id")
        if not response.get("ok"):
            error = response.get("error", {})
            raise ServerError(error.get("code", "unknown"), error.get("message", ""))
        return response["payload"]

    def reset(self, task: str, seed: int | None = None) -> "EpisodeHandle":
        payload = self.request("reset", task=task, seed=seed)
        return EpisodeHandle(self, payload)

    def observe(self) -> dict:
        return self.request("observe")["observation"]

    def configure(self, **settings) -> dict:
        return self.request("configure", settings=settings)

    def pause(self) -> dict:
        return self.request("pause")

    def resume(self) -> dict:
        return self.request("resume")

    def shutdown(self) -> dict:
        return self.request("shutdown")


class EpisodeHandle:
    """One reset-to-done episode over a client connection."""

    def __init__(self, client: EnvClient, reset_payload: dict):
        self.client = client
        self.task = reset_payload["task"]
        self.task_name = self.task["name"]
        self.max_steps = reset_payload["max_steps"]
        self.observation = reset_payload["observation"]
        self.eval_result = reset_payload["eval"]
        self.steps_used = reset_payload["steps_used"]
        self.done = reset_payload["done"]
        self.last_results: list[dict] = []

    @property
    def completed(self) -> bool:
        return bool(self.eval_result.get("completed"))

    @property
    def current_quantity(self) -> int:
        return int(self.eval_result.get("current_quantity", 0))

    def step(self, actions: list[str]) -> dict:
        """Execute 1-2 action strings; raises EpisodeDone after the end."""
        if self.done:
            raise EpisodeDone(f"episode for {self.task_name!r} already finished")
        payload = self.client.request("step", actions=actions)
        self.observation = payload["observation"]
        self.eval_result = payload["eval"]
        self.steps_used = payload["steps_used"]
        self.done = payload["done"]
        self.last_results = payload["results"]
        return payload
