"""Wire protocol: length-prefixed JSON over a local stream socket.

Framing: 4-byte big-endian payload length, then a UTF-8 JSON body.
Requests carry a kind (reset, step, observe, pause, resume, configure,
shutdown) and an integer request_id echoed verbatim on the single response.
One controlling connection per instance; reconnection is allowed after a
clean disconnect.  The full schema lives in docs/protocol.md.
"""

from __future__ import annotations

import json
import socket
import struct
import threading

from valleybench.instance import EnvInstance, InstanceConfig, InstanceError
from valleybench.tasks import TaskError, TaskSuite

PROTOCOL_VERSION = 1
REQUEST_KINDS = ("reset", "step", "observe", "pause", "resume", "configure", "shutdown")
_HEADER = struct.Struct("!I")
MAX_FRAME = 64 * 1024 * 1024


class ProtocolError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def send_frame(conn: socket.socket, payload: dict) -> None:
    body = json.dumps(payload, separators=(",", ":")).encode("utf-8")
    conn.sendall(_HEADER.pack(len(body)) + body)


def recv_frame(conn: socket.socket) -> dict | None:
    header = _recv_exact(conn, _HEADER.size)
    if header is None:
        return None
    (length,) = _HEADER.unpack(header)
    if length > MAX_FRAME:
        raise ProtocolError("frame_too_large", f"frame of {length} bytes exceeds limit")
    body = _recv_exact(conn, length)
    if body is None:
        return None
    try:
        return json.loads(body.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ProtocolError("bad_json", str(exc)) from exc


def _recv_exact(conn: socket.socket, n: int) -> bytes | None:
    buf = b""
    while len(buf) < n:
        chunk = conn.recv(n - len(buf))
        if not chunk:
            return None
        buf += chunk
    return buf


class InstanceServer:
    """Serves one environment instance on one port, request-response only."""

    def __init__(self, port: int = 0, host: str = "127.0.0.1",
                 config: InstanceConfig | None = None, suite: TaskSuite | None = None):
        self.instance = EnvInstance(config=config, suite=suite)
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._sock.bind((host, port))  # raises OSError when the port is taken
        self._sock.listen(1)
        self.host, self.port = self._sock.getsockname()
        self._thread: threading.Thread | None = None
        self._shutdown = threading.Event()

    def start(self) -> "InstanceServer":
        self._thread = threading.Thread(target=self._serve_loop, name=f"instance:{self.port}", daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self._shutdown.set()
        try:
            self._sock.close()
        except OSError:
            pass
        if self._thread is not None:
            self._thread.join(timeout=5)

    def serve_forever(self) -> None:
        self._serve_loop()

    # -- internals ----------------------------------------------------------

    def _serve_loop(self) -> None:
        self._sock.settimeout(0.2)
        while not self._shutdown.is_set():
            try:
                conn, _addr = self._sock.accept()
            except socket.timeout:
                continue
            except OSError:
                break
            with conn:
                conn.settimeout(None)
                self._serve_connection(conn)
        try:
            self._sock.close()
        except OSError:
            pass

    def _serve_connection(self, conn: socket.socket) -> None:
        while not self._shutdown.is_set():
            try:
                request = recv_frame(conn)
            except ProtocolError as exc:
                send_frame(conn, _error_response(0, exc.code, str(exc)))
                continue
            except OSError:
                return
            if request is None:
                return
            response = self._dispatch(request)
            try:
                send_frame(conn, response)
            except OSError:
                return
            if request.get("kind") == "shutdown":
                self._shutdown.set()
                return

    def _dispatch(self, request: dict) -> dict:
        request_id = request.get("request_id", 0)
        kind = request.get("kind")
        if kind not in REQUEST_KINDS:
            return _error_response(request_id, "bad_request", f"unknown kind {kind!r}")
        try:
            if kind == "reset":
                payload = self.instance.reset(request["task"], request.get("seed"))
            elif kind == "step":
                payload = self.instance.step(request.get("actions", []))
            elif kind == "observe":
                payload = self.instance.observe()
            elif kind == "pause":
                payload = self.instance.pause()
            elif kind == "resume":
                payload = self.instance.resume()
            elif kind == "configure":
                payload = self.instance.configure(**request.get("settings", {}))
            else:  # shutdown
                payload = {"bye": True}
        except InstanceError as exc:
            return _error_response(request_id, exc.code, str(exc))
        except TaskError as exc:
            return _error_response(request_id, "unknown_task", str(exc))
        except KeyError as exc:
            return _error_response(request_id, "bad_request", f"missing field {exc}")
        except Exception as exc:  # crash containment: report, never die
            return _error_response(request_id, "internal", f"{type(exc).__name__}: {exc}")
        return {"kind": "response", "request_id": request_id, "ok": True, "payload": payload}


def _error_response(request_id: int, code: str, message: str) -> dict:
    return {
        "kind": "error",
        "request_id": request_id,
        "ok": False,
        "error": {"code": code, "message": message},
    }


class ProtocolClient:
    """Minimal synchronous client used by the harness and the tests."""

    def __init__(self, host: str, port: int, timeout: float = 30.0):
        self._conn = socket.create_connection((host, port), timeout=timeout)
        self._request_id = 0

    def close(self) -> None:
        try:
            self._conn.close()
        except OSError:
            pass

    def __enter__(self) -> "ProtocolClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def request(self, kind: str, **fields) -> dict:
        self._request_id += 1
        message = {"kind": kind, "request_id": self._request_id, **fields}
        send_frame(self._conn, message)
        response = recv_frame(self._conn)
        if response is None:
            raise ProtocolError("closed", "connection closed by server")
        if response.get("request_id") != self._request_id:
            raise ProtocolError("desync", "response id does not match request id")
        return response

    def reset(self, task: str, seed: int | None = None) -> dict:
        return self.request("reset", task=task, seed=seed)

    def step(self, actions: list[str]) -> dict:
        return self.request("step", actions=actions)

    def observe(self) -> dict:
        return self.request("observe")

    def configure(self, **settings) -> dict:
        return self.request("configure", settings=settings)

    def pause(self) -> dict:
        return self.request("pause")

    def resume(self) -> dict:
        return self.request("resume")

    def shutdown(self) -> dict:
        return self.request("shutdown")
