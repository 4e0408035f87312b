from __future__ import annotations

import socket
import subprocess
import sys
import time

import pytest


def _free_port() -> int:
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        return probe.getsockname()[1]


@pytest.fixture(scope="session")
def server():
    """A real environment server, reached only through its CLI and socket."""
    port = _free_port()
    process = subprocess.Popen(
        [sys.executable, "-m", "valleybench.cli", "serve", "--port", str(port), "--mode", "text_only"],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
    )
    deadline = time.time() + 15
    while time.time() < deadline:
        try:
            socket.create_connection(("127.0.0.1", port), timeout=0.2).close()
            break
        except OSError:
            if process.poll() is not None:
                raise RuntimeError(f"server exited early: {process.stdout.read().decode()}")
            time.sleep(0.1)
    else:
        process.kill()
        raise RuntimeError("server did not come up")
    yield ("127.0.0.1", port)
    process.terminate()
    try:
        process.wait(timeout=5)
    except subprocess.TimeoutExpired:
        process.kill()
