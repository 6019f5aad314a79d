"""Integration tests for `monty serve`: real process, real port."""

from __future__ import annotations

import socket
import subprocess
import sys
import time

import httpx
import pytest


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def wait_for_health(port: int, process: subprocess.Popen, timeout: float = 15.0) -> None:
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        if process.poll() is not None:
            raise AssertionError(f"server exited early with code {process.returncode}")
        try:
            response = httpx.get(f"http://127.0.0.1:{port}/healthz", timeout=1.0)
            if response.status_code == 200:
                return
        except httpx.TransportError:
            time.sleep(0.1)
    raise AssertionError("server did not become healthy in time")


@pytest.fixture()
def server():
    port = free_port()
    process = subprocess.Popen(
        [
            sys.executable, "-m", "montyhall", "serve",
            "--port", str(port), "--q-default", "1/4", "--session-seed", "11",
        ],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
    )
    try:
        wait_for_health(port, process)
        yield port
    finally:
        process.terminate()
        process.wait(timeout=10)


def test_serve_answers_and_uses_default_bias(server):
    base = f"http://127.0.0.1:{server}"
    assert httpx.get(f"{base}/healthz").json() == {"status": "ok"}

    created = httpx.post(f"{base}/sessions", json={"variant": "I"})
    assert created.status_code == 201
    payload = created.json()
    assert payload["q"] == {"num": 1, "den": 4, "approx": 0.25}

    picked = httpx.post(f"{base}/sessions/{payload['id']}/pick")
    assert picked.status_code == 200
    resolved = httpx.post(
        f"{base}/sessions/{payload['id']}/decision", json={"decision": "switch"}
    )
    assert resolved.status_code == 200
    assert resolved.json()["phase"] == "resolved"


def test_serve_exits_1_when_port_taken():
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        sock.listen(1)
        port = sock.getsockname()[1]
        process = subprocess.run(
            [sys.executable, "-m", "montyhall", "serve", "--port", str(port)],
            capture_output=True,
            timeout=30,
        )
    assert process.returncode == 1


def test_serve_rejects_bad_default_bias():
    process = subprocess.run(
        [sys.executable, "-m", "montyhall", "serve", "--q-default", "7/3"],
        capture_output=True,
        timeout=30,
    )
    assert process.returncode == 2
