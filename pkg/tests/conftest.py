import json
import sys
from pathlib import Path

import pytest

from wakit.engines_bundle import EngineBundle

DATA_DIR = Path(__file__).parents[1] / "src" / "wakit" / "data"
TRANSCRIPTS_DIR = Path(__file__).parents[1] / "transcripts"

SERVER_CMD = [sys.executable, "-m", "wakit", "serve", "--transport", "stdio"]


@pytest.fixture(scope="session")
def bundle():
    return EngineBundle.load(DATA_DIR)


class FakeClient:
    """Drives a Server in-process and records everything it emits."""

    def __init__(self, server):
        self.server = server
        self.sent: list[dict] = []
        server.attach(lambda body: self.sent.append(json.loads(body)))
        self._next_id = 0

    def request(self, method, params=None):
        self._next_id += 1
        msg = {"jsonrpc": "2.0", "id": self._next_id, "method": method}
        if params is not None:
            msg["params"] = params
        self.server.handle_body(json.dumps(msg).encode())
        return self._next_id

    def notify(self, method, params=None):
        msg = {"jsonrpc": "2.0", "method": method}
        if params is not None:
            msg["params"] = params
        self.server.handle_body(json.dumps(msg).encode())

    def raw(self, body: bytes):
        self.server.handle_body(body)

    def response_for(self, msg_id, wait=True):
        if wait:
            self.server.wait_for_searches()
        for msg in self.sent:
            if msg.get("id") == msg_id and "method" not in msg:
                return msg
        return None

    def notifications(self, method=None):
        out = [m for m in self.sent if "method" in m]
        if method:
            out = [m for m in out if m["method"] == method]
        return out

    def initialize(self):
        msg_id = self.request("initialize", {"clientCapabilities": {}})
        self.notify("initialized")
        return self.response_for(msg_id)

    def open(self, uri, text, version=1):
        self.notify(
            "textDocument/didOpen",
            {"textDocument": {"uri": uri, "version": version, "text": text}},
        )
