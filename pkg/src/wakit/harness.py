"""Conformance harness: spawn a server over stdio, replay JSONL
transcripts, assert protocol- and capability-level contracts.

Transcript steps, one JSON object per line:

    {"meta": {"extraServerArgs": ["--flag", "value"]}}
    {"send": {<json-rpc message>}}
    {"expectResponse": {"id": 1, "matcher": {...}}}
    {"expectNotification": {"method": "m", "matcher": {...}, "strict": false}}
    {"expectSilence": {"method": "m", "ms": 300}}
    {"wait": 100}
    {"expectExit": {"code": 0}}

Matchers are structural JSON patterns: "*" matches any value, objects
match if every listed key matches (extra observed keys are fine), lists
match element-wise in order, and {"$set": [...]} matches a list
disregarding order.
"""

from __future__ import annotations

import json
import shlex
import subprocess
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from queue import Empty, Queue
from typing import Any, Optional

from .framing import FrameDecoder, frame_encode

DEFAULT_STEP_TIMEOUT = 5.0


# -- matchers ---------------------------------------------------------------

WILDCARD = "*"


def matches(pattern: Any, observed: Any) -> bool:
    if pattern == WILDCARD:
        return True
    if isinstance(pattern, dict):
        if set(pattern) == {"$set"}:
            return _matches_set(pattern["$set"], observed)
        if not isinstance(observed, dict):
            return False
        return all(
            key in observed and matches(value, observed[key])
            for key, value in pattern.items()
        )
    if isinstance(pattern, list):
        if not isinstance(observed, list) or len(pattern) != len(observed):
            return False
        return all(matches(p, o) for p, o in zip(pattern, observed))
    return pattern == observed


def _matches_set(patterns: list, observed: Any) -> bool:
    if not isinstance(observed, list) or len(patterns) != len(observed):
        return False
    remaining = list(observed)
    for pattern in patterns:
        for i, candidate in enumerate(remaining):
            if matches(pattern, candidate):
                del remaining[i]
                break
        else:
            return False
    return True


# -- reports ----------------------------------------------------------------


@dataclass
class TranscriptResult:
    name: str
    passed: bool
    failing_step: Optional[int] = None
    detail: Optional[str] = None
    exit_status: Optional[int] = None
    stderr: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "failingStep": self.failing_step,
            "detail": self.detail,
            "exitStatus": self.exit_status,
        }


@dataclass
class ConformanceReport:
    results: list[TranscriptResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if not r.passed)

    def to_json(self) -> dict:
        return {
            "transcripts": [r.to_json() for r in self.results],
            "summary": {
                "total": len(self.results),
                "passed": self.passed,
                "failed": self.failed,
            },
        }

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status}  {r.name}"
            if not r.passed:
                where = f"step {r.failing_step}" if r.failing_step is not None else "setup"
                line += f"  ({where}: {r.detail})"
            lines.append(line)
        lines.append(
            f"{len(self.results)} transcripts: {self.passed} passed, {self.failed} failed"
        )
        return "\n".join(lines)


class StepFailure(Exception):
    pass


# -- session ----------------------------------------------------------------


class _ServerSession:
    """One spawned server process with framed stdio and message buffers."""

    def __init__(self, command: list[str]):
        self.proc = subprocess.Popen(
            command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
        self._incoming: Queue = Queue()
        self.notifications: list[dict] = []
        self.responses: dict[Any, dict] = {}
        self.duplicate_response: Optional[Any] = None
        self._reader = threading.Thread(target=self._read_loop, daemon=True)
        self._reader.start()

    def _read_loop(self) -> None:
        decoder = FrameDecoder()
        stdout = self.proc.stdout
        while True:
            chunk = stdout.read1(65536)
            if not chunk:
                break
            try:
                for body in decoder.feed(chunk):
                    try:
                        self._incoming.put(json.loads(body))
                    except ValueError:
                        self._incoming.put({"__unparseable": body.decode("utf-8", "replace")})
            except Exception as exc:
                self._incoming.put({"__transport_error": str(exc)})
                break
        self._incoming.put(None)  # EOF sentinel

    def send(self, message: dict) -> None:
        body = json.dumps(message).encode("utf-8")
        self.proc.stdin.write(frame_encode(body))
        self.proc.stdin.flush()

    def _classify(self, msg: dict) -> None:
        if "method" in msg:
            self.notifications.append(msg)
        elif "id" in msg:
            msg_id = msg["id"]
            if msg_id in self.responses:
                self.duplicate_response = msg_id
            else:
                self.responses[msg_id] = msg

    def pump(self, deadline: float) -> bool:
        """Move one incoming message into the buffers; False on timeout/EOF."""
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            return False
        try:
            msg = self._incoming.get(timeout=remaining)
        except Empty:
            return False
        if msg is None:
            return False
        self._classify(msg)
        return True

    def drain_now(self) -> None:
        while True:
            try:
                msg = self._incoming.get_nowait()
            except Empty:
                return
            if msg is None:
                return
            self._classify(msg)

    def close(self, timeout: float) -> tuple[Optional[int], str]:
        if self.proc.poll() is None:
            try:
                self.send({"jsonrpc": "2.0", "id": "__teardown", "method": "shutdown"})
                self.send({"jsonrpc": "2.0", "method": "exit"})
            except (BrokenPipeError, OSError):
                pass
        try:
            self.proc.wait(timeout=timeout)
        except subprocess.TimeoutExpired:
            self.proc.kill()
            self.proc.wait()
        try:
            self.proc.stdin.close()
        except OSError:
            pass
        stderr = self.proc.stderr.read().decode("utf-8", "replace")
        self._reader.join(timeout=1.0)
        return self.proc.returncode, stderr


# -- transcript execution ----------------------------------------------------


def load_transcript(path: Path) -> list[dict]:
    steps = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("//"):
            continue
        try:
            steps.append(json.loads(line))
        except ValueError as exc:
            raise StepFailure(f"line {lineno}: invalid JSON: {exc}") from None
    return steps


def run_transcript(
    server_command: str | list[str],
    transcript_path: Path,
    timeout: float = DEFAULT_STEP_TIMEOUT,
) -> TranscriptResult:
    name = transcript_path.stem
    command = (
        shlex.split(server_command)
        if isinstance(server_command, str)
        else list(server_command)
    )
    try:
        steps = load_transcript(transcript_path)
    except StepFailure as exc:
        return TranscriptResult(name, False, None, f"parse error: {exc}")

    for step in steps:
        if "meta" in step:
            command = command + list(step["meta"].get("extraServerArgs", []))
    steps = [s for s in steps if "meta" not in s]

    session = _ServerSession(command)
    result = TranscriptResult(name, True)
    try:
        for index, step in enumerate(steps):
            _run_step(session, step, timeout)
            if session.duplicate_response is not None:
                raise StepFailure(
                    f"duplicate response for id {session.duplicate_response!r}"
                )
    except StepFailure as exc:
        result.passed = False
        result.failing_step = index
        result.detail = str(exc)
    except (BrokenPipeError, OSError) as exc:
        result.passed = False
        result.failing_step = index
        result.detail = f"server pipe failure: {exc}"
    exit_status, stderr = session.close(timeout)
    session.drain_now()
    if result.passed and session.duplicate_response is not None:
        result.passed = False
        result.detail = f"duplicate response for id {session.duplicate_response!r}"
    result.exit_status = exit_status
    result.stderr = stderr
    if not result.passed and stderr:
        result.detail = f"{result.detail} | server stderr: {stderr.strip()[-500:]}"
    return result


def _run_step(session: _ServerSession, step: dict, timeout: float) -> None:
    if "send" in step:
        session.send(step["send"])
        return
    if "wait" in step:
        time.sleep(step["wait"] / 1000.0)
        session.drain_now()
        return
    if "expectResponse" in step:
        _expect_response(session, step["expectResponse"], timeout)
        return
    if "expectNotification" in step:
        _expect_notification(session, step["expectNotification"], timeout)
        return
    if "expectSilence" in step:
        _expect_silence(session, step["expectSilence"])
        return
    if "expectExit" in step:
        _expect_exit(session, step["expectExit"], timeout)
        return
    raise StepFailure(f"unknown step: {json.dumps(step)}")


def _expect_response(session: _ServerSession, spec: dict, timeout: float) -> None:
    msg_id = spec["id"]
    matcher = spec.get("matcher", WILDCARD)
    deadline = time.monotonic() + spec.get("timeoutMs", timeout * 1000) / 1000.0
    while msg_id not in session.responses:
        if not session.pump(deadline):
            raise StepFailure(f"timeout waiting for response id {msg_id!r}")
    observed = session.responses[msg_id]
    if not matches(matcher, observed):
        raise StepFailure(
            f"response mismatch for id {msg_id!r}: expected {json.dumps(matcher)}, "
            f"observed {json.dumps(observed)}"
        )


def _expect_notification(session: _ServerSession, spec: dict, timeout: float) -> None:
    method = spec["method"]
    matcher = spec.get("matcher", WILDCARD)
    strict = spec.get("strict", False)
    deadline = time.monotonic() + spec.get("timeoutMs", timeout * 1000) / 1000.0
    while True:
        if strict:
            if session.notifications:
                observed = session.notifications.pop(0)
                if observed.get("method") != method or not matches(matcher, observed):
                    raise StepFailure(
                        f"strict notification mismatch: expected {method} "
                        f"{json.dumps(matcher)}, observed {json.dumps(observed)}"
                    )
                return
        else:
            for i, observed in enumerate(session.notifications):
                if observed.get("method") == method:
                    if not matches(matcher, observed):
                        raise StepFailure(
                            f"notification mismatch for {method}: expected "
                            f"{json.dumps(matcher)}, observed {json.dumps(observed)}"
                        )
                    del session.notifications[i]
                    return
        if not session.pump(deadline):
            raise StepFailure(f"timeout waiting for notification {method}")


def _expect_silence(session: _ServerSession, spec: dict) -> None:
    method = spec["method"]
    deadline = time.monotonic() + spec.get("ms", 300) / 1000.0
    while time.monotonic() < deadline:
        session.pump(deadline)
    session.drain_now()
    for observed in session.notifications:
        if observed.get("method") == method:
            raise StepFailure(
                f"expected silence but received {json.dumps(observed)}"
            )


def _expect_exit(session: _ServerSession, spec: dict, timeout: float) -> None:
    try:
        status = session.proc.wait(timeout=spec.get("timeoutMs", timeout * 1000) / 1000.0)
    except subprocess.TimeoutExpired:
        raise StepFailure("timeout waiting for server exit") from None
    expected = spec.get("code")
    if expected == "nonzero":
        if status == 0:
            raise StepFailure(f"expected nonzero exit status, observed {status}")
    elif expected is not None and status != expected:
        raise StepFailure(f"expected exit status {expected}, observed {status}")


def run_suite(
    server_command: str | list[str],
    directory: Path,
    timeout: float = DEFAULT_STEP_TIMEOUT,
) -> ConformanceReport:
    report = ConformanceReport()
    for path in sorted(directory.glob("*.jsonl")):
        report.results.append(run_transcript(server_command, path, timeout))
    return report
