import json
import sys
from pathlib import Path

import pytest

from conftest import TRANSCRIPTS_DIR
from wakit.harness import matches, run_suite, run_transcript

SERVER = [sys.executable, "-m", "wakit", "serve"]
BROKEN = [sys.executable, "-m", "wakit.fixtures.broken_server"]

# Process spawns can be slow on a loaded box; keep generous step timeouts.
TIMEOUT = 20.0


class TestMatcher:
    def test_wildcard(self):
        assert matches("*", {"anything": [1, 2]})

    def test_partial_object(self):
        assert matches({"a": 1}, {"a": 1, "b": 2})
        assert not matches({"a": 1}, {"b": 2})

    def test_ordered_list_exact_length(self):
        assert matches([1, "*"], [1, 99])
        assert not matches([1], [1, 2])

    def test_set_mode(self):
        assert matches({"$set": [2, 1]}, [1, 2])
        assert not matches({"$set": [1, 1]}, [1, 2])

    def test_nested(self):
        assert matches(
            {"result": [{"code": "*"}]},
            {"result": [{"code": "x", "extra": True}], "id": 4},
        )


def write_transcript(tmp_path, steps, name="t.jsonl"):
    path = tmp_path / name
    path.write_text("\n".join(json.dumps(s) for s in steps) + "\n")
    return path


INIT_STEPS = [
    {"send": {"jsonrpc": "2.0", "id": 1, "method": "initialize", "params": {}}},
    {"expectResponse": {"id": 1, "matcher": {"result": "*"}}},
    {"send": {"jsonrpc": "2.0", "method": "initialized"}},
]


class TestRunTranscript:
    def test_lifecycle_pass_and_exit_zero(self, tmp_path):
        path = write_transcript(
            tmp_path,
            INIT_STEPS
            + [
                {"send": {"jsonrpc": "2.0", "id": 2, "method": "shutdown"}},
                {"expectResponse": {"id": 2, "matcher": {"result": None}}},
                {"send": {"jsonrpc": "2.0", "method": "exit"}},
                {"expectExit": {"code": 0}},
            ],
        )
        result = run_transcript(SERVER, path, timeout=TIMEOUT)
        assert result.passed, result.detail
        assert result.exit_status == 0

    def test_request_before_initialize_gets_32002(self, tmp_path):
        path = write_transcript(
            tmp_path,
            [
                {
                    "send": {
                        "jsonrpc": "2.0",
                        "id": 1,
                        "method": "textDocument/hover",
                        "params": {},
                    }
                },
                {"expectResponse": {"id": 1, "matcher": {"error": {"code": -32002}}}},
            ],
        )
        result = run_transcript(SERVER, path, timeout=TIMEOUT)
        assert result.passed, result.detail

    def test_timeout_recorded_with_step_index(self, tmp_path):
        path = write_transcript(
            tmp_path,
            [{"expectResponse": {"id": 9, "timeoutMs": 300}}],
        )
        result = run_transcript(SERVER, path, timeout=TIMEOUT)
        assert not result.passed
        assert result.failing_step == 0
        assert "timeout" in result.detail

    def test_unparseable_transcript_reported(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text("{not json\n")
        result = run_transcript(SERVER, path, timeout=TIMEOUT)
        assert not result.passed
        assert "parse error" in result.detail

    def test_mismatch_reports_observed_vs_expected(self, tmp_path):
        path = write_transcript(
            tmp_path,
            [
                {"send": {"jsonrpc": "2.0", "id": 1, "method": "initialize", "params": {}}},
                {"expectResponse": {"id": 1, "matcher": {"error": "*"}}},
            ],
        )
        result = run_transcript(SERVER, path, timeout=TIMEOUT)
        assert not result.passed
        assert "expected" in result.detail and "observed" in result.detail


class TestSuite:
    def test_empty_directory_passes(self, tmp_path):
        report = run_suite(SERVER, tmp_path, timeout=TIMEOUT)
        assert report.to_json()["summary"] == {"total": 0, "passed": 0, "failed": 0}

    def test_bundled_core_suite_passes(self):
        report = run_suite(SERVER, TRANSCRIPTS_DIR / "core", timeout=TIMEOUT)
        assert report.failed == 0, report.to_text()
        assert len(report.results) >= 10

    def test_negotiation_suite_passes_all_eight(self):
        report = run_suite(SERVER, TRANSCRIPTS_DIR / "negotiation", timeout=TIMEOUT)
        assert report.failed == 0, report.to_text()
        assert len(report.results) == 8

    def test_broken_server_fails_exactly_designated(self):
        report = run_suite(BROKEN, TRANSCRIPTS_DIR / "core", timeout=TIMEOUT)
        failed = sorted(r.name for r in report.results if not r.passed)
        assert failed == ["hover"], report.to_text()

    def test_reports_deterministic_across_runs(self):
        first = run_suite(SERVER, TRANSCRIPTS_DIR / "core", timeout=TIMEOUT)
        second = run_suite(SERVER, TRANSCRIPTS_DIR / "core", timeout=TIMEOUT)
        assert json.dumps(first.to_json(), sort_keys=True) == json.dumps(
            second.to_json(), sort_keys=True
        )
