import pytest

from wakit.lifecycle import LifecycleState, Verdict, lifecycle_guard
from wakit.messages import SERVER_NOT_INITIALIZED, notification, request


def test_request_before_initialize_rejected_32002():
    gate = lifecycle_guard(
        LifecycleState.UNINITIALIZED, request(1, "textDocument/hover")
    )
    assert gate.verdict is Verdict.REJECT
    assert gate.error.code == SERVER_NOT_INITIALIZED


def test_initialize_admitted_when_uninitialized():
    gate = lifecycle_guard(LifecycleState.UNINITIALIZED, request(1, "initialize"))
    assert gate.verdict is Verdict.ADMIT


def test_exit_admitted_while_shutting_down():
    gate = lifecycle_guard(LifecycleState.SHUTTING_DOWN, notification("exit"))
    assert gate.verdict is Verdict.ADMIT


def test_exit_admitted_any_state():
    for state in LifecycleState:
        if state is LifecycleState.EXITED:
            continue
        gate = lifecycle_guard(state, notification("exit"))
        assert gate.verdict is Verdict.ADMIT, state


def test_notifications_before_initialize_dropped():
    gate = lifecycle_guard(
        LifecycleState.UNINITIALIZED, notification("textDocument/didOpen")
    )
    assert gate.verdict is Verdict.DROP


@pytest.mark.parametrize("method", ["textDocument/hover", "workspace/search"])
def test_requests_during_shutdown_rejected(method):
    gate = lifecycle_guard(LifecycleState.SHUTTING_DOWN, request(9, method))
    assert gate.verdict is Verdict.REJECT


def test_everything_dropped_after_exit():
    gate = lifecycle_guard(LifecycleState.EXITED, request(1, "initialize"))
    assert gate.verdict is Verdict.DROP
