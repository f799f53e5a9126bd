"""Server lifecycle state machine and pre-initialization gating."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .messages import (
    SERVER_NOT_INITIALIZED,
    MessageKind,
    RpcError,
    RpcMessage,
)


class LifecycleState(Enum):
    UNINITIALIZED = "uninitialized"
    INITIALIZING = "initializing"
    INITIALIZED = "initialized"
    SHUTTING_DOWN = "shutting_down"
    EXITED = "exited"


class Verdict(Enum):
    ADMIT = "admit"
    REJECT = "reject"
    DROP = "drop"


@dataclass(frozen=True)
class GateResult:
    verdict: Verdict
    error: Optional[RpcError] = None


ADMIT = GateResult(Verdict.ADMIT)
DROP = GateResult(Verdict.DROP)


def lifecycle_guard(state: LifecycleState, message: RpcMessage) -> GateResult:
    """Decide whether a message may reach the dispatcher.

    Before Initialized only `initialize` (request) and `exit` (notification)
    pass; other requests are rejected with -32002, other notifications
    dropped. After shutdown begins, only `exit` passes.
    """
    method = message.method
    if state in (LifecycleState.UNINITIALIZED, LifecycleState.INITIALIZING):
        if message.kind is MessageKind.REQUEST and method == "initialize":
            return ADMIT
        if message.kind is MessageKind.NOTIFICATION and method == "exit":
            return ADMIT
        if state is LifecycleState.INITIALIZING and method == "initialized":
            return ADMIT
        if message.kind is MessageKind.REQUEST:
            return GateResult(
                Verdict.REJECT,
                RpcError(SERVER_NOT_INITIALIZED, "server not initialized"),
            )
        return DROP
    if state is LifecycleState.SHUTTING_DOWN:
        if method == "exit":
            return ADMIT
        if message.kind is MessageKind.REQUEST:
            return GateResult(
                Verdict.REJECT,
                RpcError(SERVER_NOT_INITIALIZED, "server is shutting down"),
            )
        return DROP
    if state is LifecycleState.EXITED:
        return DROP
    return ADMIT
