"""JSON-RPC 2.0 message envelope: parse, classify, serialize."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Union

JSONRPC_VERSION = "2.0"

# Reserved error codes.
PARSE_ERROR = -32700
INVALID_REQUEST = -32600
METHOD_NOT_FOUND = -32601
INVALID_PARAMS = -32602
INTERNAL_ERROR = -32603
SERVER_NOT_INITIALIZED = -32002
REQUEST_CANCELLED = -32800

RESERVED_CODES = frozenset(
    {
        PARSE_ERROR,
        INVALID_REQUEST,
        METHOD_NOT_FOUND,
        INVALID_PARAMS,
        INTERNAL_ERROR,
        SERVER_NOT_INITIALIZED,
        REQUEST_CANCELLED,
    }
)

MessageId = Union[int, str]


class MessageKind(Enum):
    REQUEST = "request"
    RESPONSE = "response"
    NOTIFICATION = "notification"


@dataclass(frozen=True)
class RpcError:
    code: int
    message: str
    data: Any = None

    def to_json(self) -> dict:
        out: dict = {"code": self.code, "message": self.message}
        if self.data is not None:
            out["data"] = self.data
        return out


class MessageError(Exception):
    """Body is not a well-formed JSON-RPC message."""

    def __init__(self, error: RpcError, msg_id: Optional[MessageId] = None):
        super().__init__(error.message)
        self.error = error
        self.msg_id = msg_id


@dataclass(frozen=True)
class RpcMessage:
    kind: MessageKind
    id: Optional[MessageId] = None
    method: Optional[str] = None
    params: Any = None
    result: Any = None
    error: Optional[RpcError] = None

    def to_json(self) -> dict:
        out: dict = {"jsonrpc": JSONRPC_VERSION}
        if self.kind is MessageKind.REQUEST:
            out["id"] = self.id
            out["method"] = self.method
            if self.params is not None:
                out["params"] = self.params
        elif self.kind is MessageKind.NOTIFICATION:
            out["method"] = self.method
            if self.params is not None:
                out["params"] = self.params
        else:
            out["id"] = self.id
            if self.error is not None:
                out["error"] = self.error.to_json()
            else:
                out["result"] = self.result
        return out

    def serialize(self) -> bytes:
        return json.dumps(self.to_json(), ensure_ascii=False).encode("utf-8")


def request(msg_id: MessageId, method: str, params: Any = None) -> RpcMessage:
    return RpcMessage(MessageKind.REQUEST, id=msg_id, method=method, params=params)


def notification(method: str, params: Any = None) -> RpcMessage:
    return RpcMessage(MessageKind.NOTIFICATION, method=method, params=params)


def response(msg_id: Optional[MessageId], result: Any = None) -> RpcMessage:
    return RpcMessage(MessageKind.RESPONSE, id=msg_id, result=result)


def error_response(msg_id: Optional[MessageId], error: RpcError) -> RpcMessage:
    return RpcMessage(MessageKind.RESPONSE, id=msg_id, error=error)


def _shape_error(message: str) -> MessageError:
    return MessageError(RpcError(INVALID_REQUEST, message))


def parse_message(body: bytes) -> RpcMessage:
    """Classify a body into Request / Response / Notification.

    Raises MessageError with ParseError for invalid JSON, InvalidRequest for
    JSON that does not fit any of the three shapes.
    """
    try:
        obj = json.loads(body)
    except (ValueError, UnicodeDecodeError):
        raise MessageError(RpcError(PARSE_ERROR, "invalid JSON")) from None
    if not isinstance(obj, dict):
        raise _shape_error("message must be a JSON object")
    if obj.get("jsonrpc") != JSONRPC_VERSION:
        raise _shape_error('missing "jsonrpc": "2.0"')

    has_id = "id" in obj
    msg_id = obj.get("id")
    if has_id and not (msg_id is None or isinstance(msg_id, (int, str))):
        raise _shape_error("id must be an integer, string, or null")
    method = obj.get("method")
    has_result = "result" in obj
    has_error = "error" in obj

    if method is not None:
        if not isinstance(method, str):
            raise _shape_error("method must be a string")
        if has_result or has_error:
            raise _shape_error("request cannot carry result/error")
        params = obj.get("params")
        if has_id:
            if msg_id is None:
                raise _shape_error("request id must not be null")
            return request(msg_id, method, params)
        return notification(method, params)

    if has_id and (has_result != has_error):
        if has_error:
            err = obj["error"]
            if (
                not isinstance(err, dict)
                or not isinstance(err.get("code"), int)
                or not isinstance(err.get("message"), str)
            ):
                raise _shape_error("malformed error object")
            return error_response(
                msg_id, RpcError(err["code"], err["message"], err.get("data"))
            )
        return response(msg_id, obj["result"])

    raise _shape_error("message fits no JSON-RPC shape")
