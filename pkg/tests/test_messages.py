import json

import pytest

from wakit.messages import (
    INVALID_REQUEST,
    PARSE_ERROR,
    MessageError,
    MessageKind,
    RpcError,
    error_response,
    notification,
    parse_message,
    request,
    response,
)


def test_canonical_request():
    msg = parse_message(b'{"jsonrpc":"2.0","id":1,"method":"initialize","params":{}}')
    assert msg.kind is MessageKind.REQUEST
    assert msg.id == 1
    assert msg.method == "initialize"


def test_notification_has_no_id():
    msg = parse_message(
        b'{"jsonrpc":"2.0","method":"textDocument/didOpen","params":{"x":1}}'
    )
    assert msg.kind is MessageKind.NOTIFICATION
    assert msg.id is None


def test_id_without_result_error_or_method_is_invalid():
    with pytest.raises(MessageError) as exc:
        parse_message(b'{"jsonrpc":"2.0","id":7}')
    assert exc.value.error.code == INVALID_REQUEST


def test_invalid_json_is_parse_error():
    with pytest.raises(MessageError) as exc:
        parse_message(b"{nope")
    assert exc.value.error.code == PARSE_ERROR


def test_missing_jsonrpc_member_invalid():
    with pytest.raises(MessageError):
        parse_message(b'{"id":1,"method":"x"}')


def test_response_with_both_result_and_error_invalid():
    with pytest.raises(MessageError):
        parse_message(b'{"jsonrpc":"2.0","id":1,"result":null,"error":{"code":1,"message":"x"}}')


def test_serialized_form_contains_version():
    for msg in (
        request(1, "m", {"a": 1}),
        notification("n"),
        response(2, [1, 2]),
        error_response(3, RpcError(-32601, "nope")),
    ):
        obj = json.loads(msg.serialize())
        assert obj["jsonrpc"] == "2.0"


@pytest.mark.parametrize(
    "msg",
    [
        request(1, "initialize", {"a": [1, "x"]}),
        request("str-id", "textDocument/hover"),
        notification("exit"),
        response(5, {"ok": True}),
        error_response(6, RpcError(-32800, "cancelled", {"why": "test"})),
    ],
)
def test_parse_serialize_roundtrip(msg):
    assert parse_message(msg.serialize()) == msg


def test_response_error_shape_validated():
    with pytest.raises(MessageError):
        parse_message(b'{"jsonrpc":"2.0","id":1,"error":{"code":"x","message":"y"}}')
