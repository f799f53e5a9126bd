"""Transports: stdio and TCP carry Content-Length frames; WebSocket
carries one JSON-RPC body per message (the message boundary replaces
framing). Logs go to stderr only."""

from __future__ import annotations

import logging
import socket
import sys

from .framing import FrameDecoder, FramingError, frame_encode
from .server import Server

log = logging.getLogger("wakit.transport")

EXIT_TRANSPORT_ERROR = 2


def serve_stdio(server: Server) -> int:
    stdin = sys.stdin.buffer
    stdout = sys.stdout.buffer

    def send(body: bytes) -> None:
        stdout.write(frame_encode(body))
        stdout.flush()

    server.attach(send)
    decoder = FrameDecoder()
    try:
        while server.exit_code is None:
            chunk = stdin.read1(65536)
            if not chunk:
                break
            for body in decoder.feed(chunk):
                server.handle_body(body)
                if server.exit_code is not None:
                    break
    except FramingError as exc:
        log.error("fatal transport error: %s", exc)
        return EXIT_TRANSPORT_ERROR
    server.wait_for_searches()
    return server.exit_code if server.exit_code is not None else EXIT_TRANSPORT_ERROR


def serve_tcp(server: Server, port: int) -> int:
    listener = socket.create_server(("127.0.0.1", port))
    actual_port = listener.getsockname()[1]
    print(f"LISTENING {actual_port}", file=sys.stderr, flush=True)
    conn, addr = listener.accept()
    log.info("connection from %s", addr)

    def send(body: bytes) -> None:
        conn.sendall(frame_encode(body))

    server.attach(send)
    decoder = FrameDecoder()
    try:
        while server.exit_code is None:
            chunk = conn.recv(65536)
            if not chunk:
                break
            for body in decoder.feed(chunk):
                server.handle_body(body)
                if server.exit_code is not None:
                    break
    except (FramingError, OSError) as exc:
        log.error("fatal transport error: %s", exc)
        return EXIT_TRANSPORT_ERROR
    finally:
        conn.close()
        listener.close()
    server.wait_for_searches()
    return server.exit_code if server.exit_code is not None else EXIT_TRANSPORT_ERROR


def serve_websocket(server: Server, port: int) -> int:
    from websockets.sync.server import serve

    ws_server = None

    def handler(connection) -> None:
        def send(body: bytes) -> None:
            connection.send(body.decode("utf-8"))

        server.attach(send)
        try:
            for raw in connection:
                body = raw if isinstance(raw, bytes) else raw.encode("utf-8")
                server.handle_body(body)
                if server.exit_code is not None:
                    break
        finally:
            server.wait_for_searches()
            if ws_server is not None:
                ws_server.shutdown()

    with serve(handler, "127.0.0.1", port) as ws_server:
        actual_port = ws_server.socket.getsockname()[1]
        print(f"LISTENING {actual_port}", file=sys.stderr, flush=True)
        ws_server.serve_forever()
    return server.exit_code if server.exit_code is not None else EXIT_TRANSPORT_ERROR
