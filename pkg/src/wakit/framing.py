"""Byte-level message framing: Content-Length header + UTF-8 JSON body.

Frames look like HTTP headers followed by a blank line and the body:

    Content-Length: 33\r\n
    \r\n
    {"jsonrpc":"2.0","method":"exit"}

Headers are ASCII; unknown headers (e.g. Content-Type) are skipped.
"""

from __future__ import annotations

from typing import Iterator

HEADER_TERMINATOR = b"\r\n\r\n"


class FramingError(Exception):
    """Fatal transport error: the byte stream cannot be re-synchronized."""


def frame_encode(body: bytes) -> bytes:
    """Wrap a message body in a Content-Length frame."""
    return b"Content-Length: %d\r\n\r\n" % len(body) + body


class FrameDecoder:
    """Incremental frame decoder tolerant of arbitrary chunk boundaries.

    Feed bytes with :meth:`feed`; complete bodies come back in order.
    Chunking never affects output.
    """

    def __init__(self) -> None:
        self._buf = bytearray()

    def feed(self, chunk: bytes) -> Iterator[bytes]:
        self._buf.extend(chunk)
        while True:
            end = self._buf.find(HEADER_TERMINATOR)
            if end < 0:
                return
            header_block = bytes(self._buf[:end])
            length = self._parse_headers(header_block)
            start = end + len(HEADER_TERMINATOR)
            if len(self._buf) - start < length:
                return
            body = bytes(self._buf[start : start + length])
            del self._buf[: start + length]
            yield body

    def close(self) -> None:
        """Signal end of stream; leftover bytes mean a truncated frame."""
        if self._buf:
            raise FramingError("stream closed mid-frame")

    @staticmethod
    def _parse_headers(block: bytes) -> int:
        length = None
        for line in block.split(b"\r\n"):
            if not line:
                continue
            name, sep, value = line.partition(b":")
            if not sep:
                raise FramingError(f"malformed header line: {line!r}")
            if name.strip().lower() == b"content-length":
                try:
                    length = int(value.strip())
                except ValueError:
                    raise FramingError(f"bad Content-Length: {value!r}") from None
        if length is None or length < 0:
            raise FramingError("missing Content-Length header")
        return length


def decode_all(data: bytes) -> list[bytes]:
    """Decode a complete byte stream into its message bodies."""
    decoder = FrameDecoder()
    bodies = list(decoder.feed(data))
    decoder.close()
    return bodies
