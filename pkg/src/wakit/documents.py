"""Versioned text documents with position/offset arithmetic.

Positions count lines and in-line characters in Unicode scalar values
(Python string indices), not UTF-16 code units. Ranges are half-open.
Lines are separated by "\\n", "\\r\\n", or "\\r"; the separator belongs to
the preceding line.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Optional

_LINE_BREAK = re.compile(r"\r\n|\r|\n")


class DocumentError(Exception):
    """Maps to an InvalidParams response at the protocol layer."""


class AlreadyOpen(DocumentError):
    pass


class NotOpen(DocumentError):
    pass


class StaleVersion(DocumentError):
    pass


class RangeOutOfBounds(DocumentError):
    pass


@dataclass(frozen=True, order=True)
class Position:
    line: int
    character: int

    def to_json(self) -> dict:
        return {"line": self.line, "character": self.character}

    @classmethod
    def from_json(cls, obj: dict) -> "Position":
        return cls(int(obj["line"]), int(obj["character"]))


@dataclass(frozen=True)
class Range:
    start: Position
    end: Position

    def to_json(self) -> dict:
        return {"start": self.start.to_json(), "end": self.end.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "Range":
        return cls(Position.from_json(obj["start"]), Position.from_json(obj["end"]))


@dataclass(frozen=True)
class ContentChange:
    text: str
    range: Optional[Range] = None  # absent = full-document replacement


def line_starts(text: str) -> list[int]:
    """Offsets at which each line begins; always at least one line."""
    starts = [0]
    for m in _LINE_BREAK.finditer(text):
        starts.append(m.end())
    return starts


class TextDocument:
    """One open document: uri, monotonically increasing version, text."""

    def __init__(self, uri: str, version: int, text: str):
        self.uri = uri
        self.version = version
        self.text = text
        self._line_starts = line_starts(text)

    @property
    def line_count(self) -> int:
        return len(self._line_starts)

    def line_length(self, line: int) -> int:
        """Length of a line in scalar values, separator included."""
        if line < 0 or line >= self.line_count:
            raise RangeOutOfBounds(f"line {line} out of range")
        start = self._line_starts[line]
        end = (
            self._line_starts[line + 1]
            if line + 1 < self.line_count
            else len(self.text)
        )
        return end - start

    def position_to_offset(self, pos: Position) -> int:
        if pos.line < 0 or pos.line >= self.line_count:
            raise RangeOutOfBounds(f"line {pos.line} out of range")
        if pos.character < 0 or pos.character > self.line_length(pos.line):
            raise RangeOutOfBounds(
                f"character {pos.character} out of range on line {pos.line}"
            )
        return self._line_starts[pos.line] + pos.character

    def offset_to_position(self, offset: int) -> Position:
        if offset < 0 or offset > len(self.text):
            raise RangeOutOfBounds(f"offset {offset} out of range")
        # Rightmost line start <= offset.
        lo, hi = 0, self.line_count - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._line_starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return Position(lo, offset - self._line_starts[lo])

    def range_to_offsets(self, rng: Range) -> tuple[int, int]:
        start = self.position_to_offset(rng.start)
        end = self.position_to_offset(rng.end)
        if end < start:
            raise RangeOutOfBounds("range end precedes start")
        return start, end

    def offsets_to_range(self, start: int, end: int) -> Range:
        return Range(self.offset_to_position(start), self.offset_to_position(end))

    def apply(self, new_version: int, changes: list[ContentChange]) -> None:
        """Apply a change batch atomically; raises with state unchanged."""
        if new_version <= self.version:
            raise StaleVersion(
                f"version {new_version} not greater than {self.version}"
            )
        text = self.text
        for change in changes:
            if change.range is None:
                text = change.text
            else:
                # Ranges are resolved against the text as changed so far.
                scratch = TextDocument(self.uri, self.version, text)
                start, end = scratch.range_to_offsets(change.range)
                text = text[:start] + change.text + text[end:]
        self.text = text
        self.version = new_version
        self._line_starts = line_starts(text)


class DocumentStore:
    """All open documents; mutations per document are serialized."""

    def __init__(self) -> None:
        self._docs: dict[str, TextDocument] = {}
        self._lock = threading.Lock()

    def open(self, uri: str, version: int, text: str) -> TextDocument:
        with self._lock:
            if uri in self._docs:
                raise AlreadyOpen(f"document already open: {uri}")
            doc = TextDocument(uri, version, text)
            self._docs[uri] = doc
            return doc

    def get(self, uri: str) -> TextDocument:
        with self._lock:
            doc = self._docs.get(uri)
        if doc is None:
            raise NotOpen(f"document not open: {uri}")
        return doc

    def apply_changes(
        self, uri: str, new_version: int, changes: list[ContentChange]
    ) -> TextDocument:
        doc = self.get(uri)
        doc.apply(new_version, changes)
        return doc

    def close(self, uri: str) -> None:
        with self._lock:
            if uri not in self._docs:
                raise NotOpen(f"document not open: {uri}")
            del self._docs[uri]

    def uris(self) -> list[str]:
        with self._lock:
            return sorted(self._docs)
