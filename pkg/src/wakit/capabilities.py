"""Capability flags and the payload types the eight feature methods carry."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .documents import Range

# Feature flag names, in the order the capability table lists them.
FEATURES = (
    "syntaxHighlight",
    "diagnostics",
    "codeAction",
    "completion",
    "rewriting",
    "definition",
    "hover",
    "search",
)

# Request method backing each feature; diagnostics is the push notification.
FEATURE_METHODS = {
    "syntaxHighlight": "textDocument/syntaxHighlight",
    "diagnostics": "textDocument/publishDiagnostics",
    "codeAction": "textDocument/codeAction",
    "completion": "textDocument/completion",
    "rewriting": "textDocument/rewriting",
    "definition": "textDocument/definition",
    "hover": "textDocument/hover",
    "search": "workspace/search",
}


@dataclass(frozen=True)
class CapabilitySet:
    syntaxHighlight: bool = True
    diagnostics: bool = True
    codeAction: bool = True
    completion: bool = True
    rewriting: bool = True
    definition: bool = True
    hover: bool = True
    search: bool = True
    syncKind: str = "incremental"  # or "full"

    def enabled(self, feature: str) -> bool:
        return bool(getattr(self, feature))

    def to_json(self) -> dict:
        out = {name: bool(getattr(self, name)) for name in FEATURES}
        out["syncKind"] = self.syncKind
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CapabilitySet":
        kwargs = {name: bool(obj.get(name, False)) for name in FEATURES}
        kwargs["syncKind"] = obj.get("syncKind", "incremental")
        return cls(**kwargs)

    def without(self, feature: str) -> "CapabilitySet":
        if feature not in FEATURES:
            raise ValueError(f"unknown feature: {feature}")
        kwargs = {name: getattr(self, name) for name in FEATURES}
        kwargs["syncKind"] = self.syncKind
        kwargs[feature] = False
        return CapabilitySet(**kwargs)


class Severity(Enum):
    ERROR = 1
    WARNING = 2
    INFO = 3


@dataclass(frozen=True)
class Diagnostic:
    range: Range
    severity: Severity
    code: str
    message: str

    def to_json(self) -> dict:
        return {
            "range": self.range.to_json(),
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
        }


@dataclass(frozen=True)
class TextEdit:
    uri: str
    range: Range
    newText: str

    def to_json(self) -> dict:
        return {"uri": self.uri, "range": self.range.to_json(), "newText": self.newText}


@dataclass(frozen=True)
class CodeAction:
    title: str
    diagnostics: tuple[str, ...]
    edits: tuple[TextEdit, ...]

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "diagnostics": list(self.diagnostics),
            "edit": {"edits": [e.to_json() for e in self.edits]},
        }


@dataclass(frozen=True)
class HighlightSpan:
    range: Range
    scope: str

    def to_json(self) -> dict:
        return {"range": self.range.to_json(), "scope": self.scope}


@dataclass(frozen=True)
class CompletionItem:
    label: str
    kind: str  # "word" | "phrase"
    insertText: str
    sortKey: str

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "insertText": self.insertText,
            "sortKey": self.sortKey,
        }


@dataclass(frozen=True)
class RewriteChoice:
    range: Range
    newText: str
    label: str

    def to_json(self) -> dict:
        return {
            "range": self.range.to_json(),
            "newText": self.newText,
            "label": self.label,
        }


@dataclass(frozen=True)
class SearchResult:
    text: str
    source: str
    score: float
    highlights: tuple[Range, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "text": self.text,
            "source": self.source,
            "score": self.score,
            "highlights": [r.to_json() for r in self.highlights],
        }
