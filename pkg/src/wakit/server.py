"""Reference writing-assistance server: dispatch, handlers, transports.

The server is transport-agnostic: a transport feeds message bodies to
:meth:`Server.handle_body` and supplies a ``send`` callable for outbound
bodies. Document-scoped handlers run serially on the reader thread;
workspace/search runs on a worker thread and is cancellable.
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

from . import engines_bundle
from .capabilities import (
    FEATURE_METHODS,
    CapabilitySet,
    CompletionItem,
    RewriteChoice,
    SearchResult,
)
from .documents import (
    ContentChange,
    DocumentError,
    DocumentStore,
    Position,
    Range,
    RangeOutOfBounds,
    TextDocument,
)
from .engines.tokenize import tokenize
from .lifecycle import LifecycleState, Verdict, lifecycle_guard
from .messages import (
    INTERNAL_ERROR,
    INVALID_PARAMS,
    INVALID_REQUEST,
    METHOD_NOT_FOUND,
    REQUEST_CANCELLED,
    MessageError,
    MessageKind,
    RpcError,
    RpcMessage,
    error_response,
    notification,
    parse_message,
    response,
)

log = logging.getLogger("wakit.server")


class HandlerError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.rpc_error = RpcError(code, message)


def invalid_params(message: str) -> HandlerError:
    return HandlerError(INVALID_PARAMS, message)


@dataclass
class ServerSettings:
    capabilities: CapabilitySet = field(default_factory=CapabilitySet)
    max_items: int = 10
    max_rewrites: int = 10
    search_max_results: int = 10
    bm25_k1: float = 1.2
    bm25_b: float = 0.75
    debug: bool = False
    # Test-only: artificial delay inside workspace/search, for exercising
    # cancellation from the outside.
    search_delay_ms: int = 0


class Server:
    def __init__(
        self,
        engines: "engines_bundle.EngineBundle",
        settings: Optional[ServerSettings] = None,
        drop_responses_for: Optional[set[str]] = None,
    ):
        self.engines = engines
        self.settings = settings or ServerSettings()
        self.caps = self.settings.capabilities
        self.store = DocumentStore()
        self.state = LifecycleState.UNINITIALIZED
        self.shutdown_received = False
        self.exit_code: Optional[int] = None
        self._send: Callable[[bytes], None] = lambda body: None
        self._send_lock = threading.Lock()
        self._cancel_flags: dict[Any, threading.Event] = {}
        self._cancel_lock = threading.Lock()
        self._drop_responses_for = drop_responses_for or set()
        self._search_threads: list[threading.Thread] = []

    # -- outbound ----------------------------------------------------------

    def attach(self, send: Callable[[bytes], None]) -> None:
        self._send = send

    def _emit(self, message: RpcMessage) -> None:
        with self._send_lock:
            self._send(message.serialize())

    def _respond(self, msg: RpcMessage, method: Optional[str] = None) -> None:
        if method is not None and method in self._drop_responses_for:
            log.info("fixture: dropping response for %s", method)
            return
        self._emit(msg)

    # -- inbound -----------------------------------------------------------

    def handle_body(self, body: bytes) -> None:
        """Process one inbound message body; never raises."""
        try:
            message = parse_message(body)
        except MessageError as exc:
            self._respond(error_response(exc.msg_id, exc.error))
            return

        gate = lifecycle_guard(self.state, message)
        if gate.verdict is Verdict.REJECT:
            self._respond(error_response(message.id, gate.error))
            return
        if gate.verdict is Verdict.DROP:
            return

        if message.kind is MessageKind.REQUEST:
            self._handle_request(message)
        elif message.kind is MessageKind.NOTIFICATION:
            self._handle_notification(message)
        # Client responses: no server->client requests exist, ignore.

    def _handle_request(self, msg: RpcMessage) -> None:
        method = msg.method or ""
        if method == "workspace/search" and self.caps.enabled("search"):
            self._start_search(msg)
            return
        try:
            result = self._dispatch_request(msg)
        except HandlerError as exc:
            self._respond(error_response(msg.id, exc.rpc_error), method)
        except DocumentError as exc:
            self._respond(
                error_response(msg.id, RpcError(INVALID_PARAMS, str(exc))), method
            )
        except Exception as exc:  # pragma: no cover - defensive
            log.exception("handler failure for %s", method)
            self._respond(
                error_response(msg.id, RpcError(INTERNAL_ERROR, str(exc))), method
            )
        else:
            self._respond(response(msg.id, result), method)
        finally:
            self._forget_cancel(msg.id)

    def _dispatch_request(self, msg: RpcMessage) -> Any:
        method = msg.method or ""
        params = msg.params if isinstance(msg.params, dict) else {}
        if method == "initialize":
            return self._on_initialize(params)
        if method == "shutdown":
            self.state = LifecycleState.SHUTTING_DOWN
            self.shutdown_received = True
            return None
        if method == "__debug/dumpText" and self.settings.debug:
            doc = self._doc(params)
            return {"uri": doc.uri, "version": doc.version, "text": doc.text}

        feature = _FEATURE_BY_METHOD.get(method)
        if feature is not None and not self.caps.enabled(feature):
            raise HandlerError(METHOD_NOT_FOUND, f"capability not advertised: {method}")

        handler = {
            "textDocument/syntaxHighlight": self._on_syntax_highlight,
            "textDocument/codeAction": self._on_code_action,
            "textDocument/completion": self._on_completion,
            "textDocument/rewriting": self._on_rewriting,
            "textDocument/definition": self._on_definition,
            "textDocument/hover": self._on_hover,
        }.get(method)
        if handler is None:
            raise HandlerError(METHOD_NOT_FOUND, f"unknown method: {method}")
        return handler(params)

    def _handle_notification(self, msg: RpcMessage) -> None:
        method = msg.method or ""
        params = msg.params if isinstance(msg.params, dict) else {}
        try:
            if method == "initialized":
                if self.state is LifecycleState.INITIALIZING:
                    self.state = LifecycleState.INITIALIZED
            elif method == "exit":
                self.exit_code = 0 if self.shutdown_received else 1
                self.state = LifecycleState.EXITED
            elif method == "$/cancelRequest":
                self._cancel(params.get("id"))
            elif method == "textDocument/didOpen":
                self._on_did_open(params)
            elif method == "textDocument/didChange":
                self._on_did_change(params)
            elif method == "textDocument/didClose":
                self._on_did_close(params)
            else:
                log.debug("dropping unknown notification %s", method)
        except (DocumentError, HandlerError) as exc:
            # Notifications get no response; surface on stderr only.
            log.warning("notification %s failed: %s", method, exc)

    # -- lifecycle ---------------------------------------------------------

    def _on_initialize(self, params: dict) -> dict:
        if self.state is not LifecycleState.UNINITIALIZED:
            raise HandlerError(INVALID_REQUEST, "initialize received twice")
        self.state = LifecycleState.INITIALIZING
        return {"serverCapabilities": self.caps.to_json()}

    # -- cancellation ------------------------------------------------------

    def _cancel_event(self, msg_id: Any) -> threading.Event:
        with self._cancel_lock:
            event = self._cancel_flags.get(msg_id)
            if event is None:
                event = threading.Event()
                self._cancel_flags[msg_id] = event
            return event

    def _cancel(self, msg_id: Any) -> None:
        with self._cancel_lock:
            event = self._cancel_flags.get(msg_id)
        if event is not None:
            event.set()

    def _forget_cancel(self, msg_id: Any) -> None:
        with self._cancel_lock:
            self._cancel_flags.pop(msg_id, None)

    # -- document sync -----------------------------------------------------

    def _on_did_open(self, params: dict) -> None:
        td = params.get("textDocument") or {}
        uri, version, text = td.get("uri"), td.get("version"), td.get("text")
        if not isinstance(uri, str) or not isinstance(version, int) or not isinstance(text, str):
            raise invalid_params("didOpen requires textDocument {uri, version, text}")
        self.store.open(uri, version, text)
        self._publish_diagnostics(uri)

    def _on_did_change(self, params: dict) -> None:
        td = params.get("textDocument") or {}
        uri, version = td.get("uri"), td.get("version")
        raw_changes = params.get("contentChanges")
        if not isinstance(uri, str) or not isinstance(version, int) or not isinstance(raw_changes, list):
            raise invalid_params("didChange requires textDocument {uri, version} + contentChanges")
        changes = []
        for raw in raw_changes:
            rng = Range.from_json(raw["range"]) if raw.get("range") else None
            changes.append(ContentChange(raw.get("text", ""), rng))
        self.store.apply_changes(uri, version, changes)
        self._publish_diagnostics(uri)

    def _on_did_close(self, params: dict) -> None:
        td = params.get("textDocument") or {}
        uri = td.get("uri")
        if not isinstance(uri, str):
            raise invalid_params("didClose requires textDocument {uri}")
        self.store.close(uri)

    def _publish_diagnostics(self, uri: str) -> None:
        if not self.caps.enabled("diagnostics"):
            return
        doc = self.store.get(uri)
        diagnostics = self.engines.ged.run(doc.text)
        self._emit(
            notification(
                "textDocument/publishDiagnostics",
                {
                    "uri": uri,
                    "version": doc.version,
                    "diagnostics": [d.to_json() for d in diagnostics],
                },
            )
        )

    # -- capability handlers -------------------------------------------------

    def _doc(self, params: dict) -> TextDocument:
        td = params.get("textDocument") or {}
        uri = td.get("uri")
        if not isinstance(uri, str):
            raise invalid_params("missing textDocument.uri")
        return self.store.get(uri)

    def _position(self, doc: TextDocument, params: dict) -> int:
        raw = params.get("position")
        if not isinstance(raw, dict):
            raise invalid_params("missing position")
        try:
            return doc.position_to_offset(Position.from_json(raw))
        except RangeOutOfBounds as exc:
            raise invalid_params(str(exc)) from None

    def _on_syntax_highlight(self, params: dict) -> list:
        doc = self._doc(params)
        spans = []
        for start, end, scope in self.engines.highlight(doc.text):
            spans.append(
                {"range": doc.offsets_to_range(start, end).to_json(), "scope": scope}
            )
        return spans

    def _on_code_action(self, params: dict) -> list:
        doc = self._doc(params)
        raw_range = params.get("range")
        if not isinstance(raw_range, dict):
            raise invalid_params("missing range")
        try:
            start, end = doc.range_to_offsets(Range.from_json(raw_range))
        except RangeOutOfBounds as exc:
            raise invalid_params(str(exc)) from None
        codes = params.get("diagnosticCodes")
        actions = []
        for diag in self.engines.ged.run(doc.text):
            d_start, d_end = doc.range_to_offsets(diag.range)
            if d_end < start or d_start > end:
                continue
            if isinstance(codes, list) and codes and diag.code not in codes:
                continue
            for action in self.engines.gec.actions_for(doc.uri, doc.text, diag):
                actions.append(action.to_json())
        return actions

    def _on_completion(self, params: dict) -> list:
        doc = self._doc(params)
        offset = self._position(doc, params)
        text = doc.text
        items: list[CompletionItem] = []

        prefix_token = None
        for tok in tokenize(text):
            if tok.start < offset <= tok.end:
                prefix_token = tok
                break
        if prefix_token is not None:
            prefix = text[prefix_token.start : offset]
            for word in self.engines.complete_prefix(prefix):
                items.append(CompletionItem(word, "word", word, word))
        elif offset > 0 and text[offset - 1].isspace():
            before = [t for t in tokenize(text[:offset]) if t.end <= offset - 1]
            if before:
                prev = before[-1].folded
                for word in self.engines.ngram.suggest_next(prev):
                    count = self.engines.ngram.counts[prev][word]
                    sort_key = f"{10**8 - count:08d} {word}"
                    items.append(CompletionItem(word, "phrase", word, sort_key))
        items.sort(key=lambda it: it.sortKey)
        return [it.to_json() for it in items[: self.settings.max_items]]

    def _on_rewriting(self, params: dict) -> list:
        doc = self._doc(params)
        raw_range = params.get("range")
        if not isinstance(raw_range, dict):
            raise invalid_params("missing range")
        rng = Range.from_json(raw_range)
        try:
            start, end = doc.range_to_offsets(rng)
        except RangeOutOfBounds as exc:
            raise invalid_params(str(exc)) from None
        if start == end:
            raise invalid_params("rewriting requires a non-empty selection")
        selection = doc.text[start:end]
        choices = []
        for alt in self.engines.rewrite(selection, self.settings.max_rewrites):
            choices.append(RewriteChoice(rng, alt, alt).to_json())
        return choices

    def _on_definition(self, params: dict):
        doc = self._doc(params)
        offset = self._position(doc, params)
        span = self.engines.antecedent(doc.text, offset)
        if span is None:
            return None
        return doc.offsets_to_range(span[0], span[1]).to_json()

    def _on_hover(self, params: dict):
        doc = self._doc(params)
        offset = self._position(doc, params)
        hit = self.engines.hover(doc.text, offset)
        if hit is None:
            return None
        gloss, start, end = hit
        return {"contents": gloss, "range": doc.offsets_to_range(start, end).to_json()}

    # -- search (worker thread, cancellable) --------------------------------

    def _start_search(self, msg: RpcMessage) -> None:
        cancel = self._cancel_event(msg.id)
        thread = threading.Thread(
            target=self._run_search, args=(msg, cancel), daemon=True
        )
        self._search_threads.append(thread)
        thread.start()

    def _run_search(self, msg: RpcMessage, cancel: threading.Event) -> None:
        method = msg.method or ""
        try:
            result = self._do_search(
                msg.params if isinstance(msg.params, dict) else {}, cancel
            )
        except HandlerError as exc:
            self._respond(error_response(msg.id, exc.rpc_error), method)
        except Exception as exc:  # pragma: no cover - defensive
            log.exception("search failure")
            self._respond(
                error_response(msg.id, RpcError(INTERNAL_ERROR, str(exc))), method
            )
        else:
            self._respond(response(msg.id, result), method)
        finally:
            self._forget_cancel(msg.id)

    def _do_search(self, params: dict, cancel: threading.Event) -> list:
        query = params.get("query")
        if not isinstance(query, str):
            raise invalid_params("missing query")
        terms = [t.folded for t in tokenize(query)]
        if not terms:
            raise invalid_params("query is empty after tokenization")
        max_results = params.get("maxResults", self.settings.search_max_results)
        if not isinstance(max_results, int) or max_results < 0:
            raise invalid_params("maxResults must be a nonnegative integer")

        deadline = time.monotonic() + self.settings.search_delay_ms / 1000.0
        while self.settings.search_delay_ms and time.monotonic() < deadline:
            if cancel.wait(timeout=0.01):
                break
        if cancel.is_set():
            raise HandlerError(REQUEST_CANCELLED, "request cancelled")

        results = []
        for sid, score in self.engines.index.query(
            terms, max_results, self.engines.bm25_params
        ):
            sentence = self.engines.index.sentences[sid]
            highlights = tuple(
                Range(Position(0, t.start), Position(0, t.end))
                for t in tokenize(sentence)
                if t.folded in terms
            )
            results.append(
                SearchResult(sentence, f"corpus#{sid}", score, highlights).to_json()
            )
        return results

    def wait_for_searches(self, timeout: float = 5.0) -> None:
        for thread in self._search_threads:
            thread.join(timeout)


_FEATURE_BY_METHOD = {
    method: feature for feature, method in FEATURE_METHODS.items()
}


def build_server(
    data_dir: Path,
    settings: Optional[ServerSettings] = None,
    drop_responses_for: Optional[set[str]] = None,
) -> Server:
    bundle = engines_bundle.EngineBundle.load(
        data_dir,
        bm25_k1=(settings.bm25_k1 if settings else 1.2),
        bm25_b=(settings.bm25_b if settings else 0.75),
    )
    return Server(bundle, settings, drop_responses_for)
