"""Command-line entry point: serve, check, index stats, conformance run.

Exit codes: 0 success, 1 validation/conformance failure, 2 transport or
fatal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .capabilities import FEATURES, CapabilitySet
from .engines_bundle import DATA_FILES, EngineBundle
from .engines.resources import ResourceError
from .harness import run_suite
from .search import InvertedIndex
from .server import Server, ServerSettings

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_FATAL = 2

DEFAULT_DATA_DIR = Path(__file__).parent / "data"


def _add_serve_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--transport", choices=["stdio", "tcp", "ws"], default="stdio")
    parser.add_argument("--port", type=int, default=0, help="tcp/ws port; 0 = ephemeral")
    parser.add_argument("--data", type=Path, default=None, help="data directory")
    parser.add_argument("--config", type=Path, default=None, help="optional JSON config file")
    parser.add_argument("--max-items", type=int, default=None)
    parser.add_argument("--max-rewrites", type=int, default=None)
    parser.add_argument("--search-max-results", type=int, default=None)
    parser.add_argument("--k1", type=float, default=None, help="BM25 k1")
    parser.add_argument("--b", type=float, default=None, help="BM25 b")
    parser.add_argument("--sync", choices=["incremental", "full"], default=None)
    parser.add_argument(
        "--disable",
        action="append",
        default=[],
        choices=list(FEATURES),
        help="disable a capability (repeatable)",
    )
    parser.add_argument("--debug", action="store_true", help="expose __debug requests")
    parser.add_argument(
        "--search-delay-ms",
        type=int,
        default=None,
        help="artificial search delay, for cancellation testing",
    )


def build_settings(args: argparse.Namespace) -> tuple[ServerSettings, Path]:
    config: dict = {}
    if args.config:
        config = json.loads(args.config.read_text(encoding="utf-8"))

    def pick(flag, key, default):
        if flag is not None:
            return flag
        return config.get(key, default)

    data_dir = Path(pick(args.data, "data", DEFAULT_DATA_DIR))
    caps = CapabilitySet(syncKind=pick(args.sync, "syncKind", "incremental"))
    disabled = set(args.disable) | set(config.get("disable", []))
    for feature in disabled:
        caps = caps.without(feature)
    settings = ServerSettings(
        capabilities=caps,
        max_items=pick(args.max_items, "maxItems", 10),
        max_rewrites=pick(args.max_rewrites, "maxRewrites", 10),
        search_max_results=pick(args.search_max_results, "searchMaxResults", 10),
        bm25_k1=pick(args.k1, "k1", 1.2),
        bm25_b=pick(args.b, "b", 0.75),
        debug=args.debug or bool(config.get("debug", False)),
        search_delay_ms=pick(args.search_delay_ms, "searchDelayMs", 0),
    )
    if settings.max_items <= 0 or settings.max_rewrites <= 0 or settings.search_max_results <= 0:
        raise ValueError("limits must be positive")
    return settings, data_dir


def cmd_serve(args: argparse.Namespace) -> int:
    from . import transports

    try:
        settings, data_dir = build_settings(args)
        bundle = EngineBundle.load(data_dir, settings.bm25_k1, settings.bm25_b)
    except (ValueError, OSError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL
    server = Server(bundle, settings)
    if args.transport == "stdio":
        return transports.serve_stdio(server)
    if args.transport == "tcp":
        return transports.serve_tcp(server, args.port)
    return transports.serve_websocket(server, args.port)


def cmd_check(args: argparse.Namespace) -> int:
    data_dir = args.data or DEFAULT_DATA_DIR
    problems = []
    loaded = {}
    missing = [
        name for name in DATA_FILES.values() if not (data_dir / name).is_file()
    ]
    for name in missing:
        problems.append(f"{data_dir / name}: file not found")
    if not missing:
        try:
            bundle = EngineBundle.load(data_dir)
            loaded = {
                "lexicon entries": len(bundle.lexicon),
                "dictionary entries": len(bundle.dictionary),
                "confusion entries": len(bundle.confusion),
                "thesaurus entries": len(bundle.thesaurus),
                "corpus sentences": len(bundle.corpus),
            }
        except ResourceError as exc:
            problems.append(str(exc))
    for key, value in loaded.items():
        print(f"{key}: {value}")
    for problem in problems:
        print(f"error: {problem}", file=sys.stderr)
    return EXIT_FAILURE if problems else EXIT_OK


def cmd_index_stats(args: argparse.Namespace) -> int:
    corpus_path = args.corpus or (args.data or DEFAULT_DATA_DIR) / "corpus.txt"
    try:
        sentences = Path(corpus_path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    index = InvertedIndex(sentences)
    print(f"sentences: {index.n_docs}")
    print(f"vocabulary: {index.vocabulary_size}")
    print(f"avgDocLength: {index.avg_doc_length:.4f}")
    return EXIT_OK


def cmd_conformance_run(args: argparse.Namespace) -> int:
    report = run_suite(args.server, args.directory, timeout=args.timeout)
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        print(report.to_text())
    return EXIT_OK if report.failed == 0 else EXIT_FAILURE


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING)
    parser = argparse.ArgumentParser(prog="wakit")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the reference server")
    _add_serve_args(serve)
    serve.set_defaults(func=cmd_serve)

    check = sub.add_parser("check", help="validate a data directory")
    check.add_argument("--data", type=Path, default=None)
    check.set_defaults(func=cmd_check)

    index = sub.add_parser("index", help="index utilities")
    index_sub = index.add_subparsers(dest="index_command", required=True)
    stats = index_sub.add_parser("stats", help="print corpus index statistics")
    stats.add_argument("--corpus", type=Path, default=None)
    stats.add_argument("--data", type=Path, default=None)
    stats.set_defaults(func=cmd_index_stats)

    conformance = sub.add_parser("conformance", help="conformance harness")
    conf_sub = conformance.add_subparsers(dest="conformance_command", required=True)
    run = conf_sub.add_parser("run", help="replay a directory of transcripts")
    run.add_argument("directory", type=Path)
    run.add_argument("--server", required=True, help="server command line")
    run.add_argument("--timeout", type=float, default=5.0, help="step timeout seconds")
    run.add_argument("--json", action="store_true", help="emit the report as JSON")
    run.set_defaults(func=cmd_conformance_run)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
