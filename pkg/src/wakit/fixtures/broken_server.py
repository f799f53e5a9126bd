"""Deliberately broken server for exercising the conformance harness.

Accepts the same flags as `wakit serve` but always speaks stdio and
silently drops the response to every textDocument/hover request:

    python -m wakit.fixtures.broken_server [serve flags]
"""

from __future__ import annotations

import argparse
import sys

from ..cli import _add_serve_args, build_settings
from ..engines_bundle import EngineBundle
from ..server import Server
from ..transports import serve_stdio

DROPPED_METHOD = "textDocument/hover"


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser()
    _add_serve_args(parser)
    args = parser.parse_args(argv)
    settings, data_dir = build_settings(args)
    bundle = EngineBundle.load(data_dir, settings.bm25_k1, settings.bm25_b)
    server = Server(bundle, settings, drop_responses_for={DROPPED_METHOD})
    return serve_stdio(server)


if __name__ == "__main__":
    sys.exit(main())
