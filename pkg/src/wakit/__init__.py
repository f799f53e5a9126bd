"""Writing-assistance protocol kit: codec, document sync, capability
handlers, reference server, BM25 search, and conformance harness."""

__version__ = "0.1.0"
