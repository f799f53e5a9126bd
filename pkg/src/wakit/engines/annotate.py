"""Lexicon-backed hover glosses and category highlight spans."""

from __future__ import annotations

from .resources import Dictionary, Lexicon
from .tokenize import tokenize


def define(dictionary: Dictionary, word: str) -> str | None:
    """Case-folded gloss lookup."""
    return dictionary.lookup(word)


def hover_at(dictionary: Dictionary, text: str, offset: int):
    """(gloss, start, end) of the token under the cursor, or None."""
    for tok in tokenize(text):
        if tok.start <= offset <= tok.end:
            gloss = dictionary.lookup(tok.text)
            if gloss is None:
                return None
            return gloss, tok.start, tok.end
    return None


def highlight(lexicon: Lexicon, text: str) -> list[tuple[int, int, str]]:
    """(start, end, scope) spans for tokens with a lexicon category.

    Tokens are disjoint, so spans are non-overlapping and sorted by start.
    """
    spans = []
    for tok in tokenize(text):
        category = lexicon.category(tok.text)
        if category:
            spans.append((tok.start, tok.end, category))
    return spans
