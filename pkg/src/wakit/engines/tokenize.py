"""Shared tokenizer and sentence segmentation.

Tokens are maximal non-whitespace runs with leading/trailing punctuation
stripped; inner apostrophes and hyphens survive. Lookups case-fold, edits
keep the original surface form.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

_WORD_RUN = re.compile(r"\S+")

# Sentence-final punctuation followed by whitespace or end of text.
_SENTENCE_END = re.compile(r"[.!?](?=\s|$)")

# Dotted tokens that do not end a sentence.
ABBREVIATIONS = frozenset(
    {"mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "e.g.", "i.e.", "etc.", "vs."}
)


@dataclass(frozen=True)
class Token:
    text: str
    start: int  # scalar-value offset into the source text
    end: int
    sentence_initial: bool = False

    @property
    def folded(self) -> str:
        return self.text.casefold()


def _strip_punctuation(run: str, start: int) -> tuple[str, int, int]:
    lo, hi = 0, len(run)
    while lo < hi and _is_strippable(run[lo]):
        lo += 1
    while hi > lo and _is_strippable(run[hi - 1]):
        hi -= 1
    return run[lo:hi], start + lo, start + hi


def _is_strippable(ch: str) -> bool:
    cat = unicodedata.category(ch)
    return cat.startswith("P") or cat.startswith("S")


def tokenize(text: str) -> list[Token]:
    """Tokens in order, with sentence-initial flags."""
    boundaries = sentence_starts(text)
    tokens: list[Token] = []
    boundary_idx = 0
    seen_in_sentence = False
    for m in _WORD_RUN.finditer(text):
        word, start, end = _strip_punctuation(m.group(), m.start())
        if not word:
            continue
        while (
            boundary_idx + 1 < len(boundaries)
            and boundaries[boundary_idx + 1] <= start
        ):
            boundary_idx += 1
            seen_in_sentence = False
        tokens.append(Token(word, start, end, not seen_in_sentence))
        seen_in_sentence = True
    return tokens


def sentence_starts(text: str) -> list[int]:
    """Offsets where sentences begin, always including 0."""
    starts = [0]
    for m in _SENTENCE_END.finditer(text):
        # Skip abbreviation periods: check the whitespace-delimited run
        # ending at the punctuation mark.
        run_start = m.start()
        while run_start > 0 and not text[run_start - 1].isspace():
            run_start -= 1
        run = text[run_start : m.end()].casefold()
        if run in ABBREVIATIONS:
            continue
        starts.append(m.end())
    return starts


def token_at(tokens: list[Token], offset: int) -> Token | None:
    """Token whose span contains or abuts the given offset."""
    for tok in tokens:
        if tok.start <= offset <= tok.end:
            return tok
    return None
