"""Rule-based grammatical error detection.

Rules, evaluated in order:
  repeated-word        consecutive identical tokens (case-folded)
  a-an                 article/vowel disagreement, letter-based with exceptions
  sentence-case        sentence-initial token starts lowercase
  confusion            token found in the misspelling confusion table
  double-space         run of two or more spaces

Rules are independent; overlapping findings from different rules are all
reported. Diagnostics are sorted by start position, then code.
"""

from __future__ import annotations

import re

from ..capabilities import Diagnostic, Severity
from ..documents import TextDocument
from .resources import ConfusionTable
from .tokenize import Token, tokenize

R_REPEATED = "repeated-word"
R_ARTICLE = "a-an"
R_SENTENCE_CASE = "sentence-case"
R_CONFUSION = "confusion"
R_DOUBLE_SPACE = "double-space"

# Letter-based a/an exceptions: vowel letter but consonant sound and vice versa.
AN_EXCEPTIONS = frozenset(
    {"hour", "hours", "honest", "honor", "honour", "heir", "heirs", "heirloom"}
)
A_EXCEPTIONS = frozenset(
    {
        "university",
        "universal",
        "unicorn",
        "union",
        "unit",
        "united",
        "user",
        "useful",
        "usual",
        "european",
        "one",
        "once",
    }
)

_SPACE_RUN = re.compile(r"  +")


def _wants_an(word: str) -> bool:
    folded = word.casefold()
    if folded in AN_EXCEPTIONS:
        return True
    if folded in A_EXCEPTIONS:
        return False
    return folded[:1] in "aeiou"


class GedEngine:
    """Deterministic function of (text, confusion table)."""

    def __init__(self, confusion: ConfusionTable):
        self.confusion = confusion

    def run(self, text: str) -> list[Diagnostic]:
        doc = TextDocument("mem:ged", 0, text)
        tokens = tokenize(text)
        found: list[tuple[int, int, str, Severity, str]] = []
        found.extend(self._repeated(tokens))
        found.extend(self._article(tokens))
        found.extend(self._sentence_case(tokens))
        found.extend(self._confusion(tokens))
        found.extend(self._double_space(text))
        found.sort(key=lambda f: (f[0], f[1], f[2]))
        return [
            Diagnostic(doc.offsets_to_range(start, end), severity, code, message)
            for start, end, code, severity, message in found
        ]

    def _repeated(self, tokens: list[Token]):
        for prev, tok in zip(tokens, tokens[1:]):
            if prev.folded == tok.folded:
                yield (
                    tok.start,
                    tok.end,
                    R_REPEATED,
                    Severity.WARNING,
                    f'Repeated word "{tok.text}"',
                )

    def _article(self, tokens: list[Token]):
        for tok, nxt in zip(tokens, tokens[1:]):
            folded = tok.folded
            if folded not in ("a", "an") or not nxt.text[:1].isalpha():
                continue
            wants_an = _wants_an(nxt.text)
            if folded == "a" and wants_an:
                yield (
                    tok.start,
                    tok.end,
                    R_ARTICLE,
                    Severity.ERROR,
                    f'Use "an" before "{nxt.text}"',
                )
            elif folded == "an" and not wants_an:
                yield (
                    tok.start,
                    tok.end,
                    R_ARTICLE,
                    Severity.ERROR,
                    f'Use "a" before "{nxt.text}"',
                )

    def _sentence_case(self, tokens: list[Token]):
        for tok in tokens:
            if tok.sentence_initial and tok.text[:1].isalpha() and tok.text[0].islower():
                yield (
                    tok.start,
                    tok.end,
                    R_SENTENCE_CASE,
                    Severity.WARNING,
                    f'Sentence should start with a capital letter: "{tok.text}"',
                )

    def _confusion(self, tokens: list[Token]):
        for tok in tokens:
            if self.confusion.corrections(tok.text):
                yield (
                    tok.start,
                    tok.end,
                    R_CONFUSION,
                    Severity.ERROR,
                    f'"{tok.text}" is a likely misspelling',
                )

    def _double_space(self, text: str):
        for m in _SPACE_RUN.finditer(text):
            yield (
                m.start(),
                m.end(),
                R_DOUBLE_SPACE,
                Severity.INFO,
                "Multiple consecutive spaces",
            )
