"""Loaders for the TSV/plain-text resources backing the engines.

All files are UTF-8. Blank lines and lines starting with '#' are skipped.
Loaders raise ResourceError with the offending line number.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator


class ResourceError(Exception):
    def __init__(self, path: Path, line: int, problem: str):
        super().__init__(f"{path}:{line}: {problem}")
        self.path = path
        self.line = line
        self.problem = problem


def _rows(path: Path) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line.split("\t")


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    category: str
    gloss: str


class Lexicon:
    """word -> (category, gloss); lookups case-folded, duplicates rejected."""

    def __init__(self, entries: dict[str, LexiconEntry]):
        self._entries = entries
        self._sorted_words = sorted(entries)

    @classmethod
    def load(cls, path: Path) -> "Lexicon":
        entries: dict[str, LexiconEntry] = {}
        for lineno, cols in _rows(path):
            if len(cols) != 3:
                raise ResourceError(path, lineno, "expected 3 tab-separated columns")
            word, category, gloss = (c.strip() for c in cols)
            key = word.casefold()
            if key in entries:
                raise ResourceError(path, lineno, f"duplicate word: {word}")
            entries[key] = LexiconEntry(word, category, gloss)
        return cls(entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, word: str) -> bool:
        return word.casefold() in self._entries

    def get(self, word: str) -> LexiconEntry | None:
        return self._entries.get(word.casefold())

    def category(self, word: str) -> str | None:
        entry = self.get(word)
        return entry.category if entry else None

    def words(self) -> list[str]:
        """All words, case-folded, sorted."""
        return self._sorted_words


class Dictionary:
    """word -> gloss for hover; TSV with two columns, case-folded lookups."""

    def __init__(self, glosses: dict[str, str]):
        self._glosses = glosses

    @classmethod
    def load(cls, path: Path) -> "Dictionary":
        glosses: dict[str, str] = {}
        for lineno, cols in _rows(path):
            if len(cols) != 2:
                raise ResourceError(path, lineno, "expected 2 tab-separated columns")
            word, gloss = cols[0].strip(), cols[1].strip()
            key = word.casefold()
            if key in glosses:
                raise ResourceError(path, lineno, f"duplicate word: {word}")
            glosses[key] = gloss
        return cls(glosses)

    def __len__(self) -> int:
        return len(self._glosses)

    def lookup(self, word: str) -> str | None:
        return self._glosses.get(word.casefold())


class ConfusionTable:
    """Misspelling -> ordered replacement candidates."""

    def __init__(self, table: dict[str, tuple[str, ...]]):
        self._table = table

    @classmethod
    def load(cls, path: Path) -> "ConfusionTable":
        table: dict[str, tuple[str, ...]] = {}
        for lineno, cols in _rows(path):
            if len(cols) < 2:
                raise ResourceError(path, lineno, "expected wrong + at least one right")
            wrong = cols[0].strip().casefold()
            rights = tuple(c.strip() for c in cols[1:] if c.strip())
            if not rights:
                raise ResourceError(path, lineno, "empty replacement list")
            if wrong in table:
                raise ResourceError(path, lineno, f"duplicate entry: {wrong}")
            table[wrong] = rights
        return cls(table)

    def __len__(self) -> int:
        return len(self._table)

    def corrections(self, word: str) -> tuple[str, ...]:
        return self._table.get(word.casefold(), ())


class Thesaurus:
    """word -> ordered synonyms; a word is never its own synonym."""

    def __init__(self, synonyms: dict[str, tuple[str, ...]]):
        self._synonyms = synonyms

    @classmethod
    def load(cls, path: Path) -> "Thesaurus":
        synonyms: dict[str, tuple[str, ...]] = {}
        for lineno, cols in _rows(path):
            if len(cols) < 2:
                raise ResourceError(path, lineno, "expected word + at least one synonym")
            word = cols[0].strip().casefold()
            syns = tuple(c.strip() for c in cols[1:] if c.strip())
            if any(s.casefold() == word for s in syns):
                raise ResourceError(path, lineno, f"word is its own synonym: {word}")
            if word in synonyms:
                raise ResourceError(path, lineno, f"duplicate entry: {word}")
            synonyms[word] = syns
        return cls(synonyms)

    def __len__(self) -> int:
        return len(self._synonyms)

    def synonyms(self, word: str) -> tuple[str, ...]:
        return self._synonyms.get(word.casefold(), ())


def load_corpus(path: Path) -> list[str]:
    """One sentence per line; sentence id = 0-based line number."""
    return path.read_text(encoding="utf-8").splitlines()
