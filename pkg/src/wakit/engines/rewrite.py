"""Synonym-substitution rewriting of a selected span of text."""

from __future__ import annotations

import itertools

from .resources import Thesaurus
from .tokenize import tokenize


def rewrite(thesaurus: Thesaurus, selection: str, cap: int = 10) -> list[str]:
    """Alternative renderings of the selection, capped.

    For each token with thesaurus synonyms, the options are the original
    followed by its synonyms in file order. The cartesian product is
    enumerated leftmost-word-major; the all-original combination is
    skipped, so the selection itself is never returned.
    """
    tokens = tokenize(selection)
    hits = [t for t in tokens if thesaurus.synonyms(t.text)]
    if not hits:
        return []
    options: list[list[tuple[int, int, str]]] = []
    for tok in hits:
        alts = [(tok.start, tok.end, tok.text)]
        for syn in thesaurus.synonyms(tok.text):
            if tok.text[:1].isupper():
                syn = syn[:1].upper() + syn[1:]
            alts.append((tok.start, tok.end, syn))
        options.append(alts)

    out: list[str] = []
    for combo in itertools.product(*options):
        if all(repl == tok.text for (_, _, repl), tok in zip(combo, hits)):
            continue
        text = selection
        for start, end, repl in sorted(combo, reverse=True):
            text = text[:start] + repl + text[end:]
        out.append(text)
        if len(out) >= cap:
            break
    return out
