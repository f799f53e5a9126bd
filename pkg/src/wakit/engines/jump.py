"""Pronoun-to-antecedent jump: nearest preceding capitalized candidate."""

from __future__ import annotations

from .tokenize import tokenize

PRONOUNS = frozenset(
    {
        "he", "him", "his", "she", "her", "hers", "it", "its",
        "they", "them", "their", "theirs", "this", "that", "these", "those",
    }
)

# Capitalized tokens skipped when they merely open a sentence.
SENTENCE_INITIAL_STOPWORDS = frozenset(
    {
        "the", "a", "an", "this", "that", "these", "those",
        "he", "she", "it", "they", "his", "her", "its", "their",
        "i", "we", "you", "my", "our", "your",
        "but", "and", "or", "so", "yet", "if", "when", "then", "there",
    }
)


def antecedent(text: str, offset: int) -> tuple[int, int] | None:
    """Offset span of the antecedent of the pronoun at offset, or None.

    A candidate is a capitalized token before the pronoun; capitalized
    tokens that open a sentence count only when they are not ordinary
    sentence-starters (stopword list), and pronouns never count.
    """
    tokens = tokenize(text)
    target = None
    for tok in tokens:
        if tok.start <= offset <= tok.end:
            target = tok
            break
    if target is None or target.folded not in PRONOUNS:
        return None
    for tok in reversed(tokens):
        if tok.end > target.start:
            continue
        if not tok.text[:1].isupper():
            continue
        if tok.folded in PRONOUNS:
            continue
        if tok.sentence_initial and tok.folded in SENTENCE_INITIAL_STOPWORDS:
            continue
        return (tok.start, tok.end)
    return None
