"""In-memory inverted index with BM25 ranking over a sentence corpus."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engines.tokenize import tokenize


@dataclass(frozen=True)
class Bm25Params:
    k1: float = 1.2
    b: float = 0.75

    def __post_init__(self) -> None:
        if self.k1 < 0:
            raise ValueError("k1 must be nonnegative")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError("b must be in [0, 1]")


def corpus_tokens(sentence: str) -> list[str]:
    return [t.folded for t in tokenize(sentence)]


class InvertedIndex:
    """Immutable after build; postings sorted by sentence id."""

    def __init__(self, corpus: list[str]):
        self.sentences = list(corpus)
        self.postings: dict[str, list[tuple[int, int]]] = {}
        self.doc_lengths: list[int] = []
        for sid, sentence in enumerate(self.sentences):
            tokens = corpus_tokens(sentence)
            self.doc_lengths.append(len(tokens))
            tf: dict[str, int] = {}
            for term in tokens:
                tf[term] = tf.get(term, 0) + 1
            for term in sorted(tf):
                self.postings.setdefault(term, []).append((sid, tf[term]))
        self.n_docs = len(self.sentences)
        total = sum(self.doc_lengths)
        self.avg_doc_length = total / self.n_docs if self.n_docs else 0.0

    @property
    def vocabulary_size(self) -> int:
        return len(self.postings)

    def idf(self, term: str) -> float:
        """Nonnegative idf: ln((N - df + 0.5) / (df + 0.5) + 1)."""
        df = len(self.postings.get(term, ()))
        return math.log((self.n_docs - df + 0.5) / (df + 0.5) + 1.0)

    def query(
        self, terms: list[str], k: int, params: Bm25Params = Bm25Params()
    ) -> list[tuple[int, float]]:
        """Top-k (sentenceId, BM25 score), ordered by (-score, sentenceId)."""
        if k <= 0 or self.n_docs == 0:
            return []
        scores: dict[int, float] = {}
        for term in set(terms):
            postings = self.postings.get(term)
            if not postings:
                continue
            idf = self.idf(term)
            for sid, tf in postings:
                norm = tf + params.k1 * (
                    1.0 - params.b + params.b * self.doc_lengths[sid] / self.avg_doc_length
                )
                scores[sid] = scores.get(sid, 0.0) + idf * tf * (params.k1 + 1.0) / norm
        ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
        return ranked[:k]
