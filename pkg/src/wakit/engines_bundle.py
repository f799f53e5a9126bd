"""Load every engine from a data directory into one stateless bundle."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .engines import annotate, jump
from .engines import rewrite as rewrite_mod
from .engines.completion import NgramModel, Trie, build_trie, complete_prefix
from .engines.ged import GedEngine
from .engines.gec import GecEngine
from .engines.resources import (
    ConfusionTable,
    Dictionary,
    Lexicon,
    Thesaurus,
    load_corpus,
)
from .search import Bm25Params, InvertedIndex

DATA_FILES = {
    "lexicon": "lexicon.tsv",
    "confusion": "confusion.tsv",
    "thesaurus": "thesaurus.tsv",
    "dictionary": "dictionary.tsv",
    "corpus": "corpus.txt",
}


@dataclass
class EngineBundle:
    lexicon: Lexicon
    dictionary: Dictionary
    confusion: ConfusionTable
    thesaurus: Thesaurus
    corpus: list[str]
    trie: Trie
    ngram: NgramModel
    ged: GedEngine
    gec: GecEngine
    index: InvertedIndex
    bm25_params: Bm25Params

    @classmethod
    def load(
        cls, data_dir: Path, bm25_k1: float = 1.2, bm25_b: float = 0.75
    ) -> "EngineBundle":
        paths = {key: data_dir / name for key, name in DATA_FILES.items()}
        missing = [str(p) for p in paths.values() if not p.is_file()]
        if missing:
            raise FileNotFoundError(f"missing data files: {', '.join(missing)}")
        lexicon = Lexicon.load(paths["lexicon"])
        dictionary = Dictionary.load(paths["dictionary"])
        confusion = ConfusionTable.load(paths["confusion"])
        thesaurus = Thesaurus.load(paths["thesaurus"])
        corpus = load_corpus(paths["corpus"])
        ged = GedEngine(confusion)
        return cls(
            lexicon=lexicon,
            dictionary=dictionary,
            confusion=confusion,
            thesaurus=thesaurus,
            corpus=corpus,
            trie=build_trie(lexicon.words()),
            ngram=NgramModel(corpus),
            ged=ged,
            gec=GecEngine(ged),
            index=InvertedIndex(corpus),
            bm25_params=Bm25Params(bm25_k1, bm25_b),
        )

    # Thin call-through helpers so the server reads naturally.

    def complete_prefix(self, prefix: str) -> list[str]:
        return complete_prefix(self.trie, prefix)

    def rewrite(self, selection: str, cap: int) -> list[str]:
        return rewrite_mod.rewrite(self.thesaurus, selection, cap)

    def antecedent(self, text: str, offset: int):
        return jump.antecedent(text, offset)

    def hover(self, text: str, offset: int):
        return annotate.hover_at(self.dictionary, text, offset)

    def highlight(self, text: str):
        return annotate.highlight(self.lexicon, text)
