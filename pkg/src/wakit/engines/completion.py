"""Prefix completion over a lexicon trie and bigram next-word suggestion."""

from __future__ import annotations

from collections import Counter, defaultdict

from .tokenize import tokenize


class TrieNode:
    __slots__ = ("children", "is_word")

    def __init__(self) -> None:
        self.children: dict[str, TrieNode] = {}
        self.is_word = False


class Trie:
    def __init__(self) -> None:
        self.root = TrieNode()

    def insert(self, word: str) -> None:
        node = self.root
        for ch in word:
            node = node.children.setdefault(ch, TrieNode())
        node.is_word = True

    def with_prefix(self, prefix: str) -> list[str]:
        """All inserted words starting with prefix, lexicographic order."""
        node = self.root
        for ch in prefix:
            node = node.children.get(ch)
            if node is None:
                return []
        out: list[str] = []
        stack = [(prefix, node)]
        while stack:
            word, node = stack.pop()
            if node.is_word:
                out.append(word)
            for ch, child in node.children.items():
                stack.append((word + ch, child))
        out.sort()
        return out


def build_trie(words: list[str]) -> Trie:
    trie = Trie()
    for word in words:
        trie.insert(word.casefold())
    return trie


def complete_prefix(trie: Trie, prefix: str) -> list[str]:
    if not prefix:
        return []
    return trie.with_prefix(prefix.casefold())


class NgramModel:
    """Bigram counts over a sentence corpus, one sentence per line."""

    def __init__(self, corpus: list[str]):
        self.counts: dict[str, Counter] = defaultdict(Counter)
        for line in corpus:
            tokens = [t.folded for t in tokenize(line)]
            for w1, w2 in zip(tokens, tokens[1:]):
                self.counts[w1][w2] += 1

    def suggest_next(self, previous_word: str) -> list[str]:
        """Followers of previous_word by (-count, lexicographic)."""
        followers = self.counts.get(previous_word.casefold())
        if not followers:
            return []
        return sorted(followers, key=lambda w: (-followers[w], w))

    def context_mass(self, previous_word: str) -> int:
        """Total bigram count for a context word."""
        followers = self.counts.get(previous_word.casefold())
        return sum(followers.values()) if followers else 0
