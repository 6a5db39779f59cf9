"""Text normalization: sentence splitting, tokenization, and input filters."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .corpus import ReferenceCorpus

# Tokens are runs of letters/digits, optionally joined by internal
# hyphens/apostrophes ("k-12", "don't" stay single tokens).
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*", re.UNICODE)
_SENTENCE_RE = re.compile(r"[.!?]+(?:\s+|$)")
_URL_RE = re.compile(r"^(?:\w+://\S+|www\.\S+)$", re.IGNORECASE)
_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class PreparedText:
    """Sentences of lowercased, punctuation-free tokens, in source order."""

    sentences: tuple[tuple[str, ...], ...]
    total_tokens: int

    def tokens(self):
        """Iterate all tokens in order."""
        for sent in self.sentences:
            yield from sent


def prepare(text: str, strip_urls: bool = False) -> PreparedText:
    """Normalize raw text into sentences of tokens.

    Sentence boundaries are runs of .!? followed by whitespace or end of
    input; URLs are dropped before tokenization when `strip_urls` is set.
    """
    if strip_urls:
        chunks = [c for c in _WS_RE.split(text) if c and not _URL_RE.match(c)]
        text = " ".join(chunks)
    sentences = []
    total = 0
    findall = _TOKEN_RE.findall
    for raw_sentence in _SENTENCE_RE.split(text.lower()):
        if not raw_sentence:
            continue
        tokens = tuple(findall(raw_sentence))
        if tokens:
            sentences.append(tokens)
            total += len(tokens)
    return PreparedText(sentences=tuple(sentences), total_tokens=total)


def is_english(prepared: PreparedText, raw: str, corpus: ReferenceCorpus) -> bool:
    """English heuristic: ASCII-only text with at most half unknown tokens."""
    if prepared.total_tokens == 0:
        return False
    if any(ord(c) > 127 for c in raw):
        return False
    unmatched = sum(1 for tok in prepared.tokens() if tok not in corpus.entries)
    return unmatched * 2 <= prepared.total_tokens


def matches_topic(prepared: PreparedText, terms: list[str] | tuple[str, ...]) -> bool:
    """True when any term occurs as a whole token; empty terms disable the filter."""
    if not terms:
        return True
    wanted = set(terms)
    return any(tok in wanted for tok in prepared.tokens())
