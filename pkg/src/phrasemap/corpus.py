"""Fixed reference word-frequency corpus.

Word significance is scored against a static frequency table of general
English instead of collection-level document frequencies, so a document's
score never depends on what else is being processed. Two compact profiles
ship with the package (written and spoken English); any table in the same
TSV format can be substituted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

PROFILES = ("written", "spoken")

_PROFILE_FILES = {
    "written": "corpus_written.tsv",
    "spoken": "corpus_spoken.tsv",
}


class CorpusFormatError(ValueError):
    """Raised when a corpus file violates the word<TAB>count format."""


@dataclass(frozen=True)
class ReferenceCorpus:
    """Immutable word->frequency table with ranks (1 = most frequent).

    Safe to share across worker processes and request handlers.
    """

    entries: dict[str, int]
    rank: dict[str, int]
    total_tokens: int
    vocab_size: int
    source: str = ""

    def frequency(self, word: str) -> int:
        """Frequency of `word`, 0 if out of vocabulary."""
        return self.entries.get(word, 0)

    def rarity(self, word: str) -> float:
        """Smoothed log inverse frequency: ln((F+1) / (f(word)+1)).

        Strictly decreasing in frequency; out-of-vocabulary words score
        strictly above every in-vocabulary word.
        """
        return math.log((self.total_tokens + 1) / (self.entries.get(word, 0) + 1))

    def rank_rarity(self, word: str) -> float:
        """Alternative scorer: ln(1 + rank), unknown words ranked V+1."""
        return math.log(1 + self.rank.get(word, self.vocab_size + 1))

    def is_stopword(self, word: str, stop_rank: int) -> bool:
        """True for top-`stop_rank` ranked words, sub-2-char tokens and numbers."""
        if len(word) < 2 or word.isdigit():
            return True
        r = self.rank.get(word)
        return r is not None and r <= stop_rank


def load_corpus(path: str | Path) -> ReferenceCorpus:
    """Load a `word<TAB>frequency` TSV into a ranked ReferenceCorpus.

    Words are lowercased on load; ranks are assigned by descending
    frequency with ties broken lexicographically. Raises CorpusFormatError
    on malformed lines, duplicate words, or an empty file.
    """
    path = Path(path)
    entries: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                raise CorpusFormatError(f"{path}:{lineno}: empty line")
            parts = line.split("\t")
            if len(parts) != 2:
                raise CorpusFormatError(
                    f"{path}:{lineno}: expected word<TAB>frequency, got {line!r}"
                )
            word = parts[0].strip().lower()
            try:
                freq = int(parts[1])
            except ValueError:
                raise CorpusFormatError(
                    f"{path}:{lineno}: frequency is not an integer: {parts[1]!r}"
                ) from None
            if not word:
                raise CorpusFormatError(f"{path}:{lineno}: empty word")
            if freq < 1:
                raise CorpusFormatError(f"{path}:{lineno}: frequency must be >= 1")
            if word in entries:
                raise CorpusFormatError(f"{path}:{lineno}: duplicate word {word!r}")
            entries[word] = freq
    if not entries:
        raise CorpusFormatError(f"{path}: corpus file is empty")
    return build_corpus(entries, source=str(path))


def build_corpus(entries: dict[str, int], source: str = "") -> ReferenceCorpus:
    """Rank a word->frequency mapping (descending frequency, ties by word)."""
    ordered = sorted(entries.items(), key=lambda kv: (-kv[1], kv[0]))
    rank = {word: r for r, (word, _) in enumerate(ordered, start=1)}
    total = sum(entries.values())
    return ReferenceCorpus(
        entries=dict(entries),
        rank=rank,
        total_tokens=total,
        vocab_size=len(entries),
        source=source,
    )


def profile_path(profile: str) -> Path:
    """Filesystem path of a bundled corpus profile ('written' or 'spoken')."""
    try:
        name = _PROFILE_FILES[profile]
    except KeyError:
        raise ValueError(f"unknown corpus profile {profile!r}; choose from {PROFILES}") from None
    return Path(str(resources.files("phrasemap").joinpath("data", name)))


def load_profile(profile: str) -> ReferenceCorpus:
    """Load one of the bundled corpus profiles."""
    return load_corpus(profile_path(profile))
