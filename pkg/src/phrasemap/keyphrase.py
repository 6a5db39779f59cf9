"""Per-document keyphrase extraction against a fixed reference corpus.

The scorer never looks at other documents, so extraction results are
independent of batch composition and processing order. Steps: score single
words (tf x corpus rarity), seed a keyword set, grow phrase candidates
around keyword occurrences, score candidates with a length bonus, then
keep the top k with subphrase suppression.
"""
from __future__ import annotations

from dataclasses import dataclass

from .corpus import ReferenceCorpus
from .textprep import PreparedText

RARITY_MODES = ("frequency", "rank")


@dataclass(frozen=True)
class ExtractionParams:
    """Knobs for the extractor; defaults follow the long-form-document preset."""

    max_ngram: int = 4
    top_k: int = 4
    gamma: float = 1.2
    keyword_count: int = 8
    stop_rank: int = 150
    rarity: str = "frequency"

    def __post_init__(self):
        if not 1 <= self.max_ngram <= 4:
            raise ValueError("max_ngram must be in 1..4")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.gamma < 1.0:
            raise ValueError("gamma must be >= 1")
        if self.keyword_count < 1:
            raise ValueError("keyword_count must be >= 1")
        if self.stop_rank < 0:
            raise ValueError("stop_rank must be >= 0")
        if self.rarity not in RARITY_MODES:
            raise ValueError(f"rarity must be one of {RARITY_MODES}")


@dataclass(frozen=True)
class Keyphrase:
    words: tuple[str, ...]
    weight: float

    @property
    def display(self) -> str:
        return " ".join(self.words)


def word_weights(
    prepared: PreparedText,
    corpus: ReferenceCorpus,
    stop_rank: int = 150,
    rarity: str = "frequency",
) -> dict[str, float]:
    """Score each distinct token: (count/total_tokens) x rarity; stopwords get 0."""
    return _weights_and_stops(prepared, corpus, stop_rank, rarity)[0]


def candidate_phrases(
    prepared: PreparedText,
    keywords: set[str],
    n: int,
    stop_tokens: set[str],
) -> dict[tuple[str, ...], int]:
    """Phrase candidates grown around keyword occurrences.

    A window of up to n tokens qualifies when it fits inside some n-token
    span that also covers a keyword occurrence in the same sentence.
    Qualifying windows are trimmed so they neither start nor end with a
    stopword; counts are the exact occurrence counts of the trimmed phrase
    across the whole document. Windows never cross sentence boundaries.
    """
    return _candidate_phrases(prepared, keywords, n, stop_tokens, None)


def _weights_and_stops(prepared, corpus, stop_rank, rarity):
    total = prepared.total_tokens
    if total == 0:
        return {}, set(), {}
    counts: dict[str, int] = {}
    for tok in prepared.tokens():
        counts[tok] = counts.get(tok, 0) + 1
    rare = corpus.rarity if rarity == "frequency" else corpus.rank_rarity
    is_stop = corpus.is_stopword
    weights = {}
    stops = set()
    for tok, n in counts.items():
        if is_stop(tok, stop_rank):
            weights[tok] = 0.0
            stops.add(tok)
        else:
            weights[tok] = (n / total) * rare(tok)
    return weights, stops, counts


def _candidate_phrases(prepared, keywords, n, stop_tokens, word_counts):
    # word_counts short-circuits occurrence counting for one-word phrases;
    # a singleton's document count is already known.
    phrases: set[tuple[str, ...]] = set()
    for sent in prepared.sentences:
        size = len(sent)
        occurrences = [i for i, tok in enumerate(sent) if tok in keywords]
        if not occurrences:
            continue
        # trimming tables: first non-stopword at or after / at or before
        next_solid = [size] * (size + 1)
        for i in range(size - 1, -1, -1):
            next_solid[i] = i if sent[i] not in stop_tokens else next_solid[i + 1]
        prev_solid = [-1] * size
        solid = -1
        for i in range(size):
            if sent[i] not in stop_tokens:
                solid = i
            prev_solid[i] = solid

        seen = bytearray(size * size)
        # For each length, the valid start positions are a union of
        # per-occurrence intervals [i-n+1, i+n-length]: every such span fits
        # in an n-token window together with occurrence i. The intervals are
        # monotone in i, so a single sweep emits the union without repeats.
        for length in range(1, n + 1):
            reach = n - length
            last_start = size - length
            emitted = -1
            for i in occurrences:
                start = max(0, i - n + 1, emitted + 1)
                stop = min(last_start, i + reach)
                for lo in range(start, stop + 1):
                    x = next_solid[lo]
                    y = prev_solid[lo + length - 1]
                    if x <= y:
                        mark = x * size + y
                        if not seen[mark]:
                            seen[mark] = 1
                            phrases.add(sent[x : y + 1])
                if stop > emitted:
                    emitted = stop
    if not phrases:
        return {}

    # occurrence counting over the whole document, indexed by first word so
    # positions away from any candidate cost one dict miss
    counts = dict.fromkeys(phrases, 0)
    by_first: dict[str, list[tuple[tuple[str, ...], int]]] = {}
    for p in phrases:
        if word_counts is not None and len(p) == 1:
            counts[p] = word_counts[p[0]]
        else:
            by_first.setdefault(p[0], []).append((p, len(p)))
    if not by_first:
        return counts
    for sent in prepared.sentences:
        size = len(sent)
        for i, tok in enumerate(sent):
            group = by_first.get(tok)
            if group is None:
                continue
            for phrase, length in group:
                if length == 1:
                    counts[phrase] += 1
                elif i + length <= size and sent[i : i + length] == phrase:
                    counts[phrase] += 1
    return counts


def _is_contiguous_subseq(small: tuple[str, ...], big: tuple[str, ...]) -> bool:
    if len(small) > len(big):
        return False
    span = len(small)
    return any(big[i : i + span] == small for i in range(len(big) - span + 1))


def extract(
    prepared: PreparedText,
    corpus: ReferenceCorpus,
    params: ExtractionParams = ExtractionParams(),
) -> list[Keyphrase]:
    """Top-k keyphrases for one document, weights normalized to sum to 1.

    A document with no scorable (non-stopword) tokens yields an empty list.
    """
    weights, stop_tokens, counts = _weights_and_stops(
        prepared, corpus, params.stop_rank, params.rarity
    )
    scored = [(w, tok) for tok, w in weights.items() if w > 0.0]
    if not scored:
        return []
    scored.sort(key=lambda wt: (-wt[0], wt[1]))
    keywords = {tok for _, tok in scored[: params.keyword_count]}

    candidates = _candidate_phrases(prepared, keywords, params.max_ngram, stop_tokens, counts)
    length_bonus = [params.gamma**i for i in range(params.max_ngram)]
    weight_of = weights.__getitem__
    ranked = []
    for phrase, count in candidates.items():
        score = count * sum(map(weight_of, phrase)) * length_bonus[len(phrase) - 1]
        if score > 0.0:
            ranked.append((score, phrase))
    ranked.sort(key=lambda sp: (-sp[0], -len(sp[1]), sp[1]))

    kept: list[tuple[float, tuple[str, ...]]] = []
    for score, phrase in ranked:
        if len(kept) == params.top_k:
            break
        if any(_is_contiguous_subseq(phrase, p) for _, p in kept):
            continue
        kept.append((score, phrase))
    total = sum(score for score, _ in kept)
    return [Keyphrase(words=p, weight=score / total) for score, p in kept]
