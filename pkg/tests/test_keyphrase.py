import math
import random

import pytest

from phrasemap.keyphrase import ExtractionParams, candidate_phrases, extract, word_weights
from phrasemap.textprep import PreparedText, prepare

from .oracles import oracle_extract, random_params, random_prepared

DOC = "Magnetosphere data. The magnetosphere data grows."


def prepared_doc():
    return prepare(DOC)


def test_word_weights_example(toy_corpus):
    weights = word_weights(prepared_doc(), toy_corpus, stop_rank=1)
    assert weights["magnetosphere"] == pytest.approx((2 / 6) * math.log(112 / 2), abs=1e-12)
    assert weights["magnetosphere"] == pytest.approx(1.3418, abs=1e-4)
    assert weights["the"] == 0.0


def test_single_token_doc_weight_is_rarity(toy_corpus):
    prepared = PreparedText(sentences=(("magnetosphere",),), total_tokens=1)
    weights = word_weights(prepared, toy_corpus, stop_rank=1)
    assert weights["magnetosphere"] == pytest.approx(toy_corpus.rarity("magnetosphere"))


def test_candidate_window_length_limits():
    prepared = PreparedText(
        sentences=(("information", "visualization", "technique"),), total_tokens=3
    )
    keywords = {"information", "visualization", "technique"}
    three = candidate_phrases(prepared, keywords, 3, set())
    assert ("information", "visualization", "technique") in three
    two = candidate_phrases(prepared, keywords, 2, set())
    assert ("information", "visualization", "technique") not in two


def test_candidate_trimming_example():
    prepared = PreparedText(sentences=(("the", "magnetosphere", "data"),), total_tokens=3)
    counts = candidate_phrases(prepared, {"magnetosphere"}, 3, {"the"})
    assert counts == {
        ("magnetosphere",): 1,
        ("magnetosphere", "data"): 1,
        ("data",): 1,
    }


def test_candidates_unigram_are_keyword_occurrences():
    prepared = PreparedText(
        sentences=(("the", "magnetosphere", "data", "magnetosphere"),), total_tokens=4
    )
    counts = candidate_phrases(prepared, {"magnetosphere"}, 1, {"the"})
    assert counts == {("magnetosphere",): 2}


def test_candidates_empty_without_keyword_occurrence():
    prepared = PreparedText(sentences=(("ocean", "data"),), total_tokens=2)
    assert candidate_phrases(prepared, {"quantum"}, 3, set()) == {}


def test_counts_include_occurrences_away_from_keywords():
    # "data model" also occurs in the second sentence with no keyword nearby;
    # occurrence counting covers the whole document.
    prepared = PreparedText(
        sentences=(
            ("magnetosphere", "data", "model"),
            ("ocean", "ocean", "ocean", "ocean", "data", "model"),
        ),
        total_tokens=9,
    )
    counts = candidate_phrases(prepared, {"magnetosphere"}, 3, set())
    assert counts[("data", "model")] == 2


def test_extract_top_phrase(toy_corpus):
    params = ExtractionParams(max_ngram=2, top_k=2, gamma=1.2, keyword_count=8, stop_rank=1)
    phrases = extract(prepared_doc(), toy_corpus, params)
    assert phrases[0].words == ("magnetosphere", "data")
    assert [p.display for p in phrases] == ["magnetosphere data", "data grows"]
    assert sum(p.weight for p in phrases) == pytest.approx(1.0, abs=1e-9)


def test_top_k_one_normalizes_to_unity(toy_corpus):
    params = ExtractionParams(max_ngram=2, top_k=1, stop_rank=1)
    phrases = extract(prepared_doc(), toy_corpus, params)
    assert len(phrases) == 1
    assert phrases[0].weight == 1.0


def test_extract_is_pure(toy_corpus):
    params = ExtractionParams(max_ngram=3, top_k=3, stop_rank=1)
    first = extract(prepared_doc(), toy_corpus, params)
    second = extract(prepared_doc(), toy_corpus, params)
    assert first == second


def test_all_stopword_doc_is_empty(toy_corpus):
    prepared = PreparedText(sentences=(("the", "the"),), total_tokens=2)
    assert extract(prepared, toy_corpus, ExtractionParams(stop_rank=1)) == []


def test_no_returned_phrase_is_subsequence_of_higher_ranked(oracle_corpus):
    rng = random.Random(4)
    for _ in range(50):
        prepared = random_prepared(rng)
        phrases = extract(prepared, oracle_corpus, random_params(rng))
        for i, low in enumerate(phrases):
            for high in phrases[:i]:
                joined_high = " ".join(high.words)
                assert " ".join(low.words) not in joined_high or len(low.words) > len(
                    high.words
                ), (low.words, high.words)


def test_length_bonus_is_monotone():
    # Direct evaluation of W(p) = count * sum(word weights) * gamma^(len-1)
    # on constructed cases: extending a phrase by a word never scores below
    # gamma times its prefix (appended weights are non-negative).
    rng = random.Random(11)
    for gamma in (1.0, 1.2, 1.5, 2.0):
        for _ in range(25):
            count = rng.randint(1, 5)
            weights = [rng.uniform(0.0, 3.0) for _ in range(rng.randint(2, 4))]
            for k in range(1, len(weights)):
                prefix = count * sum(weights[:k]) * gamma ** (k - 1)
                extended = count * sum(weights[: k + 1]) * gamma**k
                appended = count * weights[k] * gamma**k
                assert extended >= gamma * prefix - 1e-12
                assert extended == pytest.approx(gamma * prefix + appended, rel=1e-9)


def test_matches_oracle_on_small_documents(oracle_corpus):
    rng = random.Random(99)
    for _ in range(60):
        prepared = random_prepared(rng)
        params = random_params(rng)
        got = [(p.words, p.weight) for p in extract(prepared, oracle_corpus, params)]
        want = oracle_extract(prepared, oracle_corpus, params)
        assert got == want


def test_rank_rarity_mode_matches_oracle(oracle_corpus):
    rng = random.Random(7)
    for _ in range(20):
        prepared = random_prepared(rng)
        params = ExtractionParams(max_ngram=3, top_k=3, rarity="rank", stop_rank=3)
        got = [(p.words, p.weight) for p in extract(prepared, oracle_corpus, params)]
        assert got == oracle_extract(prepared, oracle_corpus, params)


def test_params_validation():
    with pytest.raises(ValueError):
        ExtractionParams(max_ngram=5)
    with pytest.raises(ValueError):
        ExtractionParams(top_k=0)
    with pytest.raises(ValueError):
        ExtractionParams(gamma=0.5)
    with pytest.raises(ValueError):
        ExtractionParams(rarity="idf")
