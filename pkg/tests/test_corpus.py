import math
import random

import pytest

from phrasemap.corpus import CorpusFormatError, build_corpus, load_corpus, load_profile


def write_corpus(tmp_path, lines, name="corpus.tsv"):
    path = tmp_path / name
    path.write_text("".join(f"{w}\t{f}\n" for w, f in lines), encoding="utf-8")
    return path


def test_single_entry_file(tmp_path):
    path = write_corpus(tmp_path, [("the", 1081168)])
    corpus = load_corpus(path)
    assert corpus.vocab_size == 1
    assert corpus.total_tokens == 1081168
    assert corpus.rank["the"] == 1


def test_tie_rank_is_lexicographic(tmp_path):
    path = write_corpus(tmp_path, [("a", 5), ("b", 5), ("c", 9)])
    corpus = load_corpus(path)
    assert corpus.rank == {"c": 1, "a": 2, "b": 3}


def test_totals(tmp_path):
    path = write_corpus(tmp_path, [("the", 100), ("data", 10), ("magnetosphere", 1)])
    corpus = load_corpus(path)
    assert corpus.total_tokens == 111
    assert corpus.vocab_size == 3


def test_words_lowercased_on_load(tmp_path):
    path = write_corpus(tmp_path, [("The", 10), ("DATA", 5)])
    corpus = load_corpus(path)
    assert set(corpus.entries) == {"the", "data"}


@pytest.mark.parametrize(
    "content,fragment",
    [
        ("the\n", ":1:"),
        ("the\tx\n", ":1:"),
        ("the\t5\nthe\t6\n", "duplicate"),
        ("", "empty"),
        ("the\t5\n\nof\t2\n", ":2:"),
        ("the\t0\n", ">= 1"),
    ],
)
def test_malformed_files(tmp_path, content, fragment):
    path = tmp_path / "bad.tsv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(CorpusFormatError, match=fragment):
        load_corpus(path)


def test_rarity_examples(toy_corpus):
    assert toy_corpus.rarity("the") == pytest.approx(math.log(112 / 101), abs=1e-12)
    assert toy_corpus.rarity("the") == pytest.approx(0.10338, abs=1e-5)
    assert toy_corpus.rarity("magnetosphere") == pytest.approx(4.0254, abs=1e-4)
    assert toy_corpus.rarity("qzx") == pytest.approx(math.log(112), abs=1e-12)


def test_oov_rarity_is_strict_upper_bound(toy_corpus):
    oov = toy_corpus.rarity("notaword")
    assert all(toy_corpus.rarity(w) < oov for w in toy_corpus.entries)


def test_rarity_monotone_in_frequency():
    rng = random.Random(42)
    for _ in range(20):
        entries = {f"w{i}": rng.randint(1, 10_000) for i in range(50)}
        corpus = build_corpus(entries)
        words = sorted(entries, key=entries.get)
        for lighter, heavier in zip(words, words[1:]):
            assert corpus.rarity(lighter) >= corpus.rarity(heavier)


def test_load_is_deterministic(tmp_path):
    lines = [("b", 5), ("a", 5), ("c", 9), ("d", 1)]
    c1 = load_corpus(write_corpus(tmp_path, lines, "one.tsv"))
    c2 = load_corpus(write_corpus(tmp_path, lines, "two.tsv"))
    assert c1.entries == c2.entries
    assert c1.rank == c2.rank
    assert c1.total_tokens == c2.total_tokens


def test_is_stopword(toy_corpus):
    assert toy_corpus.is_stopword("the", 150)  # rank 1
    assert not toy_corpus.is_stopword("magnetosphere", 2)  # rank 3
    assert toy_corpus.is_stopword("42", 0)
    assert toy_corpus.is_stopword("x", 0)
    assert not toy_corpus.is_stopword("k-12", 150)  # not pure digits, OOV
    assert not toy_corpus.is_stopword("data", 1)  # rank 2 > 1


def test_rank_rarity_scorer(toy_corpus):
    assert toy_corpus.rank_rarity("the") == pytest.approx(math.log(2))
    assert toy_corpus.rank_rarity("magnetosphere") == pytest.approx(math.log(4))
    # unknown words rank just past the vocabulary
    assert toy_corpus.rank_rarity("qzx") == pytest.approx(math.log(5))


def test_bundled_profiles_load():
    for profile in ("written", "spoken"):
        corpus = load_profile(profile)
        assert corpus.rank["the"] == 1
        assert corpus.vocab_size > 500
        assert corpus.total_tokens >= corpus.vocab_size
