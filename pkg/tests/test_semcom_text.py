"""Preprocessing and vocabulary codec tests."""

import pytest

from uavsim.errors import ConfigurationError
from uavsim.semcom.text import (
    UNK_ID,
    UNK_TOKEN,
    Vocabulary,
    build_vocabulary,
    load_bundled_corpus,
    preprocess_corpus,
    vocabulary_from_labels,
)


def test_preprocess_strips_and_lowercases():
    assert preprocess_corpus(["Hello, World! Again."]) == ["hello world again"]


def test_preprocess_drops_short_and_long_sentences():
    assert preprocess_corpus(["two words"]) == []
    assert preprocess_corpus(["one two three"]) == ["one two three"]
    assert preprocess_corpus(["w " * 21]) == []
    assert preprocess_corpus(["w " * 20]) == [("w " * 20).strip()]


def test_preprocess_idempotent():
    lines = ["The QUICK, brown fox; jumps over the lazy dog!", "Too short."]
    once = preprocess_corpus(lines)
    assert preprocess_corpus(once) == once


def test_build_vocabulary_threshold_boundary():
    corpus = ["alpha beta gamma"] * 5
    vocab = build_vocabulary(corpus, min_count=5)
    for token in ("alpha", "beta", "gamma"):
        assert token in vocab
        assert vocab.token(vocab.token_id(token)) == token


def test_tokens_below_min_count_map_to_unk():
    corpus = ["common common common common common rare"]
    vocab = build_vocabulary(corpus, min_count=5)
    assert vocab.token_id("common") != UNK_ID
    assert vocab.token_id("rare") == UNK_ID
    assert vocab.token(UNK_ID) == UNK_TOKEN


def test_vocabulary_ids_dense_and_deterministic():
    corpus = preprocess_corpus(load_bundled_corpus())
    v1 = build_vocabulary(corpus, 5)
    v2 = build_vocabulary(corpus, 5)
    assert v1.id_to_token == v2.id_to_token
    assert [v1.token_id(t) for t in v1.id_to_token] == list(range(len(v1)))


def test_vocabulary_orders_by_frequency_then_lexicographic():
    corpus = ["b b b a a a c c c"] * 5 + ["b b"] * 5
    vocab = build_vocabulary(corpus, 5)
    # b is most frequent; a and c tie and break lexicographically
    assert vocab.token_id("b") < vocab.token_id("a") < vocab.token_id("c")


def test_empty_corpus_rejected():
    with pytest.raises(ConfigurationError):
        build_vocabulary([], 5)


def test_vocabulary_file_roundtrip(tmp_path):
    vocab = build_vocabulary(preprocess_corpus(load_bundled_corpus()), 5)
    text = vocab.to_text()
    assert text.splitlines()[0] == "<pad>\t0"
    again = Vocabulary.from_text(text)
    assert again.id_to_token == vocab.id_to_token


def test_label_vocabulary_sorted():
    vocab = vocabulary_from_labels(["zeta", "alpha", "mid"])
    assert vocab.token_id("alpha") < vocab.token_id("mid") < vocab.token_id("zeta")
    assert len(vocab) == 6  # 3 reserved + 3 labels


def test_bits_per_token_width():
    vocab = vocabulary_from_labels([f"t{i:04d}" for i in range(1021)])
    assert len(vocab) == 1024
    assert vocab.bits_per_token == 10
