"""BLEU / PSNR / MSSIM metric tests with independent oracles."""

import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uavsim.semcom.metrics import (
    ImagePayload,
    bleu,
    mssim,
    psnr,
    read_pgm,
    write_pgm,
)
from uavsim.semcom.text import load_bundled_corpus, preprocess_corpus

WORDS = ["drone", "package", "dock", "route", "wind", "tower", "crate", "signal"]


def bleu_oracle(candidate, reference, weights=(0.25, 0.25, 0.25, 0.25)):
    """Direct n-gram counting reimplementation, kept independent on purpose."""
    if not candidate:
        return 0.0
    used = []
    for n, w in enumerate(weights, start=1):
        if w <= 0:
            continue
        cand_ngrams = [tuple(candidate[i : i + n]) for i in range(len(candidate) - n + 1)]
        if not cand_ngrams:
            continue
        ref_ngrams = Counter(tuple(reference[i : i + n]) for i in range(len(reference) - n + 1))
        cand_counts = Counter(cand_ngrams)
        clipped = 0
        for gram, count in cand_counts.items():
            clipped += min(count, ref_ngrams.get(gram, 0))
        used.append((w, clipped, len(cand_ngrams)))
    if not used:
        return 0.0
    total_w = sum(w for w, _, _ in used)
    acc = 0.0
    for w, clipped, total in used:
        if clipped == 0:
            return 0.0
        acc += (w / total_w) * math.log(clipped / total)
    bp = min(0.0, 1.0 - len(reference) / len(candidate))
    return math.exp(bp + acc)


def test_bleu_identity_is_one():
    for sentence in (["a", "b", "c", "d", "e"], ["x", "y", "z"], ["solo"]):
        assert bleu(sentence, sentence) == pytest.approx(1.0, abs=1e-12)


def test_bleu_short_perfect_candidate_hits_brevity_penalty():
    reference = ["a", "b", "c", "d", "e", "f"]
    candidate = reference[:5]
    expected = math.exp(1.0 - len(reference) / len(candidate))
    assert bleu(candidate, reference) == pytest.approx(expected, rel=1e-12)


def test_bleu_empty_candidate_and_zero_precision():
    assert bleu([], ["a", "b", "c"]) == 0.0
    assert bleu(["q", "r", "s", "t"], ["a", "b", "c", "d"]) == 0.0


def test_bleu_argument_validation():
    with pytest.raises(ValueError):
        bleu(["a"], [])
    with pytest.raises(ValueError):
        bleu(["a"], ["a"], weights=(0.5, 0.5, 0.5, 0.5))
    with pytest.raises(ValueError):
        bleu(["a"], ["a"], weights=(-0.5, 1.5, 0.0, 0.0))


def test_bleu_matches_oracle_on_random_pairs():
    rng = np.random.default_rng(3)
    for _ in range(50):
        cand = [WORDS[i] for i in rng.integers(0, len(WORDS), rng.integers(1, 15))]
        ref = [WORDS[i] for i in rng.integers(0, len(WORDS), rng.integers(3, 15))]
        assert bleu(cand, ref) == pytest.approx(bleu_oracle(cand, ref), abs=1e-9)


def test_bleu_matches_oracle_on_corpus_pairs():
    corpus = preprocess_corpus(load_bundled_corpus())
    rng = np.random.default_rng(4)
    for _ in range(50):
        cand = corpus[int(rng.integers(len(corpus)))].split()
        ref = corpus[int(rng.integers(len(corpus)))].split()
        assert bleu(cand, ref) == pytest.approx(bleu_oracle(cand, ref), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(
    cand=st.lists(st.sampled_from(WORDS), min_size=0, max_size=12),
    ref=st.lists(st.sampled_from(WORDS), min_size=1, max_size=12),
)
def test_bleu_bounded(cand, ref):
    score = bleu(cand, ref)
    assert 0.0 <= score <= 1.0 + 1e-12


def gray(value, w=16, h=16):
    return ImagePayload(w, h, np.full(w * h, value, dtype=np.uint8))


def test_psnr_identity_and_known_value():
    img = gray(100)
    assert psnr(img, img) == math.inf
    assert mssim(img, img) == pytest.approx(1.0)
    shifted = gray(101)
    # MSE of a constant +1 shift is exactly 1
    assert psnr(img, shifted) == pytest.approx(10 * math.log10(255.0**2), abs=1e-9)
    assert psnr(img, shifted) == pytest.approx(48.1308, abs=1e-3)


def test_psnr_symmetry():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a = ImagePayload(8, 8, rng.integers(0, 256, 64).astype(np.uint8))
        b = ImagePayload(8, 8, rng.integers(0, 256, 64).astype(np.uint8))
        assert psnr(a, b) == pytest.approx(psnr(b, a))


def test_mssim_degrades_with_noise():
    rng = np.random.default_rng(6)
    base = ImagePayload(32, 32, (rng.integers(0, 256, 1024)).astype(np.uint8))
    noisy = ImagePayload(
        32, 32, np.clip(base.pixels.astype(int) + rng.integers(-40, 41, 1024), 0, 255).astype(np.uint8)
    )
    very_noisy = ImagePayload(32, 32, rng.integers(0, 256, 1024).astype(np.uint8))
    s1 = mssim(base, noisy)
    s2 = mssim(base, very_noisy)
    assert -1.0 <= s2 < s1 < 1.0


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        psnr(gray(0, 8, 8), gray(0, 8, 9))


def test_pgm_roundtrip(tmp_path):
    rng = np.random.default_rng(8)
    img = ImagePayload(12, 7, rng.integers(0, 256, 84).astype(np.uint8))
    path = tmp_path / "img.pgm"
    write_pgm(img, path)
    again = read_pgm(path)
    assert again.width == 12 and again.height == 7
    assert np.array_equal(again.pixels, img.pixels)
