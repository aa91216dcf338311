"""Text and image quality metrics: BLEU, PSNR and single-scale MSSIM."""

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

DEFAULT_BLEU_WEIGHTS = (0.25, 0.25, 0.25, 0.25)


def _ngram_counts(tokens, n):
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate, reference, weights=DEFAULT_BLEU_WEIGHTS):
    """Clipped n-gram precision score with brevity penalty, in [0, 1].

    ``weights`` assigns one nonnegative weight per n-gram order starting at
    unigrams; they must sum to one. Orders for which the candidate has no
    n-grams are dropped and the remaining weights renormalized, so a
    sentence always scores 1 against itself. Any zero precision at a
    weighted order yields 0 (no smoothing).
    """
    candidate = list(candidate)
    reference = list(reference)
    if not reference:
        raise ValueError("reference must be nonempty")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    if abs(sum(weights) - 1.0) > 1e-9:
        raise ValueError("weights must sum to 1")
    if not candidate:
        return 0.0
    orders = [
        (n, w)
        for n, w in enumerate(weights, start=1)
        if w > 0 and len(candidate) >= n
    ]
    if not orders:
        return 0.0
    weight_total = sum(w for _, w in orders)
    log_precision = 0.0
    for n, w in orders:
        cand_counts = _ngram_counts(candidate, n)
        ref_counts = _ngram_counts(reference, n)
        clipped = sum(min(c, ref_counts[g]) for g, c in cand_counts.items())
        if clipped == 0:
            return 0.0
        total = len(candidate) - n + 1
        log_precision += (w / weight_total) * math.log(clipped / total)
    brevity = min(0.0, 1.0 - len(reference) / len(candidate))
    return math.exp(brevity + log_precision)


@dataclass(frozen=True)
class ImagePayload:
    """8-bit grayscale image stored row-major."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.uint8).reshape(-1)
        if px.shape[0] != self.width * self.height:
            raise ValueError("pixel count must equal width * height")
        object.__setattr__(self, "pixels", px)

    def as_array(self):
        return self.pixels.reshape(self.height, self.width)

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=np.uint8)
        return cls(arr.shape[1], arr.shape[0], arr.reshape(-1))


def _check_dims(a, b):
    if (a.width, a.height) != (b.width, b.height):
        raise ValueError("images must share dimensions")


def psnr(a, b):
    """Peak signal-to-noise ratio in dB; +inf for identical images."""
    _check_dims(a, b)
    diff = a.pixels.astype(np.float64) - b.pixels.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


_SSIM_C1 = (0.01 * 255.0) ** 2
_SSIM_C2 = (0.03 * 255.0) ** 2


def mssim(a, b, window=8):
    """Mean single-scale SSIM over non-overlapping windows (partial edges kept)."""
    _check_dims(a, b)
    xa = a.as_array().astype(np.float64)
    xb = b.as_array().astype(np.float64)
    scores = []
    for r in range(0, a.height, window):
        for c in range(0, a.width, window):
            wa = xa[r : r + window, c : c + window]
            wb = xb[r : r + window, c : c + window]
            mu_a = wa.mean()
            mu_b = wb.mean()
            var_a = wa.var()
            var_b = wb.var()
            cov = ((wa - mu_a) * (wb - mu_b)).mean()
            num = (2 * mu_a * mu_b + _SSIM_C1) * (2 * cov + _SSIM_C2)
            den = (mu_a**2 + mu_b**2 + _SSIM_C1) * (var_a + var_b + _SSIM_C2)
            scores.append(num / den)
    return float(np.mean(scores))


# ---------------------------------------------------------------------------
# PGM (P5, binary) image payloads


def write_pgm(image, path):
    with open(path, "wb") as fh:
        fh.write(f"P5\n{image.width} {image.height}\n255\n".encode("ascii"))
        fh.write(image.pixels.tobytes())


def read_pgm(path):
    with open(path, "rb") as fh:
        data = fh.read()
    fields = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    if fields[0] != b"P5":
        raise ValidationError("not a binary PGM (P5) file")
    width, height, maxval = int(fields[1]), int(fields[2]), int(fields[3])
    if maxval != 255:
        raise ValidationError("only 8-bit PGM supported")
    pos += 1  # single whitespace after maxval
    pixels = np.frombuffer(data[pos : pos + width * height], dtype=np.uint8)
    if pixels.shape[0] != width * height:
        raise ValidationError("truncated PGM pixel data")
    return ImagePayload(width, height, pixels.copy())
