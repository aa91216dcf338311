"""AWGN, Rician and Rayleigh channel models with perfect-CSI equalization.

SNR is Es/N0 in dB for unit-power symbols. Fading draws one complex
coefficient per symbol; Rayleigh is the K=0 special case of Rician. The
receiver divides by the known coefficient before demodulation, so fading
shows up as per-symbol SNR variation. ``snr_db = NOISELESS`` (infinity)
bypasses the channel entirely.
"""

import math
from dataclasses import dataclass

import numpy as np

from .coding import ModulatedFrame

NOISELESS = math.inf

CHANNEL_KINDS = ("awgn", "rician", "rayleigh")


@dataclass(frozen=True)
class ChannelSpec:
    kind: str = "awgn"
    snr_db: float = 9.0
    rician_k: float = 3.0

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind not in CHANNEL_KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not (math.isfinite(self.snr_db) or self.snr_db == NOISELESS):
            raise ValueError("snr_db must be finite or the noiseless sentinel")
        if kind == "rician" and self.rician_k < 0:
            raise ValueError("rician_k must be >= 0")

    @property
    def snr_linear(self):
        return 10.0 ** (self.snr_db / 10.0)


def _fading_coefficients(kind, k_factor, n, rng):
    scatter = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)
    if kind == "rayleigh":
        return scatter
    # Rician: deterministic unit line-of-sight plus scattered component
    return math.sqrt(k_factor / (k_factor + 1.0)) + math.sqrt(
        1.0 / (k_factor + 1.0)
    ) * scatter


def transmit(mframe, channel, rng_seed):
    """Push symbols through the channel; returns the equalized received frame."""
    x = np.asarray(mframe.symbols, dtype=np.complex128)
    if channel.snr_db == NOISELESS:
        return ModulatedFrame(x.copy(), scheme=mframe.scheme)
    rng = np.random.default_rng(rng_seed)
    n = x.shape[0]
    if channel.kind == "awgn":
        h = np.ones(n, dtype=np.complex128)
    elif channel.kind == "rician":
        h = _fading_coefficients("rician", channel.rician_k, n, rng)
    else:
        h = _fading_coefficients("rayleigh", 0.0, n, rng)
    sigma = math.sqrt(1.0 / (2.0 * channel.snr_linear))
    noise = sigma * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    y = h * x + noise
    return ModulatedFrame(y / h, scheme=mframe.scheme)
