"""Channel model tests: noise statistics, fading, code correction."""

import math

import numpy as np
import pytest
from scipy.special import erfc

from uavsim.semcom.channel import NOISELESS, ChannelSpec, transmit
from uavsim.semcom.coding import (
    ModulatedFrame,
    decode_bits,
    demodulate,
    encode_bits,
    modulate,
)

RNG = np.random.default_rng(77)


def q_function(x):
    return 0.5 * erfc(x / math.sqrt(2.0))


def awgn_ber_theory(snr_db):
    return q_function(math.sqrt(2.0 * 10.0 ** (snr_db / 10.0)))


def test_noiseless_sentinel_is_identity():
    bits = RNG.integers(0, 2, 64).astype(np.uint8)
    mframe = ModulatedFrame(modulate(bits))
    out = transmit(mframe, ChannelSpec("awgn", NOISELESS), 5)
    assert np.array_equal(out.symbols, mframe.symbols)
    out = transmit(mframe, ChannelSpec("rayleigh", NOISELESS), 5)
    assert np.array_equal(out.symbols, mframe.symbols)


def test_transmit_deterministic_per_seed():
    bits = RNG.integers(0, 2, 256).astype(np.uint8)
    mframe = ModulatedFrame(modulate(bits))
    a = transmit(mframe, ChannelSpec("rician", 6.0, 2.0), 42)
    b = transmit(mframe, ChannelSpec("rician", 6.0, 2.0), 42)
    c = transmit(mframe, ChannelSpec("rician", 6.0, 2.0), 43)
    assert np.array_equal(a.symbols, b.symbols)
    assert not np.array_equal(a.symbols, c.symbols)


@pytest.mark.parametrize("snr_db", [0.0, 3.0, 6.0])
def test_awgn_ber_tracks_q_function(snr_db):
    n = 200_000
    bits = np.random.default_rng(9).integers(0, 2, n).astype(np.uint8)
    rx = transmit(ModulatedFrame(modulate(bits)), ChannelSpec("awgn", snr_db), 4)
    ber = float(np.mean(demodulate(rx.symbols) != bits))
    assert ber == pytest.approx(awgn_ber_theory(snr_db), rel=0.15)


def test_fading_raises_error_rate_over_awgn():
    n = 300_000
    bits = np.random.default_rng(10).integers(0, 2, n).astype(np.uint8)
    mframe = ModulatedFrame(modulate(bits))
    bers = {}
    for kind in ("awgn", "rician", "rayleigh"):
        rx = transmit(mframe, ChannelSpec(kind, 6.0, 3.0), 8)
        bers[kind] = float(np.mean(demodulate(rx.symbols) != bits))
    assert bers["rayleigh"] > bers["rician"] > bers["awgn"]


def test_hamming_never_worse_than_uncoded_on_same_noise():
    info = np.random.default_rng(11).integers(0, 2, 20_000).astype(np.uint8)
    coded = encode_bits(info, "hamming74")
    for seed in range(4):
        for snr_db in (0.0, 4.0, 8.0):
            spec = ChannelSpec("awgn", snr_db)
            rx_coded = demodulate(transmit(ModulatedFrame(modulate(coded)), spec, seed).symbols)
            corrected = decode_bits(rx_coded, "hamming74")[: info.shape[0]]
            coded_ber = float(np.mean(corrected != info))
            rx_raw = demodulate(
                transmit(ModulatedFrame(modulate(info)), spec, seed).symbols
            )
            raw_ber = float(np.mean(rx_raw != info))
            assert coded_ber <= raw_ber


def test_repetition3_majority_vote():
    info = np.array([1, 0, 1, 1, 0, 0, 1, 0], dtype=np.uint8)
    coded = encode_bits(info, "repetition3")
    corrupted = coded.copy()
    corrupted[::3] ^= 1  # one flip per triplet leaves the majority intact
    assert np.array_equal(decode_bits(corrupted, "repetition3"), info)


def test_channel_spec_validation():
    with pytest.raises(ValueError):
        ChannelSpec("laser", 9.0)
    with pytest.raises(ValueError):
        ChannelSpec("rician", 9.0, -1.0)
    with pytest.raises(ValueError):
        ChannelSpec("awgn", float("nan"))
