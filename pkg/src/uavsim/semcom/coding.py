"""Channel coding and BPSK mapping.

Codes: ``none`` (identity), ``repetition3`` (majority vote), ``hamming74``
(default; corrects one flip per 7-bit block). BPSK maps bit 0 -> +1 and
bit 1 -> -1, so frames have unit average symbol power by construction.
"""

from dataclasses import dataclass

import numpy as np

from .. import kernels
from .framing import parse_frame_bits

CODES = ("none", "repetition3", "hamming74")


@dataclass(frozen=True)
class ModulatedFrame:
    symbols: np.ndarray
    scheme: str = "bpsk"

    def __len__(self):
        return len(self.symbols)

    def average_power(self):
        return float(np.mean(np.abs(self.symbols) ** 2))


def _check_code(code):
    if code not in CODES:
        raise ValueError(f"unknown code {code!r}; expected one of {CODES}")


def encode_bits(bits, code):
    _check_code(code)
    bits = np.asarray(bits, dtype=np.uint8)
    if code == "none":
        return bits
    if code == "repetition3":
        return np.repeat(bits, 3)
    return kernels.hamming74_encode(bits)


def decode_bits(coded, code):
    _check_code(code)
    coded = np.asarray(coded, dtype=np.uint8)
    if code == "none":
        return coded
    if code == "repetition3":
        n = coded.shape[0] // 3
        groups = coded[: n * 3].reshape(n, 3)
        return (groups.sum(axis=1) >= 2).astype(np.uint8)
    return kernels.hamming74_decode(coded)


def modulate(bits):
    return (1.0 - 2.0 * np.asarray(bits, dtype=np.float64)).astype(np.complex128)


def demodulate(symbols):
    return (np.real(symbols) < 0.0).astype(np.uint8)


def channel_encode(frame, code="hamming74"):
    """Code the frame bits and map them onto unit-power BPSK symbols."""
    coded = encode_bits(frame.to_bits(), code)
    return ModulatedFrame(modulate(coded), scheme="bpsk")


def channel_decode(received, code, bits_per_token):
    """Hard-decide symbols, undo the code and parse the frame.

    ``bits_per_token`` is part of the receiver configuration (it must match
    the encoder's vocabulary width) and locates the CRC behind the payload.
    """
    bits = demodulate(received.symbols)
    return parse_frame_bits(decode_bits(bits, code), bits_per_token)
