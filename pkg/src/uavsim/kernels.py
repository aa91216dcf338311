"""Bit-level hot kernels: Hamming(7,4) coding and CRC-16/CCITT.

Channel sweeps push millions of bits through these loops, so they come in two
interchangeable backends that produce bit-identical results:

* numba ``@njit`` loops (used when numba imports cleanly), and
* vectorized/pure numpy fallbacks.

Set ``UAVSIM_NO_NUMBA=1`` to force the numpy path. ``BACKEND`` reports which
one is active; ``benchmarks/bench_kernels.py`` times both.

Hamming(7,4) is systematic: codeword = (d1 d2 d3 d4 p1 p2 p3) with
p1=d1^d2^d4, p2=d1^d3^d4, p3=d2^d3^d4 (minimum distance 3, corrects one
flip per block). CRC is CCITT-FALSE over the raw bit string: poly 0x1021,
init 0xFFFF, no reflection.
"""

import os

import numpy as np

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "crc16",
    "hamming74_encode",
    "hamming74_decode",
]

_DISABLED = os.environ.get("UAVSIM_NO_NUMBA", "") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError("numba disabled via UAVSIM_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

CRC_POLY = 0x1021
CRC_INIT = 0xFFFF

# syndrome value (s1 + 2*s2 + 4*s3) -> flipped bit position, -1 = no error
_SYNDROME_TO_POS = np.array([-1, 4, 5, 0, 6, 1, 2, 3], dtype=np.int64)


def _as_bits(bits):
    arr = np.ascontiguousarray(bits, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("expected a 1-D bit array")
    return arr


# ---------------------------------------------------------------------------
# numpy backend


def _crc16_np(bits):
    crc = CRC_INIT
    n = bits.shape[0]
    n_bytes = n // 8
    if n_bytes:
        table = _crc_table()
        packed = np.packbits(bits[: n_bytes * 8])
        for byte in packed:
            crc = ((crc << 8) & 0xFFFF) ^ table[((crc >> 8) ^ byte) & 0xFF]
    for bit in bits[n_bytes * 8 :]:
        msb = (crc >> 15) & 1
        crc = (crc << 1) & 0xFFFF
        if msb ^ bit:
            crc ^= CRC_POLY
    return int(crc)


_CRC_TABLE = None


def _crc_table():
    global _CRC_TABLE
    if _CRC_TABLE is None:
        table = np.zeros(256, dtype=np.uint32)
        for byte in range(256):
            crc = byte << 8
            for _ in range(8):
                crc = ((crc << 1) ^ CRC_POLY) if crc & 0x8000 else (crc << 1)
                crc &= 0xFFFF
            table[byte] = crc
        _CRC_TABLE = table
    return _CRC_TABLE


def _hamming74_encode_np(bits):
    n_blocks = (bits.shape[0] + 3) // 4
    data = np.zeros(n_blocks * 4, dtype=np.uint8)
    data[: bits.shape[0]] = bits
    d = data.reshape(n_blocks, 4)
    out = np.empty((n_blocks, 7), dtype=np.uint8)
    out[:, :4] = d
    out[:, 4] = d[:, 0] ^ d[:, 1] ^ d[:, 3]
    out[:, 5] = d[:, 0] ^ d[:, 2] ^ d[:, 3]
    out[:, 6] = d[:, 1] ^ d[:, 2] ^ d[:, 3]
    return out.reshape(-1)


def _hamming74_decode_np(coded):
    n_blocks = coded.shape[0] // 7
    r = coded[: n_blocks * 7].reshape(n_blocks, 7).copy()
    s1 = r[:, 0] ^ r[:, 1] ^ r[:, 3] ^ r[:, 4]
    s2 = r[:, 0] ^ r[:, 2] ^ r[:, 3] ^ r[:, 5]
    s3 = r[:, 1] ^ r[:, 2] ^ r[:, 3] ^ r[:, 6]
    pos = _SYNDROME_TO_POS[s1 + 2 * s2 + 4 * s3]
    rows = np.nonzero(pos >= 0)[0]
    r[rows, pos[rows]] ^= 1
    return r[:, :4].reshape(-1)


# ---------------------------------------------------------------------------
# numba backend

if HAVE_NUMBA:

    @njit(cache=True)
    def _crc16_nb(bits):
        crc = CRC_INIT
        for i in range(bits.shape[0]):
            msb = (crc >> 15) & 1
            crc = (crc << 1) & 0xFFFF
            if msb ^ bits[i]:
                crc ^= CRC_POLY
        return crc

    @njit(cache=True)
    def _hamming74_encode_nb(bits):
        n_blocks = (bits.shape[0] + 3) // 4
        out = np.zeros(n_blocks * 7, dtype=np.uint8)
        for blk in range(n_blocks):
            d0 = bits[blk * 4] if blk * 4 < bits.shape[0] else 0
            d1 = bits[blk * 4 + 1] if blk * 4 + 1 < bits.shape[0] else 0
            d2 = bits[blk * 4 + 2] if blk * 4 + 2 < bits.shape[0] else 0
            d3 = bits[blk * 4 + 3] if blk * 4 + 3 < bits.shape[0] else 0
            base = blk * 7
            out[base] = d0
            out[base + 1] = d1
            out[base + 2] = d2
            out[base + 3] = d3
            out[base + 4] = d0 ^ d1 ^ d3
            out[base + 5] = d0 ^ d2 ^ d3
            out[base + 6] = d1 ^ d2 ^ d3
        return out

    @njit(cache=True)
    def _hamming74_decode_nb(coded, syndrome_to_pos):
        n_blocks = coded.shape[0] // 7
        out = np.empty(n_blocks * 4, dtype=np.uint8)
        for blk in range(n_blocks):
            base = blk * 7
            r0 = coded[base]
            r1 = coded[base + 1]
            r2 = coded[base + 2]
            r3 = coded[base + 3]
            r4 = coded[base + 4]
            r5 = coded[base + 5]
            r6 = coded[base + 6]
            s = (
                (r0 ^ r1 ^ r3 ^ r4)
                + 2 * (r0 ^ r2 ^ r3 ^ r5)
                + 4 * (r1 ^ r2 ^ r3 ^ r6)
            )
            pos = syndrome_to_pos[s]
            if pos == 0:
                r0 ^= 1
            elif pos == 1:
                r1 ^= 1
            elif pos == 2:
                r2 ^= 1
            elif pos == 3:
                r3 ^= 1
            out[blk * 4] = r0
            out[blk * 4 + 1] = r1
            out[blk * 4 + 2] = r2
            out[blk * 4 + 3] = r3
        return out


# ---------------------------------------------------------------------------
# public dispatch


def crc16(bits):
    """CRC-16/CCITT-FALSE of a bit array, returned as an int in [0, 0xFFFF]."""
    bits = _as_bits(bits)
    if HAVE_NUMBA:
        return int(_crc16_nb(bits))
    return _crc16_np(bits)


def hamming74_encode(bits):
    """Encode a bit array; input is zero-padded to a multiple of 4 bits."""
    bits = _as_bits(bits)
    if HAVE_NUMBA:
        return _hamming74_encode_nb(bits)
    return _hamming74_encode_np(bits)


def hamming74_decode(coded):
    """Hard-decision decode; corrects up to one flipped bit per 7-bit block.

    Trailing bits that do not fill a whole block are dropped.
    """
    coded = _as_bits(coded)
    if HAVE_NUMBA:
        return _hamming74_decode_nb(coded, _SYNDROME_TO_POS)
    return _hamming74_decode_np(coded)
