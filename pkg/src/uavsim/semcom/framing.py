"""Bit framing: fixed-width token ids behind a length prefix and CRC-16.

Frame layout on the wire:

    [16-bit big-endian token count][tokens * bits_per_token][16-bit CRC]

The CRC covers the prefix and payload. Trailing bits beyond the CRC are
channel-code padding and are ignored by the parser.
"""

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import FrameOverflowError, MalformedFrameError
from ..semantics import SemanticTriple

MAX_TOKENS = 0xFFFF


def int_to_bits(value, width):
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def bits_to_int(bits):
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


@dataclass(frozen=True)
class BitFrame:
    """A parsed or to-be-sent frame; ``crc_ok`` reflects receive-side checks."""

    payload_bits: np.ndarray
    length_prefix: int
    crc: int
    crc_ok: bool = True

    def to_bits(self):
        return np.concatenate(
            [
                int_to_bits(self.length_prefix, 16),
                np.asarray(self.payload_bits, dtype=np.uint8),
                int_to_bits(self.crc, 16),
            ]
        )


def _flatten(tokens_or_triples):
    flat = []
    for item in tokens_or_triples:
        if isinstance(item, SemanticTriple):
            flat.extend(item.as_tuple())
        else:
            flat.append(item)
    return flat


def semantic_encode(tokens_or_triples, vocab):
    """Map tokens (or triples, flattened subject/relation/object) to a frame."""
    tokens = _flatten(list(tokens_or_triples))
    if not tokens:
        raise ValueError("nothing to encode")
    if len(tokens) > MAX_TOKENS:
        raise FrameOverflowError(
            f"{len(tokens)} tokens exceed the 16-bit frame limit of {MAX_TOKENS}"
        )
    width = vocab.bits_per_token
    payload = np.concatenate(
        [int_to_bits(vocab.token_id(t), width) for t in tokens]
    )
    head = np.concatenate([int_to_bits(len(tokens), 16), payload])
    return BitFrame(payload, len(tokens), kernels.crc16(head), crc_ok=True)


def parse_frame_bits(bits, bits_per_token):
    """Rebuild a BitFrame from decoded bits; raises on inconsistent lengths."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.shape[0] < 32:
        raise MalformedFrameError("frame shorter than prefix plus CRC")
    length = bits_to_int(bits[:16])
    payload_end = 16 + length * bits_per_token
    if payload_end + 16 > bits.shape[0]:
        raise MalformedFrameError(
            f"length prefix {length} inconsistent with {bits.shape[0]} decoded bits"
        )
    payload = bits[16:payload_end]
    crc = bits_to_int(bits[payload_end : payload_end + 16])
    crc_ok = crc == kernels.crc16(bits[:payload_end])
    return BitFrame(payload, length, crc, crc_ok=crc_ok)


def semantic_decode(frame, vocab, as_triples=False):
    """Map frame payload ids back to tokens; out-of-range ids become UNK.

    In triple mode, tokens regroup in threes and a trailing incomplete
    group is discarded.
    """
    width = vocab.bits_per_token
    payload = np.asarray(frame.payload_bits, dtype=np.uint8)
    tokens = [
        vocab.token(bits_to_int(payload[i : i + width]))
        for i in range(0, len(payload) - width + 1, width)
    ]
    if not as_triples:
        return tokens
    triples = []
    for i in range(0, len(tokens) - 2, 3):
        triples.append(SemanticTriple(tokens[i], tokens[i + 1], tokens[i + 2]))
    return triples
