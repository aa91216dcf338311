"""Convenience wrappers running the full encode -> channel -> decode chain."""

from ..errors import MalformedFrameError
from .channel import transmit
from .coding import channel_decode, channel_encode
from .framing import semantic_decode, semantic_encode


def send_tokens(tokens, vocab, code, channel, rng_seed):
    """Transmit a token sequence; returns (received_tokens, crc_ok).

    A frame whose length prefix is destroyed beyond parsing counts as a
    total loss: empty tokens, crc_ok False.
    """
    frame = semantic_encode(tokens, vocab)
    received = transmit(channel_encode(frame, code), channel, rng_seed)
    try:
        decoded = channel_decode(received, code, vocab.bits_per_token)
    except MalformedFrameError:
        return [], False
    return semantic_decode(decoded, vocab), decoded.crc_ok


def send_triples(triples, vocab, code, channel, rng_seed):
    """Transmit scene-graph triples; returns (received_triples, crc_ok)."""
    frame = semantic_encode(triples, vocab)
    received = transmit(channel_encode(frame, code), channel, rng_seed)
    try:
        decoded = channel_decode(received, code, vocab.bits_per_token)
    except MalformedFrameError:
        return [], False
    return semantic_decode(decoded, vocab, as_triples=True), decoded.crc_ok


# Receiver-side aliases, useful when the two halves run separately.
def receive_tokens(received, vocab, code):
    decoded = channel_decode(received, code, vocab.bits_per_token)
    return semantic_decode(decoded, vocab), decoded.crc_ok


def receive_triples(received, vocab, code):
    decoded = channel_decode(received, code, vocab.bits_per_token)
    return semantic_decode(decoded, vocab, as_triples=True), decoded.crc_ok
