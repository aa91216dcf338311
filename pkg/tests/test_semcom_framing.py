"""Frame layout, token codec and channel-code plumbing tests."""

import numpy as np
import pytest

from uavsim.errors import FrameOverflowError, MalformedFrameError
from uavsim.semantics import SemanticTriple
from uavsim.semcom.coding import channel_decode, channel_encode
from uavsim.semcom.framing import (
    BitFrame,
    bits_to_int,
    int_to_bits,
    parse_frame_bits,
    semantic_decode,
    semantic_encode,
)
from uavsim.semcom.text import UNK_TOKEN, vocabulary_from_labels


@pytest.fixture()
def vocab():
    # size 30 (3 reserved + 27 labels): 5 bits per token, ids 30/31 unused
    return vocabulary_from_labels([f"w{i}" for i in range(27)])


def test_int_bits_roundtrip():
    for v in (0, 1, 2, 1023, 65535):
        assert bits_to_int(int_to_bits(v, 16)) == v


def test_encode_decode_identity(vocab):
    tokens = ["w1", "w2", "w3", "w0", "w26"]
    frame = semantic_encode(tokens, vocab)
    assert frame.length_prefix == 5
    assert frame.payload_bits.shape[0] == 5 * vocab.bits_per_token
    again = parse_frame_bits(frame.to_bits(), vocab.bits_per_token)
    assert again.crc_ok
    assert semantic_decode(again, vocab) == tokens


def test_payload_width_depends_on_vocab_size():
    wide = vocabulary_from_labels([f"t{i:04d}" for i in range(1021)])  # 1024 ids
    frame = semantic_encode(["t0001"] * 3, wide)
    assert frame.payload_bits.shape[0] == 3 * 10


def test_triples_flatten_to_nine_tokens(vocab):
    triples = [SemanticTriple("w1", "w2", "w3") for _ in range(3)]
    # distinct objects so the triples differ
    triples = [SemanticTriple("w1", "w2", f"w{4+i}") for i in range(3)]
    frame = semantic_encode(triples, vocab)
    assert frame.length_prefix == 9
    assert frame.payload_bits.shape[0] == 9 * vocab.bits_per_token
    decoded = semantic_decode(frame, vocab, as_triples=True)
    assert decoded == triples


def test_trailing_partial_triple_discarded(vocab):
    frame = semantic_encode(["w1", "w2", "w3", "w4"], vocab)
    decoded = semantic_decode(frame, vocab, as_triples=True)
    assert decoded == [SemanticTriple("w1", "w2", "w3")]


def test_out_of_range_id_becomes_unk(vocab):
    frame = semantic_encode(["w1"], vocab)
    bits = frame.to_bits()
    payload = bits[16:21].copy()
    payload[:] = 1  # id 31 on a 32-entry vocab with trailing unused slots
    corrupted = np.concatenate([bits[:16], payload, bits[21:]])
    parsed = parse_frame_bits(corrupted, vocab.bits_per_token)
    assert semantic_decode(parsed, vocab) == [UNK_TOKEN]
    assert not parsed.crc_ok


def test_corrupted_relation_only_damages_relation(vocab):
    triple = SemanticTriple("w1", "w2", "w3")
    frame = semantic_encode([triple], vocab)
    bits = frame.to_bits()
    width = vocab.bits_per_token
    relation_slot = slice(16 + width, 16 + 2 * width)
    bits[relation_slot] = 1  # force an unused id
    parsed = parse_frame_bits(bits, width)
    decoded = semantic_decode(parsed, vocab, as_triples=True)
    assert decoded == [SemanticTriple("w1", UNK_TOKEN, "w3")]


def test_overflow_and_empty_inputs(vocab):
    with pytest.raises(ValueError):
        semantic_encode([], vocab)
    with pytest.raises(FrameOverflowError):
        semantic_encode(["w1"] * 65536, vocab)


def test_malformed_frames(vocab):
    with pytest.raises(MalformedFrameError):
        parse_frame_bits(np.zeros(20, dtype=np.uint8), vocab.bits_per_token)
    frame = semantic_encode(["w1", "w2"], vocab)
    bits = frame.to_bits()
    bits[:16] = int_to_bits(60000, 16)  # length prefix way beyond the payload
    with pytest.raises(MalformedFrameError):
        parse_frame_bits(bits, vocab.bits_per_token)


@pytest.mark.parametrize("code,rate_num,rate_den", [("none", 1, 1), ("hamming74", 7, 4), ("repetition3", 3, 1)])
def test_channel_code_rates_and_power(vocab, code, rate_num, rate_den):
    frame = semantic_encode(["w1", "w2", "w3"], vocab)
    n_bits = frame.to_bits().shape[0]
    mframe = channel_encode(frame, code)
    expected = ((n_bits + rate_den - 1) // rate_den) * rate_num
    assert len(mframe.symbols) == expected
    assert mframe.average_power() == pytest.approx(1.0, abs=1e-9)


def test_all_zero_bits_map_to_plus_one():
    frame = BitFrame(np.zeros(8, dtype=np.uint8), 0, 0)
    object.__setattr__(frame, "crc", 0)
    mframe = channel_encode(frame, "none")
    # frame bits include the zero prefix/crc, so every symbol is +1
    assert np.all(mframe.symbols == 1.0 + 0.0j)
    assert mframe.average_power() == pytest.approx(1.0, abs=1e-12)


def test_single_symbol_flip_corrected_at_frame_level(vocab):
    from uavsim.semcom.coding import ModulatedFrame, channel_decode

    tokens = ["w3", "w1", "w4"]
    mframe = channel_encode(semantic_encode(tokens, vocab), "hamming74")
    symbols = mframe.symbols.copy()
    symbols[9] = -symbols[9]  # one flip inside the second code block
    decoded = channel_decode(ModulatedFrame(symbols), "hamming74", vocab.bits_per_token)
    assert decoded.crc_ok
    assert semantic_decode(decoded, vocab) == tokens


def test_double_flip_in_one_block_is_detectable(vocab):
    # two flips exceed the code distance: the miscorrected block either
    # breaks the CRC (payload region) or the length parse (prefix region)
    from uavsim.semcom.coding import ModulatedFrame, channel_decode

    tokens = ["w3", "w1", "w4"]
    mframe = channel_encode(semantic_encode(tokens, vocab), "hamming74")

    symbols = mframe.symbols.copy()
    symbols[28] = -symbols[28]
    symbols[30] = -symbols[30]  # same block, payload region
    decoded = channel_decode(ModulatedFrame(symbols), "hamming74", vocab.bits_per_token)
    assert not decoded.crc_ok

    symbols = mframe.symbols.copy()
    symbols[7] = -symbols[7]
    symbols[9] = -symbols[9]  # same block, length-prefix region
    with pytest.raises(MalformedFrameError):
        channel_decode(ModulatedFrame(symbols), "hamming74", vocab.bits_per_token)


def test_crc_false_accept_rate_bound(vocab):
    # random 16-bit corruption slips past a 16-bit CRC with probability
    # around 2^-16; the acceptance bound is 4 * 2^-15 over 1e6 trials
    from uavsim import kernels

    frame = semantic_encode(["w1", "w2", "w3", "w4", "w5"], vocab)
    bits = frame.to_bits()
    body_len = bits.shape[0] - 16  # prefix + payload region
    trials = 10**6
    rng = np.random.default_rng(161616)
    positions = rng.integers(0, body_len, size=(trials, 16))
    false_accepts = 0
    for row in positions:
        corrupted = bits.copy()
        flip = np.unique(row)
        corrupted[flip] ^= 1
        if kernels.crc16(corrupted[:body_len]) == frame.crc:
            false_accepts += 1
    assert false_accepts / trials <= 4 * 2.0**-15


def test_noiseless_channel_roundtrip_all_codes(vocab):
    from uavsim.semcom.channel import NOISELESS, ChannelSpec, transmit

    tokens = ["w5", "w6", "w7", "w8"]
    for code in ("none", "repetition3", "hamming74"):
        frame = semantic_encode(tokens, vocab)
        received = transmit(channel_encode(frame, code), ChannelSpec("awgn", NOISELESS), 0)
        decoded = channel_decode(received, code, vocab.bits_per_token)
        assert decoded.crc_ok
        assert semantic_decode(decoded, vocab) == tokens
