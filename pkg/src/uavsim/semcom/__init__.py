"""End-to-end semantic communication pipeline.

Text (or scene-graph triples) -> vocabulary codec -> framed bits -> channel
code -> BPSK symbols -> noisy channel -> hard decisions -> corrected bits ->
tokens. The vocabulary codec is deliberately invertible, so semantic loss
comes only from channel noise; a learned codec can be slotted in behind the
same frame interface later.
"""

from .channel import NOISELESS, ChannelSpec, transmit
from .coding import CODES, ModulatedFrame, channel_decode, channel_encode
from .framing import BitFrame, semantic_decode, semantic_encode
from .metrics import ImagePayload, bleu, mssim, psnr, read_pgm, write_pgm
from .pipeline import receive_tokens, receive_triples, send_tokens, send_triples
from .text import (
    Vocabulary,
    build_vocabulary,
    load_bundled_corpus,
    preprocess_corpus,
    vocabulary_from_labels,
)

__all__ = [
    "BitFrame",
    "CODES",
    "ChannelSpec",
    "ImagePayload",
    "ModulatedFrame",
    "NOISELESS",
    "Vocabulary",
    "bleu",
    "build_vocabulary",
    "channel_decode",
    "channel_encode",
    "load_bundled_corpus",
    "mssim",
    "preprocess_corpus",
    "psnr",
    "read_pgm",
    "receive_tokens",
    "receive_triples",
    "semantic_decode",
    "semantic_encode",
    "send_tokens",
    "send_triples",
    "transmit",
    "vocabulary_from_labels",
    "write_pgm",
]
