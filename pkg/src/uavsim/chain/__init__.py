"""Blockchain subsystem: curve arithmetic, ECDH, endorsement consensus and
the layered PoW/PBFT throughput model."""

from .consensus import DronePeer, poc_round, quorum_size, select_proposer
from .curve import (
    INFINITY,
    P256,
    TOY_CURVE,
    CurveParams,
    KeyPair,
    ecdh,
    is_on_curve,
    keygen,
    load_curve_file,
    parse_curve_text,
    point_add,
    point_neg,
    save_curve_file,
    scalar_mul,
)
from .throughput import (
    AllocationStrategy,
    LayeredChain,
    pbft_latency,
    simulate_chain,
    simulate_throughput,
)

__all__ = [
    "AllocationStrategy",
    "CurveParams",
    "DronePeer",
    "INFINITY",
    "KeyPair",
    "LayeredChain",
    "P256",
    "TOY_CURVE",
    "ecdh",
    "is_on_curve",
    "keygen",
    "load_curve_file",
    "parse_curve_text",
    "pbft_latency",
    "poc_round",
    "point_add",
    "point_neg",
    "quorum_size",
    "save_curve_file",
    "scalar_mul",
    "select_proposer",
    "simulate_chain",
    "simulate_throughput",
]
