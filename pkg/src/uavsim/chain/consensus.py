"""Proof-of-communication endorsement rounds and proposer selection.

A sender asks a committee of drones to endorse a communication. Each
endorser runs a real ECDH handshake with the sender; the subsequent probe
decryption is simulated as a Bernoulli success with a configurable failure
probability (per peer or global). Authorization requires a strict majority
of successful endorsements, and affirming endorsers earn one point each.
Proposer selection is weighted by 1 + points, so zero-point drones always
keep a nonzero chance.
"""

from dataclasses import dataclass

import numpy as np

from .curve import ecdh


@dataclass
class DronePeer:
    peer_id: str
    keypair: object
    endorsement_points: int = 0


def quorum_size(committee_size):
    """Smallest strict majority: floor(K/2) + 1 for every committee size."""
    if committee_size < 1:
        raise ValueError("committee size must be >= 1")
    return committee_size // 2 + 1


def _failure_for(peer, failure_prob):
    if isinstance(failure_prob, dict):
        return float(failure_prob.get(peer.peer_id, 0.0))
    return float(failure_prob)


def poc_round(sender, receiver, peers, curve, rng_seed, failure_prob=0.0):
    """One endorsement round; returns (authorized, peers).

    ``peers`` is the endorsing committee (sender and receiver excluded by the
    caller). Points are mutated in place only when the round authorizes.
    """
    if not peers:
        raise ValueError("at least one endorsing peer required")
    rng = np.random.default_rng(rng_seed)
    supporters = []
    for peer in peers:
        sender_view = ecdh(sender.keypair.private, peer.keypair.public, curve)
        peer_view = ecdh(peer.keypair.private, sender.keypair.public, curve)
        handshake_ok = sender_view == peer_view
        decrypted = rng.random() >= _failure_for(peer, failure_prob)
        if handshake_ok and decrypted:
            supporters.append(peer)
    authorized = len(supporters) >= quorum_size(len(peers))
    if authorized:
        for peer in supporters:
            peer.endorsement_points += 1
    return authorized, peers


def select_proposer(peers, rng_seed):
    """Sample the next block proposer with weight 1 + endorsement points."""
    if not peers:
        raise ValueError("at least one peer required")
    rng = np.random.default_rng(rng_seed)
    weights = np.array([1.0 + p.endorsement_points for p in peers])
    probs = weights / weights.sum()
    return peers[int(rng.choice(len(peers), p=probs))]
