"""Deterministic desk-scale simulation suite for UAV metaverse logistics.

Three subsystems plus an experiment harness:

* quantum-style collective reinforcement learning for base-station offloading
  (:mod:`uavsim.qrl`),
* a scene-graph semantic communication pipeline over noisy channels
  (:mod:`uavsim.semantics`, :mod:`uavsim.semcom`),
* an ECDH / proof-of-communication / layered PoW-PBFT blockchain model
  (:mod:`uavsim.chain`) with a semantic-data auction (:mod:`uavsim.auction`).

Every operation is seedable and pure: identical seeds give identical outputs.
"""

__version__ = "0.1.0"
