"""Counter-based RNG stream derivation.

Experiment cells (seed x parameter point) each get an independent generator
derived from the master seed and a label path, so runs are reproducible and
order-independent regardless of execution order or parallelism.
"""

import hashlib

import numpy as np


def _label_key(label):
    if isinstance(label, (int, np.integer)):
        return int(label) & 0xFFFFFFFF
    digest = hashlib.sha256(str(label).encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


def seed_sequence(master_seed, *path):
    """SeedSequence for the stream identified by ``path`` under ``master_seed``."""
    return np.random.SeedSequence(
        entropy=int(master_seed), spawn_key=tuple(_label_key(p) for p in path)
    )


def rng_for(master_seed, *path):
    """Independent ``numpy`` generator for one experiment cell."""
    return np.random.default_rng(seed_sequence(master_seed, *path))
