"""Layered PoW/PBFT throughput model with resource-allocation strategies.

The edge server splits its compute budget C and bandwidth budget B across
the K committee drones. The PBFT primary carries ``primary_load_factor``
times a backup's verification and messaging work (it broadcasts the
pre-prepare and aggregates replies). A node's round time is

    verify_work / compute_slice + message_work / bandwidth_slice

with verify_work = verify_unit_cost * K * load and message_work =
msg_unit_cost * K * load (each node exchanges O(K) messages, so aggregate
traffic is O(K^2)); the round latency is the slowest node's time.

Strategies:

* ``equal_compute``  - compute split equally across drones, bandwidth
  proportional to messaging load;
* ``equal_bandwidth`` - bandwidth split equally, compute proportional to
  verification load;
* ``optimal``        - grid search over the primary's share of each budget
  (the two named strategies are included as candidates).

With the default budgets, compute is the scarce resource
(verify_unit_cost / C > msg_unit_cost / B), so equalizing bandwidth and
matching compute to demand beats the reverse at every committee size.

PoW blocks are a pacing layer only: one seals after every
``pbft_per_pow`` PBFT blocks, with the mining interval tied to PBFT
latency (difficulty is assumed to adjust).
"""

from dataclasses import dataclass, field

from ..errors import CommitteeTooSmallError

STRATEGIES = ("equal_bandwidth", "equal_compute", "optimal")

MIN_COMMITTEE = 4


@dataclass(frozen=True)
class AllocationStrategy:
    kind: str = "equal_bandwidth"
    bandwidth_budget: float = 40.0
    compute_budget: float = 10.0
    verify_unit_cost: float = 0.002
    msg_unit_cost: float = 0.001
    primary_load_factor: float = 2.0
    grid_points: int = 33

    def __post_init__(self):
        if self.kind not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.kind!r}; expected {STRATEGIES}")
        if min(self.bandwidth_budget, self.compute_budget) <= 0:
            raise ValueError("budgets must be positive")
        if min(self.verify_unit_cost, self.msg_unit_cost) <= 0:
            raise ValueError("unit costs must be positive")
        if self.primary_load_factor < 1.0:
            raise ValueError("primary load factor must be >= 1")
        if self.grid_points < 3:
            raise ValueError("grid needs at least 3 points")


def _class_latency(k, strategy, primary_compute_frac, primary_bandwidth_frac):
    """Round latency when the primary holds the given budget fractions.

    Backups share the remaining budget equally. Returns the max over the
    primary's and a backup's completion time.
    """
    load_primary = strategy.primary_load_factor
    verify_primary = strategy.verify_unit_cost * k * load_primary
    verify_backup = strategy.verify_unit_cost * k
    msg_primary = strategy.msg_unit_cost * k * load_primary
    msg_backup = strategy.msg_unit_cost * k
    c_primary = strategy.compute_budget * primary_compute_frac
    b_primary = strategy.bandwidth_budget * primary_bandwidth_frac
    c_backup = strategy.compute_budget * (1.0 - primary_compute_frac) / (k - 1)
    b_backup = strategy.bandwidth_budget * (1.0 - primary_bandwidth_frac) / (k - 1)
    t_primary = verify_primary / c_primary + msg_primary / b_primary
    t_backup = verify_backup / c_backup + msg_backup / b_backup
    return max(t_primary, t_backup)


def _named_fractions(k, strategy, kind):
    """Primary budget fractions implied by the two equal-split strategies."""
    rho = strategy.primary_load_factor
    proportional = rho / (k - 1 + rho)
    equal = 1.0 / k
    if kind == "equal_bandwidth":
        return proportional, equal
    return equal, proportional


def pbft_latency(k, strategy):
    """Seconds to seal one PBFT block with a committee of ``k`` drones."""
    if k < MIN_COMMITTEE:
        raise CommitteeTooSmallError(f"PBFT needs >= {MIN_COMMITTEE} drones, got {k}")
    if strategy.kind in ("equal_bandwidth", "equal_compute"):
        c_frac, b_frac = _named_fractions(k, strategy, strategy.kind)
        return _class_latency(k, strategy, c_frac, b_frac)
    # optimal: grid over the primary's budget shares, seeded with the named
    # strategies (so the optimum never loses to either) and with the
    # load-proportional split, which equalizes node completion times
    rho = strategy.primary_load_factor
    proportional = rho / (k - 1 + rho)
    candidates = [
        _named_fractions(k, strategy, "equal_bandwidth"),
        _named_fractions(k, strategy, "equal_compute"),
        (proportional, proportional),
    ]
    g = strategy.grid_points
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            candidates.append((i / (g + 1), j / (g + 1)))
    return min(_class_latency(k, strategy, c, b) for c, b in candidates)


@dataclass(frozen=True)
class PBFTBlock:
    index: int
    sealed_at: float
    tx_count: int


@dataclass(frozen=True)
class PoWBlock:
    index: int
    sealed_at: float
    pbft_blocks: tuple


@dataclass
class LayeredChain:
    """PoW blocks, each holding exactly ``pbft_per_pow`` PBFT blocks."""

    pbft_per_pow: int = 30
    tx_per_block: int = 100
    pow_blocks: list = field(default_factory=list)
    pending_pbft: list = field(default_factory=list)

    def seal_pbft(self, sealed_at):
        block = PBFTBlock(
            index=len(self.pending_pbft)
            + self.pbft_per_pow * len(self.pow_blocks),
            sealed_at=sealed_at,
            tx_count=self.tx_per_block,
        )
        self.pending_pbft.append(block)
        if len(self.pending_pbft) == self.pbft_per_pow:
            self.pow_blocks.append(
                PoWBlock(
                    index=len(self.pow_blocks),
                    sealed_at=sealed_at,
                    pbft_blocks=tuple(self.pending_pbft),
                )
            )
            self.pending_pbft = []
        return block

    @property
    def committed_tx(self):
        sealed = len(self.pending_pbft) + self.pbft_per_pow * len(self.pow_blocks)
        return sealed * self.tx_per_block


def simulate_chain(k, strategy, duration, pbft_per_pow=30, tx_per_block=100):
    """Run the block-sealing event loop; returns (chain, tx_per_second).

    The PoW mining interval equals ``pbft_per_pow`` PBFT latencies, so a PoW
    block is always ready exactly when its 30th PBFT block seals.
    """
    if duration <= 0:
        raise ValueError("duration must be positive")
    latency = pbft_latency(k, strategy)
    chain = LayeredChain(pbft_per_pow=pbft_per_pow, tx_per_block=tx_per_block)
    t = latency
    while t <= duration:
        chain.seal_pbft(t)
        t += latency
    return chain, chain.committed_tx / duration


def simulate_throughput(k, strategy, duration, pbft_per_pow=30, tx_per_block=100):
    """Transactions per second committed over ``duration`` seconds."""
    _, tps = simulate_chain(k, strategy, duration, pbft_per_pow, tx_per_block)
    return tps
