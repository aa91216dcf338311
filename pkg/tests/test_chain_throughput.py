"""PBFT latency model and layered-chain throughput tests."""

import pytest

from uavsim.chain.throughput import (
    AllocationStrategy,
    LayeredChain,
    _class_latency,
    _named_fractions,
    pbft_latency,
    simulate_chain,
    simulate_throughput,
)
from uavsim.errors import CommitteeTooSmallError

K_SWEEP = range(5, 51, 5)


def strategies():
    return {kind: AllocationStrategy(kind=kind) for kind in
            ("optimal", "equal_bandwidth", "equal_compute")}


def test_committee_minimum():
    with pytest.raises(CommitteeTooSmallError):
        pbft_latency(3, AllocationStrategy())
    assert pbft_latency(4, AllocationStrategy()) > 0


def test_latency_strictly_increasing_in_k():
    for strategy in strategies().values():
        lats = [pbft_latency(k, strategy) for k in K_SWEEP]
        assert all(b > a for a, b in zip(lats, lats[1:]))


def test_doubling_bandwidth_halves_message_term():
    base = AllocationStrategy()
    doubled = AllocationStrategy(bandwidth_budget=2 * base.bandwidth_budget)
    k = 12
    c_frac, b_frac = _named_fractions(k, base, "equal_bandwidth")
    lat_base = _class_latency(k, base, c_frac, b_frac)
    lat_doubled = _class_latency(k, doubled, c_frac, b_frac)
    verify_term = base.verify_unit_cost * k * base.primary_load_factor / (
        base.compute_budget * c_frac
    )
    message_term = lat_base - verify_term
    assert lat_doubled == pytest.approx(verify_term + message_term / 2.0)


def test_equal_bandwidth_beats_equal_compute_at_default_budgets():
    s = strategies()
    # compute is the scarce resource by calibration
    assert s["equal_bandwidth"].verify_unit_cost / s["equal_bandwidth"].compute_budget > (
        s["equal_bandwidth"].msg_unit_cost / s["equal_bandwidth"].bandwidth_budget
    )
    for k in K_SWEEP:
        assert pbft_latency(k, s["equal_bandwidth"]) < pbft_latency(k, s["equal_compute"])
    assert pbft_latency(30, s["equal_bandwidth"]) < pbft_latency(30, s["equal_compute"])


def bruteforce_best_latency(k, strategy, grid=160):
    """Independent dense-grid oracle over the primary's budget fractions."""
    best = float("inf")
    rho = strategy.primary_load_factor
    for i in range(1, grid):
        for j in range(1, grid):
            c_frac = i / grid
            b_frac = j / grid
            verify_primary = strategy.verify_unit_cost * k * rho
            msg_primary = strategy.msg_unit_cost * k * rho
            verify_backup = strategy.verify_unit_cost * k
            msg_backup = strategy.msg_unit_cost * k
            t_primary = verify_primary / (strategy.compute_budget * c_frac) + (
                msg_primary / (strategy.bandwidth_budget * b_frac)
            )
            t_backup = verify_backup / (
                strategy.compute_budget * (1 - c_frac) / (k - 1)
            ) + msg_backup / (strategy.bandwidth_budget * (1 - b_frac) / (k - 1))
            best = min(best, max(t_primary, t_backup))
    return best


def test_optimal_tracks_bruteforce_grid_oracle():
    strategy = AllocationStrategy(kind="optimal")
    for k in (5, 15, 30, 50):
        ours = pbft_latency(k, strategy)
        oracle = bruteforce_best_latency(k, strategy)
        assert ours <= oracle + 1e-12  # seeded proportional split beats the grid
        assert ours == pytest.approx(oracle, rel=0.02)


def test_strategy_ordering_at_every_k():
    s = strategies()
    for k in K_SWEEP:
        lat_opt = pbft_latency(k, s["optimal"])
        lat_bw = pbft_latency(k, s["equal_bandwidth"])
        lat_cp = pbft_latency(k, s["equal_compute"])
        assert lat_opt <= lat_bw <= lat_cp


def test_throughput_ratio_exact_case():
    # scale unit costs so one PBFT block takes exactly 2 s: 100 tx -> 50 tx/s
    base = AllocationStrategy(kind="optimal")
    lat = pbft_latency(10, base)
    scale = 2.0 / lat
    scaled = AllocationStrategy(
        kind="optimal",
        verify_unit_cost=base.verify_unit_cost * scale,
        msg_unit_cost=base.msg_unit_cost * scale,
    )
    assert pbft_latency(10, scaled) == pytest.approx(2.0, rel=1e-12)
    tps = simulate_throughput(10, scaled, duration=600.0, tx_per_block=100)
    assert tps == pytest.approx(50.0, rel=1e-9)


def test_throughput_monotone_nonincreasing_and_ordered():
    s = strategies()
    tps = {kind: [simulate_throughput(k, st, 600.0) for k in K_SWEEP] for kind, st in s.items()}
    for series in tps.values():
        assert all(b <= a for a, b in zip(series, series[1:]))
    for i in range(len(list(K_SWEEP))):
        assert tps["optimal"][i] >= tps["equal_bandwidth"][i] >= tps["equal_compute"][i]


def test_layered_chain_groups_thirty_pbft_blocks():
    chain, _ = simulate_chain(10, AllocationStrategy(kind="optimal"), 2000.0)
    assert len(chain.pow_blocks) >= 2
    assert all(len(b.pbft_blocks) == 30 for b in chain.pow_blocks)
    # PoW sealing instant coincides with its 30th PBFT block: the mining
    # interval is slaved to 30 PBFT latencies
    for pow_block in chain.pow_blocks:
        assert pow_block.sealed_at == pow_block.pbft_blocks[-1].sealed_at
    lat = pbft_latency(10, AllocationStrategy(kind="optimal"))
    gaps = [
        b.sealed_at - a.sealed_at
        for a, b in zip(chain.pow_blocks, chain.pow_blocks[1:])
    ]
    for gap in gaps:
        assert gap == pytest.approx(30 * lat, rel=1e-9)


def test_chain_counts_committed_transactions():
    chain = LayeredChain(pbft_per_pow=3, tx_per_block=10)
    for i in range(7):
        chain.seal_pbft(float(i))
    assert chain.committed_tx == 70
    assert len(chain.pow_blocks) == 2
    assert len(chain.pending_pbft) == 1


def test_strategy_validation():
    with pytest.raises(ValueError):
        AllocationStrategy(kind="mystery")
    with pytest.raises(ValueError):
        AllocationStrategy(bandwidth_budget=0.0)
    with pytest.raises(ValueError):
        AllocationStrategy(primary_load_factor=0.5)
