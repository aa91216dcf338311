"""Semantic-data auction: VSPs bid for bundles of scene-graph triples.

Each round, every UAV extracts triples from a fresh image (the pool shrinks
accordingly); VSPs request per-category triple counts and post a price.
Winner determination is greedy by score

    price * relatedness(categories, supply) / requested_volume

admitting bids while their full bundle is still coverable (ties break on
vsp id). Winners pay their critical value - the lowest bid that would still
win with everyone else fixed - floored at a per-round reserve price. Bids
under the reserve are rejected up front, which keeps every payment at or
below the posted bid.

Triples are bucketed by subject category for allocation; each triple is
handed to at most one winner.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import RoundAbortError
from .semantics import generate_scene

UNIT_PRICE_RANGE = (0.1, 1.0)


@dataclass(frozen=True)
class VSPBid:
    vsp_id: str
    categories: frozenset
    requested: dict
    price: float

    def __post_init__(self):
        object.__setattr__(self, "categories", frozenset(self.categories))
        if not self.categories:
            raise ValueError("bid must request at least one category")
        if set(self.requested) != set(self.categories):
            raise ValueError("requested counts must cover exactly the bid categories")
        if any(int(v) < 1 for v in self.requested.values()):
            raise ValueError("requested counts must be >= 1")
        if self.price <= 0:
            raise ValueError("bid price must be positive")

    @property
    def volume(self):
        return sum(self.requested.values())


@dataclass(frozen=True)
class AuctionOutcome:
    winners: frozenset
    allocation: dict
    payments: dict
    bids: tuple = ()
    reserve_unit_price: float = 0.0

    def payment(self, vsp_id):
        return self.payments.get(vsp_id, 0.0)


def relatedness(categories, supply_categories, weight=1.0):
    """Weighted fraction of requested categories present in the supply."""
    if not categories:
        return 0.0
    present = sum(1 for c in categories if c in supply_categories)
    return weight * present / len(categories)


def _score(bid, supply_categories, weight):
    return bid.price * relatedness(bid.categories, supply_categories, weight) / bid.volume


def _bucket_supply(triples):
    pools = {}
    for t in sorted(triples, key=lambda t: t.as_tuple()):
        pools.setdefault(t.subject, []).append(t)
    return pools


def determine_winners(bids, supplies, relatedness_weight=1.0):
    """Greedy score-ordered winner determination.

    Returns (winner ids in admission order, allocation dict). A bid is
    admitted only if every requested category still has enough unallocated
    triples; admitted bundles are carved out of the shared pools.
    """
    pools = _bucket_supply(supplies)
    supply_categories = set(pools)
    ranked = sorted(
        bids,
        key=lambda b: (-_score(b, supply_categories, relatedness_weight), b.vsp_id),
    )
    winners = []
    allocation = {}
    for bid in ranked:
        if _score(bid, supply_categories, relatedness_weight) <= 0.0:
            continue
        feasible = all(
            len(pools.get(c, ())) >= bid.requested[c] for c in bid.categories
        )
        if not feasible:
            continue
        granted = []
        for c in sorted(bid.categories):
            take = bid.requested[c]
            granted.extend(pools[c][:take])
            pools[c] = pools[c][take:]
        winners.append(bid.vsp_id)
        allocation[bid.vsp_id] = tuple(granted)
    return winners, allocation


def _critical_price(bid, others, supplies, relatedness_weight):
    """Lowest price at which ``bid`` still wins, holding the others fixed.

    Greedy-by-score admission is monotone in own price, so it suffices to
    test the prices that would tie each opponent's score (plus "free").
    """
    supply_categories = set(_bucket_supply(supplies))
    rel = relatedness(bid.categories, supply_categories, relatedness_weight)
    if rel <= 0.0:
        return bid.price
    candidates = {0.0}
    for other in others:
        tying_price = _score(other, supply_categories, relatedness_weight) * bid.volume / rel
        if 0.0 < tying_price <= bid.price:
            candidates.add(tying_price)
    epsilon = 1e-9
    for price in sorted(candidates):
        for probe in (price, price + epsilon):
            if probe <= 0.0:
                continue
            trial = VSPBid(bid.vsp_id, bid.categories, bid.requested, probe)
            winners, _ = determine_winners(
                list(others) + [trial], supplies, relatedness_weight
            )
            if bid.vsp_id in winners:
                return probe
    return bid.price


def price_winners(winners, bids, supplies, reserve_unit_price, relatedness_weight=1.0):
    """Critical-value payments floored at reserve_unit_price * volume."""
    by_id = {b.vsp_id: b for b in bids}
    payments = {}
    for vsp_id in winners:
        bid = by_id[vsp_id]
        others = [b for b in bids if b.vsp_id != vsp_id]
        critical = _critical_price(bid, others, supplies, relatedness_weight)
        payments[vsp_id] = max(critical, reserve_unit_price * bid.volume)
    return payments


@dataclass(frozen=True)
class RoundResult:
    outcome: AuctionOutcome
    supplies: tuple
    images_used: tuple


def run_round(
    n_vsps,
    n_uavs,
    image_pool,
    catalog,
    rng_seed,
    relatedness_weight=1.0,
    scene_size=(3, 8),
    max_request=3,
    unit_price_range=UNIT_PRICE_RANGE,
):
    """One auction round over a mutable image pool (shrinks by ``n_uavs``).

    Images are integer ids; each selected image deterministically yields the
    scene ``generate_scene(catalog, image_id)``. VSP bundles, bid prices and
    the round reserve are drawn from the round RNG.
    """
    if len(image_pool) < n_uavs:
        raise RoundAbortError(
            f"image pool holds {len(image_pool)} images; {n_uavs} needed"
        )
    rng = np.random.default_rng(rng_seed)
    used = []
    supplies = []
    for _ in range(n_uavs):
        pick = int(rng.integers(len(image_pool)))
        image_id = image_pool.pop(pick)
        used.append(image_id)
        scene = generate_scene(catalog, image_id, size_range=scene_size)
        supplies.extend(scene.triples)

    lo, hi = unit_price_range
    reserve_unit = float(rng.uniform(lo, hi))
    categories = tuple(catalog.object_categories)
    bids = []
    for i in range(n_vsps):
        n_cats = int(rng.integers(1, min(3, len(categories)) + 1))
        chosen = sorted(
            categories[j] for j in rng.choice(len(categories), size=n_cats, replace=False)
        )
        requested = {c: int(rng.integers(1, max_request + 1)) for c in chosen}
        volume = sum(requested.values())
        price = float(rng.uniform(lo, hi)) * volume
        bids.append(VSPBid(f"vsp-{i:03d}", frozenset(chosen), requested, price))

    admissible = [b for b in bids if b.price >= reserve_unit * b.volume]
    winners, allocation = determine_winners(admissible, supplies, relatedness_weight)
    payments = price_winners(
        winners, admissible, supplies, reserve_unit, relatedness_weight
    )
    outcome = AuctionOutcome(
        winners=frozenset(winners),
        allocation=allocation,
        payments=payments,
        bids=tuple(bids),
        reserve_unit_price=reserve_unit,
    )
    return RoundResult(outcome=outcome, supplies=tuple(supplies), images_used=tuple(used))
