"""Multi-UAV offloading simulation with station capacity contention.

Stations share one resource grade but sit at different anchors; each UAV
sees station SNR shifted by its topology-derived distance, so learned
preferences spread over the map. Every decision interval each UAV picks a
station through its agent; a station serves at most ``station_capacity``
tasks per step (a random subset of contenders), refused tasks fall back to
the cloud at ``cloud_reward``. The offload rate is the fraction of tasks
served locally.

The step math is vectorized across the fleet: stations share bandwidth,
compute and storage grades, so with one drift factor per (UAV, station)
the three resource factors collapse onto a single fluctuation matrix and
latency onto its inverse.
"""

import numpy as np

from .. import qrl
from ..errors import UsageError
from ..seeding import rng_for

STATION_BANDWIDTH = 1000.0
STATION_COMPUTE = 5.0
STATION_STORAGE = 500.0


def _fleet_positions(topology, n_uavs):
    """Fleet positions; columns are reused (with a small shift) for fleets
    larger than the table, so repeated UAVs do not stack exactly."""
    positions = []
    for u in range(n_uavs):
        column = u % topology.n_uavs
        wrap = u // topology.n_uavs
        positions.append(topology.uav_position(column) + 0.37 * wrap)
    return positions


def build_uav_envs(topology, n_stations, config, base_snr_db=9.0, scale_db=2.0):
    """One environment per UAV; station order is shared, SNR views differ."""
    n_uavs = config["offload.n_uavs"]
    drift = config["qrl.station_drift"]
    cloud = config["offload.cloud_reward"]
    positions = _fleet_positions(topology, n_uavs)
    anchors = topology.station_anchors(n_stations, fleet_positions=positions)
    envs = []
    for u in range(n_uavs):
        stations = tuple(
            qrl.BaseStationState(
                snr_db=base_snr_db - scale_db * abs(positions[u] - a),
                bandwidth_hz=STATION_BANDWIDTH,
                compute_units=STATION_COMPUTE,
                storage_units=STATION_STORAGE,
            )
            for a in anchors
        )
        envs.append(
            qrl.EnvSpec(
                env_id=f"offload-uav{u}",
                stations=stations,
                drift=drift,
                cloud_reward=cloud,
            )
        )
    return envs


def _minmax_rows(m):
    lo = m.min(axis=1, keepdims=True)
    span = m.max(axis=1, keepdims=True) - lo
    out = np.ones_like(m)
    mask = span[:, 0] >= 1e-12
    out[mask] = (m[mask] - lo[mask]) / span[mask]
    return out


def run_offload_sim(config, topology, agent_kind="quantum", seeds=None, n_stations=None):
    """Simulate the fleet; returns per-(seed, episode) rows.

    Rows carry ``n_stations, seed, episode, offload_rate, mean_reward``.
    """
    if agent_kind not in ("quantum", "egreedy"):
        raise UsageError(f"unknown agent kind {agent_kind!r}")
    if seeds is None:
        seeds = range(config.replicates)
    if n_stations is None:
        n_stations = config["qrl.n_stations"]
    episodes = config["offload.episodes"]
    steps = config.steps_per_episode
    capacity = (
        config["offload.n_uavs"]
        if config["offload.abundant_resources"]
        else config["offload.station_capacity"]
    )
    rl_cfg = config.rl_config(episodes=episodes)
    envs = build_uav_envs(topology, n_stations, config)
    n_uavs = len(envs)
    n_tasks = len(envs[0].tasks)
    drift = config["qrl.station_drift"]
    cloud = config["offload.cloud_reward"]
    w1, w2, w3, w4, w5 = rl_cfg.reward_weights

    # static per-UAV SNR factor (stations fluctuate resources, not SNR)
    snr = np.array([[s.snr_db for s in env.stations] for env in envs])
    snr_norm = _minmax_rows(snr)
    uav_idx = np.arange(n_uavs)

    rows = []
    for seed in seeds:
        rng = rng_for(config.master_seed, "offload", agent_kind, n_stations, seed)
        values = np.zeros((n_uavs, n_tasks, n_stations))
        amps = np.full(
            (n_uavs, n_tasks, n_stations),
            1.0 / np.sqrt(n_stations),
            dtype=np.complex128,
        )
        for episode in range(episodes):
            eps = qrl.epsilon_at(rl_cfg, episode)
            served_count = 0
            reward_total = 0.0
            for _ in range(steps):
                task_idx = rng.integers(n_tasks, size=n_uavs)
                flux = 1.0 + drift * rng.uniform(-1.0, 1.0, size=(n_uavs, n_stations))
                res_norm = _minmax_rows(flux)
                lat_norm = _minmax_rows(1.0 / flux)
                reward_mat = (
                    w1 * snr_norm + (w2 + w3 + w4) * res_norm - w5 * lat_norm
                )

                if agent_kind == "quantum":
                    probs = np.abs(amps[uav_idx, task_idx]) ** 2
                    probs /= probs.sum(axis=1, keepdims=True)
                    draws = rng.random(n_uavs)
                    actions = (probs.cumsum(axis=1) < draws[:, None]).sum(axis=1)
                    actions = np.minimum(actions, n_stations - 1)
                else:
                    actions = values[uav_idx, task_idx].argmax(axis=1)
                    explore = rng.random(n_uavs) < eps
                    randoms = rng.integers(n_stations, size=n_uavs)
                    actions = np.where(explore, randoms, actions)

                served = np.zeros(n_uavs, dtype=bool)
                for s in range(n_stations):
                    contenders = np.nonzero(actions == s)[0]
                    if contenders.shape[0] > capacity:
                        order = rng.permutation(contenders.shape[0])
                        served[contenders[order[:capacity]]] = True
                    elif capacity > 0:
                        served[contenders] = True

                r = np.where(
                    served, reward_mat[uav_idx, actions], cloud
                )
                v_rows = values[uav_idx, task_idx]
                td = r + rl_cfg.gamma * v_rows.max(axis=1)
                current = values[uav_idx, task_idx, actions]
                values[uav_idx, task_idx, actions] = current + rl_cfg.learning_rate * (
                    td - current
                )
                if agent_kind == "quantum":
                    budgets = np.minimum(
                        rl_cfg.max_grover_iters,
                        np.floor(rl_cfg.grover_scale * np.maximum(td, 0.0) + 0.5).astype(int),
                    )
                    for u in np.nonzero(budgets > 0)[0]:
                        t = task_idx[u]
                        greedy = int(values[u, t].argmax())
                        if abs(amps[u, t, greedy]) ** 2 >= 1.0 - 1e-9:
                            continue  # already pinned on the greedy arm
                        amps[u, t], _ = qrl._amplify_array(
                            amps[u, t], greedy, int(budgets[u])
                        )
                reward_total += float(r.sum())
                served_count += int(served.sum())
            rows.append(
                {
                    "n_stations": n_stations,
                    "seed": seed,
                    "episode": episode,
                    "offload_rate": served_count / (steps * n_uavs),
                    "mean_reward": reward_total / (steps * n_uavs),
                }
            )
    return rows


def settled_offload_rate(rows, seed=None):
    """Mean offload rate over the second half of episodes (post-learning)."""
    filtered = [r for r in rows if seed is None or r["seed"] == seed]
    episodes = sorted({r["episode"] for r in filtered})
    cut = episodes[len(episodes) // 2]
    tail = [r["offload_rate"] for r in filtered if r["episode"] >= cut]
    return float(np.mean(tail))


def station_sweep(config, topology, agent_kind="quantum", seeds=None, max_stations=None):
    """Offload rows for station counts 1..max (default from config)."""
    if max_stations is None:
        max_stations = config["offload.station_sweep_max"]
    rows = []
    for n in range(1, max_stations + 1):
        rows.extend(run_offload_sim(config, topology, agent_kind, seeds, n_stations=n))
    return rows
