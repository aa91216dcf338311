"""Quantum-style collective reinforcement learning for station selection.

Each agent keeps, per discrete state bucket, a table of action values and a
normalized amplitude register over candidate base stations. Actions are
sampled from squared amplitudes; after the temporal-difference update the
register is amplified toward the greedy action with a number of Grover
rounds proportional to the TD target. Amplification stops early once an
extra round would overshoot the rotation peak and start de-amplifying the
target (repeated Grover rotation is periodic, not monotone).

Collective learning: agents are aggregated by averaging value tables and
action probabilities; a redeployed agent warm-starts from the aggregate.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import AggregationError, OffloadRefused


# ---------------------------------------------------------------------------
# amplitude register


@dataclass(frozen=True)
class QuantumActionRegister:
    """Complex amplitudes over candidate actions, kept normalized to 1."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] < 1:
            raise ValueError("register needs at least one action")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"register norm {norm} too far from 1")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_actions(self):
        return self.amplitudes.shape[0]

    def probabilities(self):
        p = np.abs(self.amplitudes) ** 2
        return p / p.sum()


def init_register(n_actions):
    """Uniform superposition: every amplitude 1/sqrt(n)."""
    if n_actions < 1:
        raise ValueError("n_actions must be >= 1")
    amps = np.full(n_actions, 1.0 / math.sqrt(n_actions), dtype=np.complex128)
    return QuantumActionRegister(amps)


def grover_update(reg, target, iterations):
    """Apply ``iterations`` rounds of sign-flip on target + inversion about mean."""
    if not 0 <= target < reg.n_actions:
        raise ValueError("target action out of range")
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    amps = reg.amplitudes.copy()
    for _ in range(iterations):
        amps[target] = -amps[target]
        amps = 2.0 * amps.mean() - amps
    norm = math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    return QuantumActionRegister(amps / norm)


def _sample_index(probs, rng):
    cum = np.cumsum(probs)
    idx = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    return min(idx, probs.shape[0] - 1)


def select_action(reg, rng_seed):
    """Sample an action index with probability |amplitude|^2."""
    rng = (
        rng_seed
        if isinstance(rng_seed, np.random.Generator)
        else np.random.default_rng(rng_seed)
    )
    return _sample_index(reg.probabilities(), rng)


def _amplify_array(amps, target, max_rounds):
    """Array-level amplification with the overshoot guard; returns new amps."""
    norm_sq = float(np.sum(np.abs(amps) ** 2))
    current = abs(amps[target]) ** 2 / norm_sq
    applied = 0
    out = amps
    for _ in range(max_rounds):
        candidate = out.copy()
        candidate[target] = -candidate[target]
        candidate = 2.0 * candidate.mean() - candidate
        candidate /= math.sqrt(float(np.sum(np.abs(candidate) ** 2)))
        nxt = abs(candidate[target]) ** 2
        if nxt <= current + 1e-12:
            break
        out = candidate
        current = nxt
        applied += 1
    return out, applied


def amplify_toward(reg, target, max_rounds):
    """Grover rounds toward ``target``, stopping before the peak is overshot."""
    if not 0 <= target < reg.n_actions:
        raise ValueError("target action out of range")
    amps, applied = _amplify_array(reg.amplitudes, target, max_rounds)
    if applied == 0:
        return reg, 0
    return QuantumActionRegister(amps), applied


# ---------------------------------------------------------------------------
# environment model


@dataclass(frozen=True)
class BaseStationState:
    snr_db: float
    bandwidth_hz: float = 1000.0
    compute_units: float = 1.0
    storage_units: float = 100.0
    available: bool = True

    def __post_init__(self):
        if min(self.bandwidth_hz, self.compute_units, self.storage_units) < 0:
            raise ValueError("station resources must be nonnegative")


@dataclass(frozen=True)
class TaskSpec:
    size_class: int
    bits: float
    cycles: float


DEFAULT_TASKS = (
    TaskSpec(0, 200.0, 1.0),
    TaskSpec(1, 500.0, 2.5),
    TaskSpec(2, 1000.0, 5.0),
)


@dataclass(frozen=True)
class EnvSpec:
    """Stations plus drift parameters controlling per-step fluctuation."""

    env_id: str
    stations: tuple
    drift: float = 0.05
    tasks: tuple = DEFAULT_TASKS
    cloud_reward: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "stations", tuple(self.stations))
        object.__setattr__(self, "tasks", tuple(self.tasks))
        if not self.stations:
            raise ValueError("environment needs at least one station")
        if not 0.0 <= self.drift < 1.0:
            raise ValueError("drift must lie in [0, 1)")

    @property
    def n_actions(self):
        return len(self.stations)

    def sample_task(self, rng):
        return self.tasks[int(rng.integers(len(self.tasks)))]

    def sample_states(self, rng):
        """Stations with resources fluctuated by +-drift (multiplicative)."""
        if self.drift == 0.0:
            return self.stations
        factors = 1.0 + self.drift * rng.uniform(-1.0, 1.0, size=len(self.stations))
        return tuple(
            replace(
                st,
                bandwidth_hz=st.bandwidth_hz * f,
                compute_units=st.compute_units * f,
                storage_units=st.storage_units * f,
            )
            for st, f in zip(self.stations, factors)
        )


def default_env(env_id="Env1", n_stations=4, drift=0.05, cloud_reward=0.0):
    """Graded stations: later indices dominate in every resource factor."""
    stations = []
    for i in range(n_stations):
        stations.append(
            BaseStationState(
                snr_db=5.0 + 2.5 * i,
                bandwidth_hz=600.0 + 400.0 * i,
                compute_units=2.0 + 2.0 * i,
                storage_units=150.0 + 120.0 * i,
            )
        )
    return EnvSpec(env_id, tuple(stations), drift=drift, cloud_reward=cloud_reward)


def shuffled_env(env_id, n_stations=4, order=None, drift=0.05, cloud_reward=0.0):
    """Same station set as ``default_env`` but permuted, so the best arm moves."""
    base = default_env("base", n_stations, drift, cloud_reward).stations
    if order is None:
        order = tuple(reversed(range(n_stations)))
    return EnvSpec(env_id, tuple(base[i] for i in order), drift=drift,
                   cloud_reward=cloud_reward)


# ---------------------------------------------------------------------------
# reward


DEFAULT_REWARD_WEIGHTS = (0.25, 0.25, 0.25, 0.25, 0.25)


def _minmax_vec(values):
    lo = values.min()
    span = values.max() - lo
    if span < 1e-12:
        return np.ones_like(values)
    return (values - lo) / span


def reward_vector(stations, task, weights=DEFAULT_REWARD_WEIGHTS):
    """Reward of every station against the others (availability ignored).

    Factors (SNR, compute, bandwidth, storage) and latency are min-max
    normalized to [0, 1] across ``stations``.
    """
    w1, w2, w3, w4, w5 = weights
    snr = np.fromiter((s.snr_db for s in stations), float)
    comp = np.fromiter((max(s.compute_units, 1e-9) for s in stations), float)
    bw = np.fromiter((max(s.bandwidth_hz, 1e-9) for s in stations), float)
    stor = np.fromiter((s.storage_units for s in stations), float)
    lat = task.bits / bw + task.cycles / comp
    return (
        w1 * _minmax_vec(snr)
        + w2 * _minmax_vec(comp)
        + w3 * _minmax_vec(bw)
        + w4 * _minmax_vec(stor)
        - w5 * _minmax_vec(lat)
    )


def reward(station, task, weights=DEFAULT_REWARD_WEIGHTS, env_states=None):
    """Weighted sum of normalized factors minus a latency penalty.

    A station maximal in every factor with minimal latency scores
    w1+w2+w3+w4; one minimal everywhere scores -w5. Unavailable stations
    refuse the task (the caller falls back to the cloud).
    """
    if not station.available:
        raise OffloadRefused("station unavailable; fall back to cloud")
    states = list(env_states) if env_states is not None else [station]
    try:
        idx = states.index(station)
    except ValueError:
        states.append(station)
        idx = len(states) - 1
    return float(reward_vector(states, task, weights)[idx])


def discounted_return(rewards, gamma):
    """Sum of gamma^k * reward_k (evaluated right to left)."""
    if not 0.0 <= gamma < 1.0:
        raise ValueError("gamma must lie in [0, 1)")
    acc = 0.0
    for r in reversed(list(rewards)):
        acc = r + gamma * acc
    return acc


# ---------------------------------------------------------------------------
# agent


@dataclass(frozen=True)
class RLConfig:
    gamma: float = 0.9
    learning_rate: float = 0.1
    grover_scale: float = 0.15
    max_grover_iters: int = 2
    beta_explore: float = 0.1
    beta_ext: float = 0.1
    episodes: int = 2000
    steps_per_episode: int = 100
    epsilon_start: float = 0.3
    epsilon_end: float = 0.01
    reward_weights: tuple = DEFAULT_REWARD_WEIGHTS

    def __post_init__(self):
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("gamma must lie in [0, 1)")
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must lie in (0, 1]")
        if self.grover_scale <= 0:
            raise ValueError("grover_scale must be positive")
        if self.max_grover_iters < 0 or self.episodes < 1 or self.steps_per_episode < 1:
            raise ValueError("bad iteration counts")
        if self.beta_explore < 0 or self.beta_ext < 0:
            raise ValueError("objective weights must be nonnegative")


@dataclass
class AgentModel:
    """Per-state value table plus amplitude registers (created lazily)."""

    n_actions: int
    config: RLConfig = field(default_factory=RLConfig)
    values: dict = field(default_factory=dict)
    registers: dict = field(default_factory=dict)

    def values_for(self, key):
        if key not in self.values:
            self.values[key] = np.zeros(self.n_actions)
        return self.values[key]

    def register_for(self, key):
        if key not in self.registers:
            self.registers[key] = init_register(self.n_actions)
        return self.registers[key]

    def policy(self, key):
        return self.register_for(key).probabilities()

    def copy(self):
        return AgentModel(
            n_actions=self.n_actions,
            config=self.config,
            values={k: v.copy() for k, v in self.values.items()},
            registers=dict(self.registers),
        )


def state_key(task, states):
    return (task.size_class, tuple(int(s.available) for s in states))


@dataclass(frozen=True)
class TransitionRecord:
    state: tuple
    action: int
    reward: float
    td_target: float
    grover_rounds: int
    offloaded: bool


def train_step(agent, env, rng):
    """One decision step: select, observe, TD-update, amplify.

    The Grover round budget is ``round(grover_scale * max(0, td_target))``
    clipped to ``max_grover_iters``; rounds that would overshoot the target
    amplitude are not applied.
    """
    cfg = agent.config
    task = env.sample_task(rng)
    states = env.sample_states(rng)
    key = state_key(task, states)
    action = select_action(agent.register_for(key), rng)
    station = states[action]
    if station.available:
        r = float(reward_vector(states, task, cfg.reward_weights)[action])
        offloaded = True
    else:
        r = env.cloud_reward
        offloaded = False
    values = agent.values_for(key)
    td_target = r + cfg.gamma * float(values.max())
    values[action] += cfg.learning_rate * (td_target - values[action])
    greedy = int(values.argmax())
    budget = min(
        cfg.max_grover_iters, int(math.floor(cfg.grover_scale * max(0.0, td_target) + 0.5))
    )
    reg, applied = amplify_toward(agent.register_for(key), greedy, budget)
    agent.registers[key] = reg
    return agent, TransitionRecord(key, action, r, td_target, applied, offloaded)


def objective(agent, shared, env=None):
    """Diagnostic scalar: exploitation + exploration + extension.

    Exploitation is the mean best-action value over visited buckets;
    exploration weights the mean policy entropy; extension penalizes total
    variation distance from the shared (collective) policy.
    """
    cfg = agent.config
    keys = sorted(set(agent.values) | set(agent.registers))
    if not keys:
        return 0.0
    exploitation = float(np.mean([agent.values_for(k).max() for k in keys]))
    entropies = []
    distances = []
    for k in keys:
        p = agent.policy(k)
        entropies.append(-float(np.sum(p * np.log(np.maximum(p, 1e-300)))))
        q = shared.policy(k) if shared is not None else p
        distances.append(0.5 * float(np.sum(np.abs(p - q))))
    return (
        exploitation
        + cfg.beta_explore * float(np.mean(entropies))
        - cfg.beta_ext * float(np.mean(distances))
    )


def aggregate_models(models):
    """Average value tables and action probabilities across agents.

    Register phases are discarded: probabilities are averaged and re-embedded
    as real nonnegative amplitudes sqrt(p).
    """
    models = list(models)
    if not models:
        raise AggregationError("nothing to aggregate")
    n_actions = models[0].n_actions
    if any(m.n_actions != n_actions for m in models):
        raise AggregationError("models disagree on the number of actions")
    out = AgentModel(n_actions=n_actions, config=models[0].config)
    keys = sorted({k for m in models for k in set(m.values) | set(m.registers)})
    for k in keys:
        out.values[k] = np.mean([m.values_for(k) for m in models], axis=0)
        probs = np.mean([m.policy(k) for m in models], axis=0)
        probs = probs / probs.sum()
        out.registers[k] = QuantumActionRegister(np.sqrt(probs).astype(np.complex128))
    return out


def adapt(agent, new_env, shared, blend):
    """Warm start for a redeployed agent.

    Values blend toward the shared model by ``blend`` (lambda); registers are
    reset to the shared registers so exploration restarts from the collective
    policy. Training then continues with ``train_step`` on ``new_env``.
    """
    if not 0.0 <= blend <= 1.0:
        raise ValueError("blend must lie in [0, 1]")
    if agent.n_actions != shared.n_actions:
        raise AggregationError("agent and shared model disagree on actions")
    out = AgentModel(n_actions=agent.n_actions, config=agent.config)
    keys = sorted(set(agent.values) | set(shared.values))
    for k in keys:
        own = agent.values_for(k) if k in agent.values else np.zeros(agent.n_actions)
        other = shared.values_for(k) if k in shared.values else np.zeros(agent.n_actions)
        out.values[k] = (1.0 - blend) * own + blend * other
    for k in sorted(shared.registers):
        out.registers[k] = shared.registers[k]
    return out


# ---------------------------------------------------------------------------
# training loops (array fast path; same math as train_step)


class _FastEnv:
    """Per-environment arrays for the episode loops."""

    def __init__(self, env, weights):
        self.env = env
        n = env.n_actions
        self.snr = np.fromiter((s.snr_db for s in env.stations), float, count=n)
        self.bw = np.fromiter((s.bandwidth_hz for s in env.stations), float, count=n)
        self.comp = np.fromiter((s.compute_units for s in env.stations), float, count=n)
        self.stor = np.fromiter((s.storage_units for s in env.stations), float, count=n)
        self.avail = tuple(int(s.available) for s in env.stations)
        self.weights = weights
        self.n = n
        self.snr_norm = _minmax_vec(self.snr)

    def step_rewards(self, task, rng):
        """Reward vector for one step with fresh drift factors."""
        env = self.env
        if env.drift:
            f = 1.0 + env.drift * rng.uniform(-1.0, 1.0, size=self.n)
        else:
            f = np.ones(self.n)
        bw = np.maximum(self.bw * f, 1e-9)
        comp = np.maximum(self.comp * f, 1e-9)
        stor = self.stor * f
        lat = task.bits / bw + task.cycles / comp
        w1, w2, w3, w4, w5 = self.weights
        return (
            w1 * self.snr_norm
            + w2 * _minmax_vec(comp)
            + w3 * _minmax_vec(bw)
            + w4 * _minmax_vec(stor)
            - w5 * _minmax_vec(lat)
        )


def _objective_fast(values, amps, cfg):
    keys = sorted(values)
    if not keys:
        return 0.0
    exploitation = float(np.mean([values[k].max() for k in keys]))
    entropies = []
    for k in keys:
        p = np.abs(amps[k]) ** 2
        p /= p.sum()
        entropies.append(-float(np.sum(p * np.log(np.maximum(p, 1e-300)))))
    return exploitation + cfg.beta_explore * float(np.mean(entropies))


def _run_quantum_episodes(agent, env, config, rng):
    """Episode loop over loop-local arrays; syncs back into the agent."""
    fast = _FastEnv(env, config.reward_weights)
    values = agent.values
    amps = {k: reg.amplitudes.copy() for k, reg in agent.registers.items()}
    n = env.n_actions
    uniform = np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128)
    curve = []
    for episode in range(config.episodes):
        total = 0.0
        for _ in range(config.steps_per_episode):
            task = env.sample_task(rng)
            key = (task.size_class, fast.avail)
            r_vec = fast.step_rewards(task, rng)
            if key not in values:
                values[key] = np.zeros(n)
                amps[key] = uniform.copy()
            a = amps[key]
            probs = np.abs(a) ** 2
            action = _sample_index(probs, rng)
            r = float(r_vec[action]) if fast.avail[action] else env.cloud_reward
            v = values[key]
            td_target = r + config.gamma * float(v.max())
            v[action] += config.learning_rate * (td_target - v[action])
            greedy = int(v.argmax())
            budget = min(
                config.max_grover_iters,
                int(math.floor(config.grover_scale * max(0.0, td_target) + 0.5)),
            )
            if budget and abs(a[greedy]) ** 2 < 1.0 - 1e-9:
                amps[key], _ = _amplify_array(a, greedy, budget)
            total += r
        curve.append(
            {
                "episode": episode,
                "reward": total / config.steps_per_episode,
                "objective": _objective_fast(values, amps, config),
            }
        )
    agent.registers = {k: QuantumActionRegister(a) for k, a in amps.items()}
    return agent, curve


def train_quantum(env, config, rng_seed):
    """Train one quantum-style agent; returns (agent, per-episode curve rows).

    Curve rows are dicts with episode, reward (episode mean) and objective.
    """
    rng = np.random.default_rng(rng_seed)
    agent = AgentModel(n_actions=env.n_actions, config=config)
    return _run_quantum_episodes(agent, env, config, rng)


def resume_training(agent, env, config, rng_seed):
    """Continue training an existing (e.g. freshly adapted) agent on ``env``."""
    rng = np.random.default_rng(rng_seed)
    return _run_quantum_episodes(agent, env, config, rng)


def epsilon_at(config, episode):
    if config.episodes <= 1:
        return config.epsilon_end
    frac = episode / (config.episodes - 1)
    return config.epsilon_start + (config.epsilon_end - config.epsilon_start) * frac


def _egreedy_policy(values, epsilon):
    n = values.shape[0]
    p = np.full(n, epsilon / n)
    p[int(values.argmax())] += 1.0 - epsilon
    return p


def baseline_epsilon_greedy(env, config, rng_seed):
    """Tabular Q-learning with epsilon-greedy exploration (epsilon annealed).

    Returns (agent, curve) shaped like ``train_quantum`` so the two can be
    compared row for row.
    """
    rng = np.random.default_rng(rng_seed)
    agent = AgentModel(n_actions=env.n_actions, config=config)
    fast = _FastEnv(env, config.reward_weights)
    curve = []
    for episode in range(config.episodes):
        eps = epsilon_at(config, episode)
        total = 0.0
        for _ in range(config.steps_per_episode):
            task = env.sample_task(rng)
            key = (task.size_class, fast.avail)
            r_vec = fast.step_rewards(task, rng)
            values = agent.values_for(key)
            if rng.random() < eps:
                action = int(rng.integers(env.n_actions))
            else:
                action = int(values.argmax())
            r = float(r_vec[action]) if fast.avail[action] else env.cloud_reward
            td_target = r + config.gamma * float(values.max())
            values[action] += config.learning_rate * (td_target - values[action])
            total += r
        keys = sorted(agent.values)
        exploitation = float(np.mean([agent.values_for(k).max() for k in keys]))
        entropy = float(
            np.mean(
                [
                    -np.sum(
                        _egreedy_policy(agent.values_for(k), eps)
                        * np.log(np.maximum(_egreedy_policy(agent.values_for(k), eps), 1e-300))
                    )
                    for k in keys
                ]
            )
        )
        curve.append(
            {
                "episode": episode,
                "reward": total / config.steps_per_episode,
                "objective": exploitation + config.beta_explore * entropy,
            }
        )
    return agent, curve
