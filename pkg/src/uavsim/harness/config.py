"""Experiment configuration: INI-style ``key = value`` text with one section
per module. Unknown sections or keys are rejected (with line numbers), every
value is type- and range-checked, and the canonical serialization feeds the
config hash recorded in per-run provenance.
"""

import configparser
import hashlib
from dataclasses import dataclass, field
from importlib import resources

from ..errors import ValidationError
from ..qrl import RLConfig


def _positive(v):
    return v > 0


def _nonnegative(v):
    return v >= 0


def _fraction(v):
    return 0.0 <= v <= 1.0


# section -> key -> (type, default, predicate or allowed tuple)
SCHEMA = {
    "experiment": {
        "master_seed": (int, 7, _nonnegative),
        "replicates": (int, 10, _positive),
    },
    "semantics": {
        "n_object_categories": (int, 10, lambda v: 2 <= v <= 64),
        "n_predicates": (int, 8, lambda v: 2 <= v <= 64),
        "scene_size_min": (int, 4, lambda v: 1 <= v <= 16),
        "scene_size_max": (int, 12, lambda v: 1 <= v <= 16),
        "detector_error_rate": (float, 0.2, _fraction),
        "detector_list_length": (int, 100, _positive),
        "scenes_per_cell": (int, 8, _positive),
    },
    "semcom": {
        "snr_db": (float, 9.0, lambda v: -20.0 <= v <= 60.0),
        "channel": (str, "awgn", ("awgn", "rician", "rayleigh")),
        "code": (str, "hamming74", ("none", "repetition3", "hamming74")),
        "min_count": (int, 5, _positive),
        "rician_k": (float, 3.0, _nonnegative),
        "batch_sentences": (int, 200, _positive),
        "snr_sweep": (str, "0:18:3", None),
        "image_size": (int, 64, lambda v: 8 <= v <= 512),
        "image_frames": (int, 6, _positive),
    },
    "qrl": {
        "gamma": (float, 0.9, lambda v: 0.0 <= v < 1.0),
        "learning_rate": (float, 0.1, lambda v: 0.0 < v <= 1.0),
        "grover_scale": (float, 0.15, _positive),
        "max_grover_iters": (int, 2, _nonnegative),
        "beta_explore": (float, 0.1, _nonnegative),
        "beta_ext": (float, 0.1, _nonnegative),
        "episodes": (int, 2000, _positive),
        "total_period": (int, 1000, _positive),
        "decision_interval": (int, 10, _positive),
        "n_stations": (int, 4, _positive),
        "adapt_blend": (float, 1.0, _fraction),
        "station_drift": (float, 0.05, lambda v: 0.0 <= v < 1.0),
    },
    "offload": {
        "n_uavs": (int, 20, _positive),
        "station_capacity": (int, 6, _nonnegative),
        "episodes": (int, 60, _positive),
        "cloud_reward": (float, 0.05, None),
        "station_sweep_max": (int, 4, _positive),
        "abundant_resources": (bool, False, None),
    },
    "chain": {
        "k_min": (int, 5, lambda v: v >= 4),
        "k_max": (int, 50, _positive),
        "k_step": (int, 5, _positive),
        "bandwidth_budget": (float, 40.0, _positive),
        "compute_budget": (float, 10.0, _positive),
        "verify_unit_cost": (float, 0.002, _positive),
        "msg_unit_cost": (float, 0.001, _positive),
        "primary_load_factor": (float, 2.0, lambda v: v >= 1.0),
        "pbft_per_pow": (int, 30, _positive),
        "tx_per_block": (int, 100, _positive),
        "duration": (float, 600.0, _positive),
    },
    "auction": {
        "n_vsps": (int, 20, _positive),
        "n_uavs": (int, 20, _positive),
        "rounds": (int, 5, _positive),
        "image_pool_size": (int, 200, _positive),
        "relatedness_weight": (float, 1.0, _positive),
        "unit_price_low": (float, 0.1, _positive),
        "unit_price_high": (float, 1.0, _positive),
        "max_request": (int, 3, _positive),
        "scene_size_min": (int, 3, lambda v: 1 <= v <= 16),
        "scene_size_max": (int, 8, lambda v: 1 <= v <= 16),
    },
}


@dataclass
class ExperimentConfig:
    """All tunables, keyed ``section.key``; see SCHEMA for types and ranges."""

    values: dict = field(default_factory=dict)

    def __post_init__(self):
        merged = {}
        for section, keys in SCHEMA.items():
            for key, (_, default, _check) in keys.items():
                merged[f"{section}.{key}"] = default
        merged.update(self.values)
        self.values = merged
        self._validate()

    def _validate(self):
        for fullkey, value in self.values.items():
            section, _, key = fullkey.partition(".")
            if section not in SCHEMA or key not in SCHEMA[section]:
                raise ValidationError(f"unknown config key {fullkey!r}")
            typ, _default, check = SCHEMA[section][key]
            if not isinstance(value, typ):
                raise ValidationError(f"{fullkey} must be {typ.__name__}")
            if isinstance(check, tuple):
                if value not in check:
                    raise ValidationError(f"{fullkey} must be one of {check}")
            elif check is not None and not check(value):
                raise ValidationError(f"{fullkey} = {value!r} out of range")
        if self["semantics.scene_size_min"] > self["semantics.scene_size_max"]:
            raise ValidationError("semantics scene size range is inverted")
        if self["auction.scene_size_min"] > self["auction.scene_size_max"]:
            raise ValidationError("auction scene size range is inverted")
        if self["auction.unit_price_low"] > self["auction.unit_price_high"]:
            raise ValidationError("auction unit price range is inverted")
        if self["chain.k_min"] > self["chain.k_max"]:
            raise ValidationError("chain committee sweep range is inverted")

    def __getitem__(self, fullkey):
        return self.values[fullkey]

    def override(self, **kv):
        """Copy with ``section_key=value`` style overrides applied."""
        updated = dict(self.values)
        for k, v in kv.items():
            updated[k.replace("__", ".")] = v
        return ExperimentConfig(updated)

    @property
    def master_seed(self):
        return self["experiment.master_seed"]

    @property
    def replicates(self):
        return self["experiment.replicates"]

    @property
    def steps_per_episode(self):
        return max(1, self["qrl.total_period"] // self["qrl.decision_interval"])

    def rl_config(self, episodes=None):
        return RLConfig(
            gamma=self["qrl.gamma"],
            learning_rate=self["qrl.learning_rate"],
            grover_scale=self["qrl.grover_scale"],
            max_grover_iters=self["qrl.max_grover_iters"],
            beta_explore=self["qrl.beta_explore"],
            beta_ext=self["qrl.beta_ext"],
            episodes=episodes if episodes is not None else self["qrl.episodes"],
            steps_per_episode=self.steps_per_episode,
        )

    def snr_sweep(self):
        return parse_sweep(self["semcom.snr_sweep"])

    def k_sweep(self):
        return list(
            range(self["chain.k_min"], self["chain.k_max"] + 1, self["chain.k_step"])
        )

    def to_text(self):
        lines = []
        for section in sorted(SCHEMA):
            lines.append(f"[{section}]")
            for key in sorted(SCHEMA[section]):
                value = self.values[f"{section}.{key}"]
                if isinstance(value, bool):
                    value = "true" if value else "false"
                lines.append(f"{key} = {value}")
            lines.append("")
        return "\n".join(lines)

    def config_hash(self):
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()[:16]

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_text())


def parse_sweep(spec):
    """Parse ``start:stop:step`` (inclusive stop) into a list of numbers."""
    try:
        parts = [float(p) for p in str(spec).split(":")]
    except ValueError as exc:
        raise ValidationError(f"bad sweep spec {spec!r}") from exc
    if len(parts) == 1:
        return [parts[0]]
    if len(parts) != 3 or parts[2] <= 0:
        raise ValidationError(f"bad sweep spec {spec!r}; expected start:stop:step")
    start, stop, step = parts
    out = []
    v = start
    while v <= stop + 1e-9:
        out.append(round(v, 9))
        v += step
    return out


def _coerce(raw, typ, fullkey, line):
    try:
        if typ is bool:
            lowered = raw.strip().lower()
            if lowered in ("true", "1", "yes", "on"):
                return True
            if lowered in ("false", "0", "no", "off"):
                return False
            raise ValueError(raw)
        if typ is int:
            return int(raw)
        if typ is float:
            return float(raw)
        return raw.strip()
    except ValueError as exc:
        raise ValidationError(
            f"cannot parse {fullkey} value {raw!r} as {typ.__name__}", line=line
        ) from exc


def _line_of(text, section, key=None):
    """Best-effort 1-based line number of a section header or key."""
    in_section = section is None
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            if key is None and stripped == f"[{section}]":
                return i
            in_section = stripped == f"[{section}]"
            continue
        if key is not None and in_section and stripped.split("=")[0].strip() == key:
            return i
    return None


def parse_config_text(text):
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        raise ValidationError(f"config parse error: {exc}", line=line) from exc
    values = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise ValidationError(
                f"unknown section [{section}]", line=_line_of(text, section)
            )
        for key, raw in parser.items(section):
            if key not in SCHEMA[section]:
                raise ValidationError(
                    f"unknown key {key!r} in [{section}]",
                    line=_line_of(text, section, key),
                )
            typ = SCHEMA[section][key][0]
            values[f"{section}.{key}"] = _coerce(
                raw, typ, f"{section}.{key}", _line_of(text, section, key)
            )
    return ExperimentConfig(values)


def load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def default_config():
    return ExperimentConfig({})


def bundled_config_path():
    return resources.files("uavsim.harness").joinpath("data/default_config.ini")
