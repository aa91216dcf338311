"""Experiment orchestration: configs, topology, runners, reports, CLI."""

from .config import ExperimentConfig, load_config
from .experiments import EXPERIMENTS, run_experiment
from .offload import run_offload_sim
from .report import RunSummary, emit_report
from .topology import Topology, load_topology

__all__ = [
    "EXPERIMENTS",
    "ExperimentConfig",
    "RunSummary",
    "Topology",
    "emit_report",
    "load_config",
    "load_topology",
    "run_experiment",
    "run_offload_sim",
]
