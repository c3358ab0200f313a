"""Experiment runner, trajectory logs, replay and the command line."""
from .config import ExperimentConfig
from .replay import ReplayResult, replay
from .runner import RunResult, run_experiment
from .sweep import parse_seeds, run_sweep

__all__ = ["ExperimentConfig", "ReplayResult", "RunResult", "parse_seeds", "replay",
           "run_experiment", "run_sweep"]
