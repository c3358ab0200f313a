from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..errors import LogParseError
from .config import AGENT_PARAMS, AGENTS, ExperimentConfig
from .logs import fmt, read_log
from .runner import image_digest, load_image, trajectory


@dataclass
class ReplayResult:
    identical: bool
    agent: str
    seed: int
    rows_checked: int
    divergence_episode: int | None = None
    divergence_line: int | None = None
    column: str | None = None
    expected: str | None = None
    found: str | None = None
    message: str = ""


def _config_from_log(log) -> ExperimentConfig:
    if log.agent not in AGENTS:
        raise LogParseError(f"unknown agent {log.agent!r}", 1)
    params = {k: log.config[k] for k in AGENT_PARAMS[log.agent] if k in log.config}
    try:
        return ExperimentConfig(agent=log.agent, seed=log.seed, **params)
    except (TypeError, ValueError) as exc:
        raise LogParseError(f"invalid config: {exc}", 2) from None


def replay(log_path) -> ReplayResult:
    """Re-run the experiment recorded in ``log_path`` and compare row by row."""
    log = read_log(log_path)
    config = _config_from_log(log)
    result = ReplayResult(True, log.agent, log.seed, 0)

    if config.agent == "qie" and "image_sha256" in log.config:
        if image_digest(load_image(config)) != log.config["image_sha256"]:
            result.identical = False
            result.message = f"input image {config.image or config.synthetic} differs from the logged run"
            return result

    traj = trajectory(config)
    if traj.columns != log.columns:
        raise LogParseError(f"columns {log.columns} do not match agent {log.agent}", 3)
    expected_rows = [[fmt(v) for v in row] for row in traj.rows]

    for i, (want, got) in enumerate(zip(expected_rows, log.rows)):
        result.rows_checked = i + 1
        if want != got:
            col = next(j for j, (a, b) in enumerate(zip(want, got)) if a != b)
            result.identical = False
            result.divergence_episode = i + 1
            result.divergence_line = log.row_lines[i]
            result.column = log.columns[col]
            result.expected, result.found = want[col], got[col]
            result.message = (f"diverged at episode {i + 1} (line {log.row_lines[i]}), "
                              f"column {result.column}: expected {want[col]}, log has {got[col]}")
            return result

    if len(expected_rows) != len(log.rows):
        result.identical = False
        result.divergence_episode = min(len(expected_rows), len(log.rows)) + 1
        result.message = f"log has {len(log.rows)} rows, replay produced {len(expected_rows)}"
        return result

    result.message = f"identical: {result.rows_checked} rows of {Path(log_path).name} reproduced"
    return result
