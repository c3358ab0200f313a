from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from ..bandit import DEFAULT_PROBS, BanditConfig
from ..grover import DEFAULT_SHOTS, GroverTask
from ..qie import DEFAULT_EPISODES as QIE_EPISODES
from ..qie import SEGMENT_MODES
from ..variational import DEFAULT_LR

AGENTS = ("grover", "bandit", "qie")
SYNTHETIC_IMAGES = ("constant", "gradient", "noise")

# parameters recorded in each agent's log header (and replayed from it)
AGENT_PARAMS = {
    "grover": ("target", "shots"),
    "bandit": ("episodes", "lr", "probs"),
    "qie": ("image", "synthetic", "size", "episodes", "lr", "segment_mode"),
}


@dataclass
class ExperimentConfig:
    agent: str
    seed: int = 0
    output_dir: Path = Path("runs")
    plots: bool = False
    # grover
    target: str = "10"
    shots: int = DEFAULT_SHOTS
    # bandit / qie
    episodes: int | None = None
    lr: float = DEFAULT_LR
    probs: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_PROBS))
    # qie
    image: str | None = None
    synthetic: str | None = None
    size: int = 64
    segment_mode: str = "image"

    def __post_init__(self):
        if self.agent not in AGENTS:
            raise ValueError(f"agent must be one of {AGENTS}, got {self.agent!r}")
        self.output_dir = Path(self.output_dir)
        if self.episodes is None:
            self.episodes = QIE_EPISODES if self.agent == "qie" else 100
        if self.agent == "grover":
            GroverTask(self.target, self.shots)
        elif self.agent == "bandit":
            self.bandit_config()
        else:
            if (self.image is None) == (self.synthetic is None):
                raise ValueError("qie needs exactly one of --image or --synthetic")
            if self.synthetic is not None and self.synthetic not in SYNTHETIC_IMAGES:
                raise ValueError(f"synthetic image must be one of {SYNTHETIC_IMAGES}")
            if self.segment_mode not in SEGMENT_MODES:
                raise ValueError(f"segment_mode must be one of {SEGMENT_MODES}")
            if self.episodes < 1 or self.size < 1:
                raise ValueError("episodes and size must be >= 1")

    def bandit_config(self) -> BanditConfig:
        return BanditConfig(dict(self.probs), self.episodes, self.lr, self.seed)

    def params(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in AGENT_PARAMS[self.agent]}


def config_fields():
    return {f.name for f in fields(ExperimentConfig)}


def load_config_file(path) -> dict:
    """Read a JSON object of ExperimentConfig fields."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: config file must hold a JSON object")
    unknown = set(data) - config_fields()
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
    return data
