"""Four-armed Bernoulli bandit solved with a variational policy circuit.

Each episode samples an arm from the circuit's output distribution, draws a
0/1 reward and takes one Adam step on the cost

    J(theta) = -pi_theta(a)   if the reward was 1
    J(theta) = +pi_theta(a)   otherwise

so rewarded arms become more likely and unrewarded ones less likely.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .agent import QuantumAgent, Stream, stream
from .errors import UnknownArmError
from .qsim import sample_index
from .variational import (DEFAULT_LR, BanditPolicy, PolicyParams, adam_step,
                          policy_grad, policy_probs)

ARMS = ("00", "01", "10", "11")
DEFAULT_EPISODES = 100
# Only the optimal arm (0.8) and the 0.2..0.5 range of the others are known.
DEFAULT_PROBS = {"00": 0.2, "01": 0.35, "10": 0.8, "11": 0.5}


@dataclass(frozen=True)
class BanditConfig:
    probs: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_PROBS))
    episodes: int = DEFAULT_EPISODES
    lr: float = DEFAULT_LR
    seed: int = 0

    def __post_init__(self):
        if set(self.probs) != set(ARMS):
            raise UnknownArmError(f"probs must cover exactly the arms {ARMS}, got {sorted(self.probs)}")
        for arm, p in self.probs.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"reward probability for arm {arm} must be in [0, 1], got {p}")
        if self.episodes < 1:
            raise ValueError(f"episodes must be >= 1, got {self.episodes}")


@dataclass(frozen=True)
class EpisodeRecord:
    episode: int
    action: str
    reward: int
    cumulative_reward: int
    policy_probs: tuple[float, ...]
    theta: tuple[float, ...]
    estimates: tuple[float, ...]


def default_env(seed: int = 0) -> BanditConfig:
    return BanditConfig(seed=seed)


def parse_probs(text: str) -> dict[str, float]:
    """Parse ``"00=0.2,01=0.35,10=0.8,11=0.5"``."""
    probs = {}
    for item in text.split(","):
        arm, sep, value = item.strip().partition("=")
        if not sep:
            raise ValueError(f"expected arm=prob, got {item!r}")
        probs[arm.strip()] = float(value)
    return probs


def pull_arm(config: BanditConfig, arm: str, rng: np.random.Generator) -> int:
    try:
        p = config.probs[arm]
    except KeyError:
        raise UnknownArmError(f"unknown arm {arm!r}") from None
    return int(rng.random() < p)


def cost_gradient(spec, params, action_index: int, reward: int) -> np.ndarray:
    grad = policy_grad(spec, params, action_index)
    return -grad if reward == 1 else grad


def update_policy(params: PolicyParams, action_index: int, reward: int, lr: float,
                  spec=BanditPolicy()) -> PolicyParams:
    return adam_step(params, cost_gradient(spec, params, action_index, reward), lr)


class BanditAgent(QuantumAgent):
    def __init__(self, config: BanditConfig, simulator=None):
        super().__init__(simulator)
        self.config = config
        self.spec = BanditPolicy()
        self.params = PolicyParams.initial()
        self.action_rng = stream(config.seed, Stream.ACTION)
        self.env_rng = stream(config.seed, Stream.ENVIRONMENT)
        self.cumulative_reward = 0
        self.counts = np.zeros(len(ARMS), dtype=np.int64)
        self.estimates = np.zeros(len(ARMS))

    def perceive(self, observation=None):
        # stateless environment: the only input is the current policy
        return policy_probs(self.spec, self.params, self.simulator)

    def decide(self, probs):
        return sample_index(probs, self.action_rng.random())

    def act(self, action_index):
        return pull_arm(self.config, ARMS[action_index], self.env_rng)

    def learn(self, probs, action_index, reward):
        self.cumulative_reward += reward
        self.counts[action_index] += 1
        n = self.counts[action_index]
        self.estimates[action_index] += (reward - self.estimates[action_index]) / n
        self.params = update_policy(self.params, action_index, reward, self.config.lr, self.spec)

    def record(self, probs, action_index, reward):
        return EpisodeRecord(
            episode=len(self.memory) + 1,
            action=ARMS[action_index],
            reward=reward,
            cumulative_reward=self.cumulative_reward,
            policy_probs=tuple(float(p) for p in probs),
            theta=tuple(float(t) for t in self.params.theta),
            estimates=tuple(float(e) for e in self.estimates),
        )


def train(config: BanditConfig, simulator=None) -> list[EpisodeRecord]:
    agent = BanditAgent(config, simulator)
    for _ in range(config.episodes):
        agent.step()
    return agent.memory


def arm_frequencies(records, last: int | None = None) -> dict[str, int]:
    window = records if last is None else records[-last:]
    freq = dict.fromkeys(ARMS, 0)
    for r in window:
        freq[r.action] += 1
    return freq


def modal_arm(records, last: int | None = None) -> str:
    freq = arm_frequencies(records, last)
    best = max(freq.values())
    return min(a for a, c in freq.items() if c == best)
