"""Two-qubit Grover action selection: one oracle + diffuser round.

With four candidate actions a single Grover iteration rotates the uniform
state exactly onto the marked one, so the measured decision is
deterministic for any shot count.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .agent import QuantumAgent
from .qsim import Circuit, ShotHistogram, StatevectorSimulator, probabilities, sample

ACTIONS = ("00", "01", "10", "11")
DEFAULT_SHOTS = 1024


def _check_target(target):
    if target not in ACTIONS:
        raise ValueError(f"target must be one of {ACTIONS}, got {target!r}")


@dataclass(frozen=True)
class GroverTask:
    target: str = "10"
    shots: int = DEFAULT_SHOTS

    def __post_init__(self):
        _check_target(self.target)
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")


def build_oracle(target: str) -> Circuit:
    """Phase-flip ``|target>``: X on the zero bits, CZ, undo the X gates."""
    _check_target(target)
    flips = [q for q, bit in enumerate(target) if bit == "0"]
    c = Circuit(2)
    for q in flips:
        c.x(q)
    c.cz(0, 1)
    for q in flips:
        c.x(q)
    return c


def build_diffuser() -> Circuit:
    """Inversion about the mean, ``2|s><s| - I`` up to a global phase."""
    return (Circuit(2)
            .h(0).h(1)
            .x(0).x(1)
            .cz(0, 1)
            .x(0).x(1)
            .h(0).h(1))


def grover_circuit(target: str) -> Circuit:
    prep = Circuit(2).h(0).h(1)
    return prep.compose(build_oracle(target)).compose(build_diffuser())


class GroverAgent(QuantumAgent):
    """Observation is the marked action; the decision is the modal outcome."""

    def __init__(self, shots=DEFAULT_SHOTS, rng=None, simulator=None):
        super().__init__(simulator)
        self.shots = shots
        self.rng = rng if rng is not None else np.random.default_rng()
        self.last_probabilities = None

    def perceive(self, observation):
        return grover_circuit(observation)

    def decide(self, circuit):
        state = self.simulator.run(circuit)
        self.last_probabilities = probabilities(state)
        return sample(state, self.shots, self.rng)

    def act(self, histogram):
        return histogram.most_frequent()

    def record(self, circuit, histogram, chosen):
        return chosen, histogram


def select_action(task: GroverTask, rng: np.random.Generator,
                  simulator: StatevectorSimulator | None = None) -> tuple[str, ShotHistogram]:
    agent = GroverAgent(task.shots, rng, simulator)
    return agent.step(task.target)
