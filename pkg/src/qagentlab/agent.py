"""Common agent skeleton and seeded random streams.

Every agent is the same five-part object:

* ``simulator``: quantum resources (a :class:`StatevectorSimulator`)
* ``step``/training loops: classical control around the circuits
* ``memory``: the trajectory log, one record per step
* :meth:`QuantumAgent.perceive`: observation -> internal feature
* :meth:`QuantumAgent.act`: decision -> effect on the environment

:meth:`QuantumAgent.decide` is where the circuits run.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from enum import IntEnum

import numpy as np

from .qsim import StatevectorSimulator


class Stream(IntEnum):
    """Component ids for :func:`stream`. Append new ids; never renumber."""

    MEASUREMENT = 0
    ACTION = 1
    ENVIRONMENT = 2
    KEY = 3
    ENCRYPTION = 4


def stream(seed: int, component: Stream | int) -> np.random.Generator:
    """Independent generator for one component of a seeded experiment.

    ``SeedSequence(seed, spawn_key=(component,))`` gives each component its
    own stream, so adding a component never shifts the draws of another.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(component),))
    return np.random.Generator(np.random.PCG64(ss))


class QuantumAgent(ABC):
    def __init__(self, simulator: StatevectorSimulator | None = None):
        self.simulator = simulator if simulator is not None else StatevectorSimulator()
        self.memory: list = []

    @abstractmethod
    def perceive(self, observation):
        ...

    @abstractmethod
    def decide(self, feature):
        ...

    @abstractmethod
    def act(self, decision):
        ...

    def learn(self, feature, decision, outcome):
        """Update internal policy from one interaction; default is a no-op."""

    @abstractmethod
    def record(self, feature, decision, outcome):
        """Build the memory entry for one step."""

    def step(self, observation=None):
        feature = self.perceive(observation)
        decision = self.decide(feature)
        outcome = self.act(decision)
        self.learn(feature, decision, outcome)
        entry = self.record(feature, decision, outcome)
        self.memory.append(entry)
        return entry
