"""Quantum agent prototypes on a small statevector simulator.

Three agents share one simulator and one perceive/decide/act skeleton:

* :mod:`qagentlab.grover`: Grover-search action selection
* :mod:`qagentlab.bandit`: variational-policy multi-armed bandit
* :mod:`qagentlab.qie`: adaptive quantum image encryption
"""
from .agent import QuantumAgent, Stream, stream
from .qsim import Circuit, GateOp, ShotHistogram, Statevector, StatevectorSimulator

__version__ = "0.1.0"

__all__ = ["Circuit", "GateOp", "QuantumAgent", "ShotHistogram", "Statevector",
           "StatevectorSimulator", "Stream", "stream"]
