"""Two-qubit policy circuits, parameter-shift gradients and Adam.

Both policies have exactly four trainable angles and output a distribution
over the basis states ``00, 01, 10, 11``.

Bandit ansatz (reconstructed, the original figure is not recoverable)::

    q0: RY(t0) --*-- RX(t2)
    q1: RY(t1) --X-- RX(t3)

Image-encryption ansatz, with the input feature ``x`` encoded first::

    q0: RY(x0) RZ(t0) --*-- RY(t2)
    q1: RY(x1) RZ(t1) --X-- RY(t3)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np

from .errors import OptimizerError
from .qsim import Circuit, probabilities, run

NUM_PARAMS = 4
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8
DEFAULT_LR = 0.1


@dataclass(frozen=True)
class BanditPolicy:
    def circuit(self, theta) -> Circuit:
        t0, t1, t2, t3 = theta
        return (Circuit(2)
                .ry(0, t0).ry(1, t1)
                .cnot(0, 1)
                .rx(0, t2).rx(1, t3))


@dataclass(frozen=True)
class QiePolicy:
    x: tuple[float, float] = (0.0, 0.0)

    def circuit(self, theta) -> Circuit:
        t0, t1, t2, t3 = theta
        x0, x1 = self.x
        return (Circuit(2)
                .ry(0, x0).ry(1, x1)
                .rz(0, t0).rz(1, t1)
                .cnot(0, 1)
                .ry(0, t2).ry(1, t3))


PolicyCircuitSpec = BanditPolicy | QiePolicy


def _zeros():
    return np.zeros(NUM_PARAMS)


@dataclass(frozen=True)
class PolicyParams:
    """Policy angles together with Adam's moment estimates."""

    theta: np.ndarray
    adam_m: np.ndarray = field(default_factory=_zeros)
    adam_v: np.ndarray = field(default_factory=_zeros)
    step_count: int = 0

    def __post_init__(self):
        for name in ("theta", "adam_m", "adam_v"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (NUM_PARAMS,):
                raise ValueError(f"{name} must have {NUM_PARAMS} entries, got shape {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def initial(cls, value: float = pi / 4) -> PolicyParams:
        return cls(np.full(NUM_PARAMS, value))


def _theta(params):
    return params.theta if isinstance(params, PolicyParams) else np.asarray(params, dtype=float)


def policy_probs(spec: PolicyCircuitSpec, params, simulator=None) -> np.ndarray:
    """Probabilities of ``00, 01, 10, 11`` for the policy circuit.

    ``params`` may be a :class:`PolicyParams` or a bare angle vector.
    """
    circuit = spec.circuit(_theta(params))
    state = run(circuit) if simulator is None else simulator.run(circuit)
    return probabilities(state)


def policy_grad(spec: PolicyCircuitSpec, params, outcome_index: int) -> np.ndarray:
    """d pi(outcome) / d theta_j by the two-term parameter-shift rule.

    Exact here because every angle enters through a single Pauli rotation.
    """
    theta = _theta(params)
    grad = np.empty(NUM_PARAMS)
    for j in range(NUM_PARAMS):
        shift = np.zeros(NUM_PARAMS)
        shift[j] = pi / 2
        plus = policy_probs(spec, theta + shift)[outcome_index]
        minus = policy_probs(spec, theta - shift)[outcome_index]
        grad[j] = 0.5 * (plus - minus)
    return grad


def adam_step(params: PolicyParams, grad, lr: float = DEFAULT_LR) -> PolicyParams:
    """One bias-corrected Adam step; returns new params, input untouched."""
    g = np.asarray(grad, dtype=float)
    if g.shape != (NUM_PARAMS,):
        raise OptimizerError(f"gradient must have {NUM_PARAMS} entries, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise OptimizerError(f"non-finite gradient {g}")
    t = params.step_count + 1
    m = ADAM_BETA1 * params.adam_m + (1 - ADAM_BETA1) * g
    v = ADAM_BETA2 * params.adam_v + (1 - ADAM_BETA2) * g * g
    m_hat = m / (1 - ADAM_BETA1 ** t)
    v_hat = v / (1 - ADAM_BETA2 ** t)
    theta = params.theta - lr * m_hat / (np.sqrt(v_hat) + ADAM_EPS)
    return PolicyParams(theta, m, v, t)
