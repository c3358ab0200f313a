"""Dense statevector simulator.

Bit ordering: qubit 0 is the most significant bit. Basis index ``i`` of an
``n``-qubit register is the bitstring ``format(i, f"0{n}b")``, so for two
qubits ``|10>`` means q0=1, q1=0 and sits at index 2.

Rotation conventions: ``RX(t) = exp(-i t X / 2)``, ``RY(t) = exp(-i t Y / 2)``,
``RZ(t) = exp(-i t Z / 2)``. ``CPHASE(phi)`` multiplies ``|11>`` by ``e^{i phi}``.

Gates are applied by stride kernels over a reshaped view of the amplitude
array. :func:`circuit_unitary` builds full matrices independently and is
meant as a test oracle for small circuits.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from math import cos, sin, sqrt

import numpy as np

from .errors import EmptyMeasurementError, InvalidGateError, SizeLimitError

MAX_QUBITS = 10
UNITARY_MAX_QUBITS = 6

ONE_QUBIT_GATES = frozenset({"H", "X", "RX", "RY", "RZ"})
TWO_QUBIT_GATES = frozenset({"CNOT", "CZ", "SWAP", "CPHASE"})
PARAMETRIC_GATES = frozenset({"RX", "RY", "RZ", "CPHASE"})


@dataclass(frozen=True)
class GateOp:
    """One gate instance: a name, the qubits it acts on, and an optional angle."""

    name: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.name in ONE_QUBIT_GATES:
            arity = 1
        elif self.name in TWO_QUBIT_GATES:
            arity = 2
        else:
            raise InvalidGateError(f"unknown gate {self.name!r}")
        if len(self.qubits) != arity:
            raise InvalidGateError(f"{self.name} takes {arity} qubit(s), got {self.qubits}")
        if any(int(q) != q or q < 0 for q in self.qubits):
            raise InvalidGateError(f"{self.name}: qubit indices must be non-negative ints")
        if len(set(self.qubits)) != len(self.qubits):
            raise InvalidGateError(f"{self.name}: repeated qubit in {self.qubits}")
        if (self.name in PARAMETRIC_GATES) != (self.angle is not None):
            raise InvalidGateError(f"{self.name}: angle {'required' if self.angle is None else 'not allowed'}")

    def check(self, num_qubits: int):
        if max(self.qubits) >= num_qubits:
            raise InvalidGateError(
                f"{self.name}{self.qubits} out of range for {num_qubits} qubit(s)")

    def inverse(self) -> GateOp:
        if self.angle is None:
            return self
        return GateOp(self.name, self.qubits, -self.angle)


def H(q):
    return GateOp("H", (q,))


def X(q):
    return GateOp("X", (q,))


def RX(q, angle):
    return GateOp("RX", (q,), float(angle))


def RY(q, angle):
    return GateOp("RY", (q,), float(angle))


def RZ(q, angle):
    return GateOp("RZ", (q,), float(angle))


def CNOT(control, target):
    return GateOp("CNOT", (control, target))


def CZ(control, target):
    return GateOp("CZ", (control, target))


def SWAP(a, b):
    return GateOp("SWAP", (a, b))


def CPHASE(control, target, phi):
    return GateOp("CPHASE", (control, target), float(phi))


def gate_matrix(op: GateOp) -> np.ndarray:
    """Local matrix of ``op``; two-qubit matrices index as (first, second) qubit."""
    name, t = op.name, op.angle
    if name == "H":
        return np.array([[1, 1], [1, -1]], dtype=complex) / sqrt(2)
    if name == "X":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if name == "RX":
        c, s = cos(t / 2), sin(t / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if name == "RY":
        c, s = cos(t / 2), sin(t / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if name == "RZ":
        return np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])
    if name == "CNOT":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    if name == "CZ":
        return np.diag([1, 1, 1, -1]).astype(complex)
    if name == "SWAP":
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    if name == "CPHASE":
        return np.diag([1, 1, 1, np.exp(1j * t)])
    raise InvalidGateError(f"unknown gate {name!r}")


@dataclass
class Circuit:
    """Ordered gate list over a fixed register size.

    Builder methods return the circuit so calls can be chained::

        Circuit(2).h(0).h(1).cz(0, 1)
    """

    num_qubits: int
    ops: list[GateOp] = field(default_factory=list)

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise SizeLimitError(f"num_qubits must be in 1..{MAX_QUBITS}, got {self.num_qubits}")
        ops, self.ops = list(self.ops), []
        self.extend(ops)

    def append(self, op: GateOp) -> Circuit:
        op.check(self.num_qubits)
        self.ops.append(op)
        return self

    def extend(self, ops: Iterable[GateOp]) -> Circuit:
        for op in ops:
            self.append(op)
        return self

    def compose(self, other: Circuit) -> Circuit:
        """Return a new circuit running ``self`` then ``other``."""
        if other.num_qubits != self.num_qubits:
            raise InvalidGateError("cannot compose circuits of different widths")
        return Circuit(self.num_qubits, self.ops + other.ops)

    def inverse(self) -> Circuit:
        return Circuit(self.num_qubits, [op.inverse() for op in reversed(self.ops)])

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def h(self, q):
        return self.append(H(q))

    def x(self, q):
        return self.append(X(q))

    def rx(self, q, angle):
        return self.append(RX(q, angle))

    def ry(self, q, angle):
        return self.append(RY(q, angle))

    def rz(self, q, angle):
        return self.append(RZ(q, angle))

    def cnot(self, control, target):
        return self.append(CNOT(control, target))

    def cz(self, control, target):
        return self.append(CZ(control, target))

    def swap(self, a, b):
        return self.append(SWAP(a, b))

    def cphase(self, control, target, phi):
        return self.append(CPHASE(control, target, phi))


class Statevector:
    """Normalized amplitude vector of ``num_qubits`` qubits (complex128)."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes, num_qubits=None, *, atol=1e-10):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        n = int(round(np.log2(amps.size))) if num_qubits is None else int(num_qubits)
        if not 1 <= n <= MAX_QUBITS:
            raise SizeLimitError(f"num_qubits must be in 1..{MAX_QUBITS}, got {n}")
        if amps.size != 1 << n:
            raise ValueError(f"expected {1 << n} amplitudes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > atol:
            raise ValueError(f"statevector not normalized (|psi|^2 = {norm})")
        self.num_qubits = n
        self.amplitudes = amps

    @classmethod
    def zero(cls, num_qubits: int) -> Statevector:
        return cls.basis(num_qubits, 0)

    @classmethod
    def basis(cls, num_qubits: int, index: int | str) -> Statevector:
        if isinstance(index, str):
            if len(index) != num_qubits or set(index) - {"0", "1"}:
                raise ValueError(f"bad bitstring {index!r} for {num_qubits} qubit(s)")
            index = int(index, 2)
        if not 0 <= index < (1 << num_qubits):
            raise ValueError(f"basis index {index} out of range")
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps, num_qubits)

    def copy(self) -> Statevector:
        new = object.__new__(Statevector)
        new.num_qubits = self.num_qubits
        new.amplitudes = self.amplitudes.copy()
        return new

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def __repr__(self):
        return f"Statevector(num_qubits={self.num_qubits}, amplitudes={self.amplitudes!r})"


def _axis_index(n, fixed):
    idx = [slice(None)] * n
    for q, v in fixed.items():
        idx[q] = v
    return tuple(idx)


def _apply_inplace(amps: np.ndarray, n: int, op: GateOp):
    if op.name in ONE_QUBIT_GATES:
        (q,) = op.qubits
        m = gate_matrix(op)
        # view: (bits above q, bit q, bits below q)
        view = amps.reshape(1 << q, 2, 1 << (n - q - 1))
        lo = view[:, 0, :].copy()
        hi = view[:, 1, :]
        view[:, 0, :] = m[0, 0] * lo + m[0, 1] * hi
        view[:, 1, :] = m[1, 0] * lo + m[1, 1] * hi
        return

    a, b = op.qubits
    psi = amps.reshape((2,) * n)
    if op.name == "CNOT":
        i10 = _axis_index(n, {a: 1, b: 0})
        i11 = _axis_index(n, {a: 1, b: 1})
        tmp = psi[i10].copy()
        psi[i10] = psi[i11]
        psi[i11] = tmp
    elif op.name == "SWAP":
        i01 = _axis_index(n, {a: 0, b: 1})
        i10 = _axis_index(n, {a: 1, b: 0})
        tmp = psi[i01].copy()
        psi[i01] = psi[i10]
        psi[i10] = tmp
    elif op.name == "CZ":
        psi[_axis_index(n, {a: 1, b: 1})] *= -1.0
    elif op.name == "CPHASE":
        psi[_axis_index(n, {a: 1, b: 1})] *= np.exp(1j * op.angle)
    else:  # pragma: no cover - GateOp validates names
        raise InvalidGateError(op.name)


def apply_gate(state: Statevector, op: GateOp) -> Statevector:
    """Return ``U|psi>`` for the gate ``op``; ``state`` is left untouched."""
    op.check(state.num_qubits)
    out = state.copy()
    _apply_inplace(out.amplitudes, out.num_qubits, op)
    return out


def run(circuit: Circuit, initial: Statevector | None = None) -> Statevector:
    """Run ``circuit`` from ``initial`` (default ``|0...0>``)."""
    if initial is None:
        state = Statevector.zero(circuit.num_qubits)
    else:
        if initial.num_qubits != circuit.num_qubits:
            raise InvalidGateError(
                f"circuit has {circuit.num_qubits} qubits, state has {initial.num_qubits}")
        state = initial.copy()
    for op in circuit.ops:
        op.check(state.num_qubits)
        _apply_inplace(state.amplitudes, state.num_qubits, op)
    return state


def probabilities(state: Statevector) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2


def bitstring(index: int, num_qubits: int) -> str:
    return format(index, f"0{num_qubits}b")


@dataclass
class ShotHistogram:
    """Measurement counts keyed by MSB-first bitstring (zero counts omitted)."""

    num_qubits: int
    counts: dict[str, int]
    total_shots: int

    def most_frequent(self) -> str:
        # ties resolve to the lexicographically smallest bitstring
        best = max(self.counts.values())
        return min(k for k, v in self.counts.items() if v == best)

    def as_array(self) -> np.ndarray:
        arr = np.zeros(1 << self.num_qubits, dtype=np.int64)
        for k, v in self.counts.items():
            arr[int(k, 2)] = v
        return arr


def sample(state: Statevector, shots: int, rng: np.random.Generator) -> ShotHistogram:
    """Draw ``shots`` computational-basis measurements of ``state``."""
    if shots < 1:
        raise EmptyMeasurementError(f"shots must be >= 1, got {shots}")
    p = probabilities(state)
    p = p / p.sum()
    draws = rng.multinomial(shots, p)
    n = state.num_qubits
    counts = {bitstring(i, n): int(c) for i, c in enumerate(draws) if c}
    return ShotHistogram(n, counts, int(shots))


def sample_index(probs: Sequence[float], u: float) -> int:
    """Inverse-CDF draw: index of the first cumulative probability above ``u``."""
    cdf = np.cumsum(probs)
    return min(int(np.searchsorted(cdf, u * cdf[-1], side="right")), len(cdf) - 1)


def _embed(op: GateOp, n: int) -> np.ndarray:
    local = gate_matrix(op)
    idx = np.arange(1 << n)
    shifts = [n - 1 - q for q in op.qubits]
    loc = np.zeros_like(idx)
    rest = idx.copy()
    for s in shifts:
        bit = (idx >> s) & 1
        loc = (loc << 1) | bit
        rest &= ~(1 << s)
    same_rest = rest[:, None] == rest[None, :]
    return np.where(same_rest, local[loc[:, None], loc[None, :]], 0.0)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Full ``2^n x 2^n`` matrix of ``circuit`` (ops applied left to right)."""
    n = circuit.num_qubits
    if n > UNITARY_MAX_QUBITS:
        raise SizeLimitError(f"circuit_unitary supports at most {UNITARY_MAX_QUBITS} qubits, got {n}")
    u = np.eye(1 << n, dtype=complex)
    for op in circuit.ops:
        u = _embed(op, n) @ u
    return u


class StatevectorSimulator:
    """Quantum resource handle shared by the agents.

    Counts circuit executions so experiment summaries can report usage.
    """

    name = "dense-statevector"

    def __init__(self):
        self.executions = 0

    def run(self, circuit: Circuit, initial: Statevector | None = None) -> Statevector:
        self.executions += 1
        return run(circuit, initial)

    def probabilities(self, circuit: Circuit, initial: Statevector | None = None) -> np.ndarray:
        return probabilities(self.run(circuit, initial))

    def sample(self, circuit: Circuit, shots: int, rng: np.random.Generator,
               initial: Statevector | None = None) -> ShotHistogram:
        return sample(self.run(circuit, initial), shots, rng)
