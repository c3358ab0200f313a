"""Adaptive quantum image encryption agent.

The agent reads an image's global entropy, encodes it into the input angles
of a 2-qubit policy circuit and samples one of four encryption actions::

    00 -> XOR      key-controlled CNOTs onto the data nibble
    01 -> QFT      4-qubit Fourier transform, then one measurement
    10 -> SCRAMBLE SWAP(0,3) SWAP(1,2) X(0) X(2)
    11 -> NONE     identity

Every pixel is split into two 4-bit segments (high nibble first). The
reward is the entropy of the encrypted image and the policy takes an Adam
step on ``J = -(2 r / 8 - 1) * pi(a)``: above 4 bits the sampled action is
reinforced, below it is suppressed.

QFT "encryption" ends in a measurement, so it cannot be decrypted. XOR and
SCRAMBLE have exact inverses (:func:`decrypt_image`).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import pi

import numpy as np

from .agent import QuantumAgent, Stream, stream
from .errors import ImageError
from .imaging import GrayImage, from_nibbles, shannon_entropy, to_nibbles
from .qsim import Circuit, Statevector, probabilities, run, sample_index
from .variational import DEFAULT_LR, PolicyParams, QiePolicy, adam_step, policy_grad, policy_probs

NIBBLE_BITS = 4
MAX_ENTROPY = 8.0
DEFAULT_EPISODES = 30
SEGMENT_MODES = ("image", "segment")


class EncryptionAction(Enum):
    XOR = 0
    QFT = 1
    SCRAMBLE = 2
    NONE = 3

    @property
    def bits(self) -> str:
        return format(self.value, "02b")

    @classmethod
    def parse(cls, name: str) -> EncryptionAction:
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown action {name!r}; choose from "
                             f"{', '.join(a.name.lower() for a in cls)}") from None


def _check_nibble(v, what="nibble"):
    if int(v) != v or not 0 <= v <= 15:
        raise ValueError(f"{what} must be an integer in 0..15, got {v}")
    return int(v)


def scale_to_quantum_domain(f: float) -> tuple[float, float]:
    """Map entropy in [0, 8] bits linearly onto an angle in [0, pi], twice."""
    if not 0.0 <= f <= MAX_ENTROPY:
        raise ImageError(f"entropy feature must be in [0, 8], got {f}")
    x = f / MAX_ENTROPY * pi
    return x, x


def _load(circuit: Circuit, value: int, offset: int = 0):
    # MSB of the nibble goes on the lowest-numbered qubit
    for i in range(NIBBLE_BITS):
        if (value >> (NIBBLE_BITS - 1 - i)) & 1:
            circuit.x(offset + i)
    return circuit


def _read_basis(state: Statevector) -> int:
    p = probabilities(state)
    idx = int(np.argmax(p))
    if p[idx] < 1 - 1e-9:
        raise RuntimeError(f"expected a basis state, max probability {p[idx]}")
    return idx


def xor_circuit(s: int, k: int) -> Circuit:
    """Data on qubits 0-3, key on ancillas 4-7, CNOT(key_i -> data_i)."""
    c = Circuit(2 * NIBBLE_BITS)
    _load(c, s, 0)
    _load(c, k, NIBBLE_BITS)
    for i in range(NIBBLE_BITS):
        c.cnot(NIBBLE_BITS + i, i)
    return c


def quantum_xor(s: int, k: int) -> int:
    s, k = _check_nibble(s), _check_nibble(k, "key")
    idx = _read_basis(run(xor_circuit(s, k)))
    return idx >> NIBBLE_BITS


def qft_circuit(num_qubits: int = NIBBLE_BITS) -> Circuit:
    """Textbook QFT: H and controlled-phase cascade, then reverse the qubits."""
    c = Circuit(num_qubits)
    for j in range(num_qubits):
        c.h(j)
        for k in range(j + 1, num_qubits):
            c.cphase(k, j, pi / 2 ** (k - j))
    for j in range(num_qubits // 2):
        c.swap(j, num_qubits - 1 - j)
    return c


def qft_distribution(s: int) -> np.ndarray:
    """Pre-measurement outcome probabilities of QFT|s>."""
    s = _check_nibble(s)
    return probabilities(run(qft_circuit(), Statevector.basis(NIBBLE_BITS, s)))


def qft_encrypt(s: int, rng: np.random.Generator) -> int:
    return sample_index(qft_distribution(s), rng.random())


def scramble_circuit() -> Circuit:
    return Circuit(NIBBLE_BITS).swap(0, 3).swap(1, 2).x(0).x(2)


def scramble_encrypt(s: int) -> int:
    s = _check_nibble(s)
    return _read_basis(run(scramble_circuit(), Statevector.basis(NIBBLE_BITS, s)))


def scramble_decrypt(e: int) -> int:
    e = _check_nibble(e)
    return _read_basis(run(scramble_circuit().inverse(), Statevector.basis(NIBBLE_BITS, e)))


@lru_cache(maxsize=None)
def _xor_table(k: int) -> np.ndarray:
    return np.array([quantum_xor(s, k) for s in range(16)], dtype=np.uint8)


@lru_cache(maxsize=None)
def _scramble_table(inverse: bool = False) -> np.ndarray:
    f = scramble_decrypt if inverse else scramble_encrypt
    return np.array([f(s) for s in range(16)], dtype=np.uint8)


@lru_cache(maxsize=None)
def _qft_cdf() -> np.ndarray:
    return np.cumsum([qft_distribution(s) for s in range(16)], axis=1)


def _qft_sample(nibbles: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    # one uniform per segment, same inverse-CDF rule as qft_encrypt
    cdf = _qft_cdf()[nibbles]
    u = rng.random(nibbles.size) * cdf[:, -1]
    idx = (cdf <= u[:, None]).sum(axis=1)
    return np.minimum(idx, 15).astype(np.uint8)


def encrypt_nibbles(nibbles, action: EncryptionAction, key: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Apply one primitive to every segment.

    Each circuit is simulated once per distinct 4-bit input; the results are
    reused for the whole segment array.
    """
    nib = np.asarray(nibbles, dtype=np.uint8)
    key = _check_nibble(key, "key")
    if action is EncryptionAction.XOR:
        return _xor_table(key)[nib]
    if action is EncryptionAction.QFT:
        return _qft_sample(nib, rng)
    if action is EncryptionAction.SCRAMBLE:
        return _scramble_table()[nib]
    return nib.copy()


def encrypt_image(img: GrayImage, action: EncryptionAction, key: int,
                  rng: np.random.Generator) -> GrayImage:
    out = encrypt_nibbles(to_nibbles(img), action, key, rng)
    return from_nibbles(out, img.width, img.height)


def decrypt_image(img: GrayImage, action: EncryptionAction, key: int = 0) -> GrayImage:
    nib = to_nibbles(img)
    if action is EncryptionAction.XOR:
        out = _xor_table(_check_nibble(key, "key"))[nib]
    elif action is EncryptionAction.SCRAMBLE:
        out = _scramble_table(inverse=True)[nib]
    elif action is EncryptionAction.NONE:
        out = nib
    else:
        raise ValueError("QFT encryption ends in a measurement and cannot be decrypted")
    return from_nibbles(out, img.width, img.height)


@dataclass(frozen=True)
class QieEpisodeRecord:
    episode: int
    action: EncryptionAction
    reward: float
    action_probs: tuple[float, ...]
    theta: tuple[float, ...]
    action_counts: tuple[int, ...]


def reward_weight(reward: float) -> float:
    """Signed weight of pi(a) in the cost: +1 at 8 bits, -1 at 0 bits."""
    return 2.0 * reward / MAX_ENTROPY - 1.0


class QieAgent(QuantumAgent):
    def __init__(self, lr: float = DEFAULT_LR, seed: int = 0,
                 segment_mode: str = "image", simulator=None):
        super().__init__(simulator)
        if segment_mode not in SEGMENT_MODES:
            raise ValueError(f"segment_mode must be one of {SEGMENT_MODES}, got {segment_mode!r}")
        self.lr = lr
        self.segment_mode = segment_mode
        self.params = PolicyParams.initial()
        self.action_rng = stream(seed, Stream.ACTION)
        self.enc_rng = stream(seed, Stream.ENCRYPTION)
        self.key = int(stream(seed, Stream.KEY).integers(0, 16))
        self.image = None
        self.last_encrypted = None
        self._nibbles = None

    def perceive(self, img: GrayImage):
        if img is not self.image:
            self.image = img
            self._nibbles = to_nibbles(img)
        spec = QiePolicy(scale_to_quantum_domain(shannon_entropy(img)))
        return spec, policy_probs(spec, self.params, self.simulator)

    def decide(self, feature):
        _, probs = feature
        if self.segment_mode == "image":
            return np.array([sample_index(probs, self.action_rng.random())])
        cdf = np.cumsum(probs)
        u = self.action_rng.random(self._nibbles.size) * cdf[-1]
        return np.minimum((cdf <= u[:, None]).sum(axis=1), 3)

    def act(self, actions):
        nib = self._nibbles
        if actions.size == 1:
            out = encrypt_nibbles(nib, EncryptionAction(int(actions[0])), self.key, self.enc_rng)
        else:
            out = nib.copy()
            for a in EncryptionAction:
                mask = actions == a.value
                if mask.any():
                    out[mask] = encrypt_nibbles(nib[mask], a, self.key, self.enc_rng)
        encrypted = from_nibbles(out, self.image.width, self.image.height)
        self.last_encrypted = encrypted
        return encrypted, shannon_entropy(encrypted)

    def learn(self, feature, actions, outcome):
        spec, _ = feature
        _, reward = outcome
        counts = np.bincount(actions, minlength=4)
        grad = np.zeros(4)
        for a in np.flatnonzero(counts):
            grad += counts[a] / actions.size * policy_grad(spec, self.params, int(a))
        self.params = adam_step(self.params, -reward_weight(reward) * grad, self.lr)

    def record(self, feature, actions, outcome):
        _, probs = feature
        _, reward = outcome
        counts = np.bincount(actions, minlength=4)
        return QieEpisodeRecord(
            episode=len(self.memory) + 1,
            action=EncryptionAction(int(np.argmax(counts))),
            reward=float(reward),
            action_probs=tuple(float(p) for p in probs),
            theta=tuple(float(t) for t in self.params.theta),
            action_counts=tuple(int(c) for c in counts),
        )


def train_qie(img: GrayImage, episodes: int = DEFAULT_EPISODES, lr: float = DEFAULT_LR,
              seed: int = 0, segment_mode: str = "image", simulator=None) -> list[QieEpisodeRecord]:
    if episodes < 1:
        raise ValueError(f"episodes must be >= 1, got {episodes}")
    agent = QieAgent(lr, seed, segment_mode, simulator)
    for _ in range(episodes):
        agent.step(img)
    return agent.memory


def action_frequencies(records) -> dict[EncryptionAction, int]:
    freq = dict.fromkeys(EncryptionAction, 0)
    for r in records:
        freq[r.action] += 1
    return freq


def modal_action(records) -> EncryptionAction:
    freq = action_frequencies(records)
    best = max(freq.values())
    return next(a for a in EncryptionAction if freq[a] == best)
