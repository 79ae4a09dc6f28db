"""Dense statevectors and Clifford-circuit application.

Qubit 0 is the most significant bit of the computational-basis index, so the
integer outcome ``z`` reads left-to-right as the bitstring ``z_0 z_1 ... z_{n-1}``.
"""

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-10
BORN_NORM_TOL = 1e-6

GATE_NAMES = ("H", "S", "CNOT", "X", "Z")
_SELF_INVERSE = {"H", "CNOT", "X", "Z"}


@dataclass(frozen=True)
class Gate:
    """A named Clifford gate acting on one or two qubit indices."""

    name: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise ValueError(f"unknown gate {self.name!r}")
        arity = 2 if self.name == "CNOT" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.name} takes {arity} qubit(s), got {self.qubits}")


@dataclass(frozen=True)
class StateVector:
    """Normalised amplitudes over a 2^n computational basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0 or amps.size & (amps.size - 1):
            raise ValueError(f"amplitudes must have power-of-two length, got shape {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return int(self.amplitudes.size.bit_length() - 1)

    @classmethod
    def basis_state(cls, n_qubits: int, index: int) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def all_zero(cls, n_qubits: int) -> "StateVector":
        return cls.basis_state(n_qubits, 0)

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def _gate_on_array(vec: np.ndarray, n: int, gate: Gate, invert: bool) -> None:
    for q in gate.qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for {n} qubits")
    t = vec.reshape((2,) * n)
    if gate.name == "H":
        q = gate.qubits[0]
        a = t.take(0, axis=q).copy()
        b = t.take(1, axis=q)
        sl0 = tuple(0 if ax == q else slice(None) for ax in range(n))
        sl1 = tuple(1 if ax == q else slice(None) for ax in range(n))
        t[sl0] = (a + b) / np.sqrt(2.0)
        t[sl1] = (a - b) / np.sqrt(2.0)
    elif gate.name == "S":
        q = gate.qubits[0]
        sl1 = tuple(1 if ax == q else slice(None) for ax in range(n))
        t[sl1] *= -1j if invert else 1j
    elif gate.name == "X":
        q = gate.qubits[0]
        sl0 = tuple(0 if ax == q else slice(None) for ax in range(n))
        sl1 = tuple(1 if ax == q else slice(None) for ax in range(n))
        a = t[sl0].copy()
        t[sl0] = t[sl1]
        t[sl1] = a
    elif gate.name == "Z":
        q = gate.qubits[0]
        sl1 = tuple(1 if ax == q else slice(None) for ax in range(n))
        t[sl1] *= -1.0
    else:  # CNOT
        c, q = gate.qubits
        sl10 = tuple(1 if ax == c else (0 if ax == q else slice(None)) for ax in range(n))
        sl11 = tuple(1 if ax == c else (1 if ax == q else slice(None)) for ax in range(n))
        a = t[sl10].copy()
        t[sl10] = t[sl11]
        t[sl11] = a


def apply_circuit(circuit, state: StateVector, inverse: bool = False) -> StateVector:
    """Apply a gate sequence (temporal order) to a state.

    With ``inverse=True`` the sequence is reversed and every gate inverted,
    which realises the exact inverse unitary.
    """
    vec = state.amplitudes.copy()
    n = state.n_qubits
    gates = tuple(circuit)
    if inverse:
        gates = tuple(reversed(gates))
    for gate in gates:
        _gate_on_array(vec, n, gate, inverse and gate.name not in _SELF_INVERSE)
    return StateVector(vec)


def born_sample(state: StateVector, rng: np.random.Generator) -> int:
    """Draw a computational-basis outcome with probability |<z|state>|^2."""
    amps = state.amplitudes
    probs = np.abs(amps) ** 2
    total = probs.sum()
    if abs(total - 1.0) > BORN_NORM_TOL:
        raise ValueError(f"state norm^2 {total} deviates from 1 beyond {BORN_NORM_TOL}")
    u = rng.random() * total
    idx = int(np.searchsorted(np.cumsum(probs), u, side="right"))
    return min(idx, probs.size - 1)


def format_bitstring(z: int, n_qubits: int) -> str:
    return format(z, f"0{n_qubits}b")
