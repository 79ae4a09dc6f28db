"""Uniform random Clifford elements: tableau representation plus a circuit.

A Clifford is stored as its conjugation tableau: row q gives the Pauli image
of X_q, row n+q the image of Z_q, each as x/z bit vectors with a sign bit.
Row Paulis are ``(-1)^r prod_q (i)^{x_q z_q} X^{x_q} Z^{z_q}``.  The attached
circuit realises the tableau up to global phase using gates from
{H, S, CNOT, X, Z}.
"""

from dataclasses import dataclass

import numpy as np

from shadowqsd.shadows import kernels
from shadowqsd.shadows.statevector import Gate

_GATE_BY_CODE = {
    kernels.GATE_H: "H",
    kernels.GATE_S: "S",
    kernels.GATE_CNOT: "CNOT",
    kernels.GATE_X: "X",
    kernels.GATE_Z: "Z",
}


@dataclass(frozen=True)
class CliffordElement:
    """A sampled Clifford with its symplectic tableau and realising circuit."""

    n_qubits: int
    symplectic: np.ndarray  # (2n, 2n) uint8, columns [x-part | z-part]
    phases: np.ndarray  # (2n,) uint8 sign bits
    circuit: tuple[Gate, ...]

    def is_symplectic(self) -> bool:
        """Check the binary symplectic condition A . Omega . A^T = Omega."""
        n = self.n_qubits
        a = self.symplectic.astype(np.int64)
        omega = np.zeros((2 * n, 2 * n), dtype=np.int64)
        omega[:n, n:] = np.eye(n, dtype=np.int64)
        omega[n:, :n] = np.eye(n, dtype=np.int64)
        return bool(np.array_equal(a @ omega @ a.T % 2, omega))

    def row_pauli(self, row: int) -> np.ndarray:
        """Dense matrix of the Pauli in a tableau row (sign included)."""
        n = self.n_qubits
        x = self.symplectic[row, :n]
        z = self.symplectic[row, n:]
        pauli_x = np.array([[0, 1], [1, 0]], dtype=complex)
        pauli_z = np.array([[1, 0], [0, -1]], dtype=complex)
        out = np.array([[1.0 + 0.0j]])
        for q in range(n):
            factor = np.eye(2, dtype=complex)
            if x[q]:
                factor = factor @ pauli_x
            if z[q]:
                factor = factor @ pauli_z
            if x[q] and z[q]:
                factor = 1j * factor
            out = np.kron(out, factor)
        if self.phases[row]:
            out = -out
        return out


def draw_clifford_integers(rng: np.random.Generator, n_qubits: int, size: int):
    """Pre-draw the integers that parameterise ``size`` uniform Cliffords.

    Returns (level_k, level_bits, sign_words): ``level_k[:, m-1]`` uniform on
    [1, 4^m - 1] and ``level_bits[:, m-1]`` uniform on [0, 2^(2m-1)), which
    drive the symplectic-group sampler; ``sign_words`` carries 2n uniform
    sign bits per element.
    """
    level_k = np.empty((size, n_qubits), dtype=np.int64)
    level_bits = np.empty((size, n_qubits), dtype=np.int64)
    for m in range(1, n_qubits + 1):
        level_k[:, m - 1] = rng.integers(1, 1 << (2 * m), size=size, dtype=np.int64)
        level_bits[:, m - 1] = rng.integers(0, 1 << (2 * m - 1), size=size, dtype=np.int64)
    sign_words = rng.integers(0, 1 << (2 * n_qubits), size=size, dtype=np.int64)
    return level_k, level_bits, sign_words


def _scratch(n: int):
    nn = 2 * n
    return (
        np.empty((nn, nn), np.uint8),
        np.empty(nn, np.uint8),
        np.empty(nn, np.uint8),
        np.empty(nn, np.uint8),
        np.empty(nn, np.uint8),
        np.empty(nn, np.uint8),
    )


def clifford_from_draws(n_qubits: int, level_k, level_bits, sign_word: int) -> CliffordElement:
    """Deterministically rebuild the Clifford encoded by pre-drawn integers."""
    n = n_qubits
    nn = 2 * n
    g, e1, f1, t0, t1, h0 = _scratch(n)
    tx = np.empty((nn, n), np.uint8)
    tz = np.empty((nn, n), np.uint8)
    tr = np.empty(nn, np.uint8)
    kernels._tableau_from_draws(
        n,
        np.asarray(level_k, dtype=np.int64),
        np.asarray(level_bits, dtype=np.int64),
        np.int64(sign_word),
        g, e1, f1, t0, t1, h0, tx, tz, tr,
    )
    symplectic = np.concatenate([tx, tz], axis=1).copy()
    phases = tr.copy()
    gates = np.empty((kernels.max_gates(n), 3), np.int32)
    ng = kernels._synthesize(tx, tz, tr, n, gates)
    circuit = _reduction_to_circuit(gates[:ng])
    return CliffordElement(n, symplectic, phases, circuit)


def _reduction_to_circuit(reduction: np.ndarray) -> tuple[Gate, ...]:
    """Convert recorded reduction gates g_1..g_k into a temporal circuit.

    The represented Clifford is g_1^-1 ... g_k^-1, so the circuit applies the
    inverted gates in reverse order; S^-1 is emitted as three S gates to stay
    inside the {H, S, CNOT, X, Z} alphabet.
    """
    out: list[Gate] = []
    for code, a, b in reduction[::-1]:
        name = _GATE_BY_CODE[int(code)]
        if name == "CNOT":
            out.append(Gate(name, (int(a), int(b))))
        elif name == "S":
            out.extend([Gate("S", (int(a),))] * 3)
        else:
            out.append(Gate(name, (int(a),)))
    return tuple(out)


def sample_clifford(n_qubits: int, rng: np.random.Generator) -> CliffordElement:
    """Draw an element uniformly from the n-qubit Clifford group (mod phase)."""
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    level_k, level_bits, sign_words = draw_clifford_integers(rng, n_qubits, 1)
    return clifford_from_draws(n_qubits, level_k[0], level_bits[0], int(sign_words[0]))
