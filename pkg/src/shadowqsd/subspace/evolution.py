"""Exact real-time evolution and ground-state reference values."""

from dataclasses import dataclass

import numpy as np

from shadowqsd.shadows.statevector import StateVector
from shadowqsd.shell_model.hamiltonian import ReducedHamiltonian


def _matrix_and_physical(hamiltonian) -> tuple[np.ndarray, int]:
    if isinstance(hamiltonian, ReducedHamiltonian):
        return hamiltonian.matrix, hamiltonian.dim_physical
    m = np.asarray(hamiltonian, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m, m.shape[0]


def _decompose(matrix: np.ndarray):
    if not np.all(np.isfinite(matrix)):
        raise np.linalg.LinAlgError("Hamiltonian contains non-finite entries")
    return np.linalg.eigh(matrix)


@dataclass(frozen=True)
class EvolvedFamily:
    """States e^{-iHt_j}|initial> for a shared Hamiltonian and time grid."""

    hamiltonian: ReducedHamiltonian
    times: tuple[float, ...]
    states: tuple[StateVector, ...]

    @property
    def n_states(self) -> int:
        return len(self.states)


def evolve_exact(hamiltonian, t: float, initial: StateVector) -> StateVector:
    """Return e^{-iHt}|initial> through a full eigendecomposition."""
    if not np.isfinite(t):
        raise ValueError(f"evolution time must be finite, got {t}")
    matrix, _ = _matrix_and_physical(hamiltonian)
    w, v = _decompose(matrix)
    coeffs = v.conj().T @ initial.amplitudes
    return StateVector(v @ (np.exp(-1j * w * t) * coeffs))


def evolved_family(hamiltonian, times, initial: StateVector | None = None) -> EvolvedFamily:
    """Evolve one initial state over a time grid with a single decomposition."""
    times = tuple(float(t) for t in times)
    if not times:
        raise ValueError("times must not be empty")
    matrix, _ = _matrix_and_physical(hamiltonian)
    if initial is None:
        n = int(matrix.shape[0].bit_length() - 1)
        initial = StateVector.all_zero(n)
    w, v = _decompose(matrix)
    coeffs = v.conj().T @ initial.amplitudes
    states = tuple(StateVector(v @ (np.exp(-1j * w * t) * coeffs)) for t in times)
    h = hamiltonian if isinstance(hamiltonian, ReducedHamiltonian) else ReducedHamiltonian.from_dense(matrix)
    return EvolvedFamily(h, times, states)


def exact_ground_energy(hamiltonian) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue and eigenvector of the physical block only."""
    matrix, d_phys = _matrix_and_physical(hamiltonian)
    w, v = _decompose(matrix[:d_phys, :d_phys])
    return float(w[0]), v[:, 0]
