"""Minimum number of evolved states covering the ground state."""

import numpy as np

from shadowqsd.shadows.statevector import StateVector
from shadowqsd.subspace.evolution import _decompose, _matrix_and_physical, exact_ground_energy

DEFAULT_MNES_TOL = 1e-6


class NoFiniteMnesError(ValueError):
    """Raised when the evolved-state span never reaches the ground state."""


def compute_mnes(
    hamiltonian,
    initial: StateVector,
    dt: float = 1.0,
    tol: float = DEFAULT_MNES_TOL,
) -> int:
    """Smallest M with ||P_span(M) |ground>||^2 >= 1 - tol.

    The span is that of the exactly evolved states e^{-iH j dt}|initial> for
    j = 1..M, orthonormalised by repeated Gram-Schmidt.  M never needs to
    exceed the physical dimension; if the tolerance is still unmet there, the
    initial state lacks the required ground-state overlap.
    """
    if not 0.0 < tol < 1.0:
        raise ValueError(f"tol must lie in (0, 1), got {tol}")
    matrix, d_phys = _matrix_and_physical(hamiltonian)
    _, ground = exact_ground_energy(hamiltonian)
    g = np.zeros(matrix.shape[0], dtype=complex)
    g[:d_phys] = ground
    w, v = _decompose(matrix)
    coeffs = v.conj().T @ initial.amplitudes

    basis: list[np.ndarray] = []
    captured = 0.0
    for m in range(1, d_phys + 1):
        vec = v @ (np.exp(-1j * w * (m * dt)) * coeffs)
        for b in basis:
            vec = vec - np.vdot(b, vec) * b
        for b in basis:
            vec = vec - np.vdot(b, vec) * b
        norm = np.linalg.norm(vec)
        if norm > 1e-12:
            vec = vec / norm
            basis.append(vec)
            captured += abs(np.vdot(vec, g)) ** 2
        if 1.0 - captured <= tol:
            return m
    raise NoFiniteMnesError(
        f"no finite evolved-state count reaches the ground state at tolerance {tol:g}"
    )
