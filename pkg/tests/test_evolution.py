import numpy as np
import pytest
from scipy.linalg import expm

from conftest import random_state
from oracles import jacobi_eigenvalues
from shadowqsd.shadows import StateVector
from shadowqsd.shell_model.hamiltonian import ReducedHamiltonian
from shadowqsd.subspace import evolve_exact, evolved_family, exact_ground_energy


def _random_symmetric(n, rng):
    g = rng.normal(size=(n, n))
    return 0.5 * (g + g.T)


def test_zero_time_is_identity(rng):
    psi = StateVector(random_state(2, rng))
    h = _random_symmetric(4, rng)
    out = evolve_exact(h, 0.0, psi)
    assert np.abs(out.amplitudes - psi.amplitudes).max() <= 1e-12


def test_diagonal_phase():
    h = np.diag([1.0, 2.0])
    out = evolve_exact(h, np.pi, StateVector.basis_state(1, 0))
    assert np.abs(out.amplitudes - np.array([-1.0, 0.0])).max() <= 1e-12


def test_eigenvector_acquires_pure_phase(rng):
    h = _random_symmetric(8, rng)
    w, v = np.linalg.eigh(h)
    psi = StateVector(v[:, 2].astype(complex))
    out = evolve_exact(h, 0.73, psi)
    assert abs(np.vdot(psi.amplitudes, out.amplitudes)) == pytest.approx(1.0, abs=1e-10)
    assert np.vdot(psi.amplitudes, out.amplitudes) == pytest.approx(np.exp(-1j * w[2] * 0.73), abs=1e-10)


def test_matches_matrix_exponential(rng):
    h = _random_symmetric(8, rng)
    psi = StateVector(random_state(3, rng))
    ours = evolve_exact(h, 0.37, psi).amplitudes
    reference = expm(-1j * h * 0.37) @ psi.amplitudes
    assert np.abs(ours - reference).max() <= 1e-10


def test_norm_preserved(rng):
    h = _random_symmetric(16, rng)
    psi = StateVector(random_state(4, rng))
    out = evolve_exact(h, 5.21, psi)
    assert abs(np.linalg.norm(out.amplitudes) - 1.0) <= 1e-10


def test_non_finite_time_rejected(rng):
    with pytest.raises(ValueError):
        evolve_exact(np.eye(2), np.inf, StateVector.basis_state(1, 0))


def test_non_finite_hamiltonian_rejected():
    h = np.array([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(np.linalg.LinAlgError):
        evolve_exact(h, 1.0, StateVector.basis_state(1, 0))


def test_evolved_family_defaults_to_all_zero(rng):
    h = _random_symmetric(4, rng)
    family = evolved_family(h, [1.0, 2.0, 3.0])
    assert family.n_states == 3
    direct = evolve_exact(h, 2.0, StateVector.all_zero(2))
    assert np.abs(family.states[1].amplitudes - direct.amplitudes).max() <= 1e-10


def test_exact_ground_energy_trivial():
    h = ReducedHamiltonian.from_dense(np.diag([-1.0, 99.0]), dim_physical=1, pad_energy=99.0)
    e0, vec = exact_ground_energy(h)
    assert e0 == pytest.approx(-1.0)
    assert vec.shape == (1,)


def test_exact_ground_energy_simple_diag():
    e0, _ = exact_ground_energy(np.diag([3.0, -2.0, 7.0]))
    assert e0 == pytest.approx(-2.0)


def test_exact_ground_energy_vs_jacobi(rng):
    h = _random_symmetric(15, rng)
    e0, vec = exact_ground_energy(h)
    reference = jacobi_eigenvalues(h)[0]
    assert e0 == pytest.approx(reference, abs=1e-9)
    assert np.abs(h @ vec - e0 * vec).max() <= 1e-9


def test_exact_ground_energy_excludes_padding(rng):
    block = _random_symmetric(5, rng)
    matrix = np.zeros((8, 8))
    matrix[:5, :5] = block
    pad = abs(block).max() + 100.0
    for k in range(5, 8):
        matrix[k, k] = -pad  # padding BELOW the physical block must be ignored
    h = ReducedHamiltonian.from_dense(matrix, dim_physical=5, pad_energy=-pad)
    e0, _ = exact_ground_energy(h)
    assert e0 == pytest.approx(np.linalg.eigvalsh(block)[0], abs=1e-10)
