import numpy as np
import pytest

from shadowqsd.subspace import DegenerateSubspaceError, solve_gevp
from shadowqsd.subspace.assembly import SubspaceProblem


def _problem(h, s):
    dim = np.asarray(h).shape[0]
    m = int(round(np.sqrt(dim)))
    return SubspaceProblem(m, np.asarray(h, dtype=complex), np.asarray(s, dtype=complex))


def test_identity_overlap():
    sol = solve_gevp(_problem(np.diag([2.0, 4.0, 1.0, 3.0]), np.eye(4)))
    assert sol.kept_rank == 4
    assert np.allclose(sol.eigenvalues, [1.0, 2.0, 3.0, 4.0])


def test_diagonal_rescaling():
    sol = solve_gevp(_problem(np.diag([2.0, 4.0, 1.0, 1.0]), np.diag([1.0, 4.0, 1.0, 1.0])))
    assert sol.eigenvalues[0] == pytest.approx(1.0)
    assert sorted(sol.eigenvalues)[-1] == pytest.approx(2.0)


def test_rank_deficient_collinear_basis():
    s = np.array([[1.0, 1.0], [1.0, 1.0]])
    h = np.array([[3.0, 3.0], [3.0, 3.0]])
    problem = SubspaceProblem(1, h.astype(complex), s.astype(complex))
    sol = solve_gevp(problem)
    assert sol.kept_rank == 1
    assert sol.eigenvalues[0] == pytest.approx(3.0, abs=1e-12)


def test_machine_rank_cut_keeps_tiny_statistical_directions():
    # directions above drop_tol * max stay in, however small
    s = np.diag([1.0, 1e-8])
    h = np.diag([5.0, 1e-8 * -3.0])
    sol = solve_gevp(_problem(np.kron(np.eye(2), [[1]]) * 0 + h, s))
    assert sol.kept_rank == 2
    assert sol.eigenvalues[0] == pytest.approx(-3.0, abs=1e-6)


def test_generalized_eigenvectors_satisfy_the_pencil():
    rng = np.random.default_rng(8)
    a = rng.normal(size=(4, 4))
    s = a @ a.T + np.eye(4)
    h = 0.5 * (rng.normal(size=(4, 4)) + rng.normal(size=(4, 4)).T)
    h = 0.5 * (h + h.T)
    sol = solve_gevp(_problem(h, s))
    for k, lam in enumerate(sol.eigenvalues):
        c = sol.coefficients[:, k]
        assert np.abs(h @ c - lam * (s @ c)).max() <= 1e-9


def test_fully_degenerate_subspace_raises():
    with pytest.raises(DegenerateSubspaceError):
        solve_gevp(_problem(np.zeros((4, 4)), np.zeros((4, 4))))


def test_eigenvalues_sorted_ascending():
    rng = np.random.default_rng(11)
    a = rng.normal(size=(9, 9))
    s = a @ a.T + 0.5 * np.eye(9)
    h = rng.normal(size=(9, 9))
    h = 0.5 * (h + h.T)
    sol = solve_gevp(_problem(h, s))
    assert np.all(np.diff(sol.eigenvalues) >= 0)
    assert sol.drop_tolerance == 1e-12
