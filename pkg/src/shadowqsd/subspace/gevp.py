"""Generalized eigenproblem solver with machine-rank whitening.

The overlap matrix is an exact Gram matrix of classically stored basis
elements, so no statistical truncation is applied: only directions below a
machine-precision fraction of the leading overlap eigenvalue are discarded.
"""

from dataclasses import dataclass

import numpy as np

from shadowqsd.subspace.assembly import SubspaceProblem

MACHINE_RANK_TOL = 1e-12


class DegenerateSubspaceError(ValueError):
    """Raised when the overlap matrix has no direction above the rank cut."""


@dataclass(frozen=True)
class GevpSolution:
    """Solution of H_eff c = E S c after whitening."""

    eigenvalues: np.ndarray
    kept_rank: int
    drop_tolerance: float
    coefficients: np.ndarray  # columns are generalized eigenvectors in the sigma basis

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])


def solve_gevp(problem: SubspaceProblem, drop_tol: float = MACHINE_RANK_TOL) -> GevpSolution:
    """Whiten by the overlap eigenbasis and solve the reduced problem.

    Overlap eigendirections with eigenvalue <= drop_tol * max eigenvalue are
    removed (exact rank deficiency only); the remaining problem is Hermitian
    and solved densely.  Eigenvalues are returned in ascending order.
    """
    s = 0.5 * (problem.overlap + problem.overlap.conj().T)
    h = 0.5 * (problem.h_eff + problem.h_eff.conj().T)
    w, v = np.linalg.eigh(s)
    if not np.all(np.isfinite(w)):
        raise np.linalg.LinAlgError("overlap eigendecomposition produced non-finite values")
    cut = drop_tol * max(w[-1], 0.0)
    keep = w > cut
    kept = int(np.count_nonzero(keep))
    if kept == 0:
        raise DegenerateSubspaceError(
            f"all {w.size} overlap eigenvalues fall below the rank cut {cut:g}"
        )
    whitener = v[:, keep] / np.sqrt(w[keep])
    reduced = whitener.conj().T @ h @ whitener
    reduced = 0.5 * (reduced + reduced.conj().T)
    evals, evecs = np.linalg.eigh(reduced)
    return GevpSolution(
        eigenvalues=evals,
        kept_rank=kept,
        drop_tolerance=drop_tol,
        coefficients=whitener @ evecs,
    )
