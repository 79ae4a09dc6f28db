"""Vectorised shadow-product subspace matrices.

With one density-matrix estimate rho_i per evolved state, the subspace is
spanned by the vectorised products sigma_(i,j) = rho_i rho_j (row-major flat
index i*m + j).  Using Tr(X1^dagger X2) as the inner product of vectorised
matrices, the overlap and effective-Hamiltonian entries are

    S[(i,j),(l,k)] = Tr(rho_j rho_i rho_l rho_k)
    H[(i,j),(l,k)] = Tr(rho_j rho_i H rho_l rho_k)

Two assembly routes are provided: the dense route materialises each shadow
as a d x d matrix; the factorized route expands the same traces into Gram
matrices of raw snapshot vectors and never forms rho_hat.  They agree to
floating-point accuracy and are cross-checked in the tests.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from shadowqsd.shadows.shadow import ClassicalShadow, materialize
from shadowqsd.shell_model.hamiltonian import ReducedHamiltonian


@dataclass(frozen=True)
class SubspaceProblem:
    """The generalized-eigenproblem pair over the shadow-product basis."""

    n_states: int
    h_eff: np.ndarray
    overlap: np.ndarray

    @property
    def dim(self) -> int:
        return self.n_states * self.n_states

    def flat_index(self, i: int, j: int) -> int:
        return i * self.n_states + j

    def pair_index(self, flat: int) -> tuple[int, int]:
        return divmod(flat, self.n_states)


def _hamiltonian_matrix(hamiltonian) -> np.ndarray:
    if isinstance(hamiltonian, ReducedHamiltonian):
        return hamiltonian.matrix
    return np.asarray(hamiltonian)


def _density_matrices(shadows, d: int) -> list[np.ndarray]:
    rhos = []
    for entry in shadows:
        if isinstance(entry, ClassicalShadow):
            rho = materialize(entry)
        else:
            rho = np.asarray(entry, dtype=complex)
        if rho.shape != (d, d):
            raise ValueError(f"density matrix shape {rho.shape} does not match dimension {d}")
        rhos.append(rho)
    return rhos


def _hermitized(x: np.ndarray) -> np.ndarray:
    return 0.5 * (x + x.conj().T)


def assemble_subspace(shadows, hamiltonian, method: str = "dense") -> SubspaceProblem:
    """Build (H_eff, S) from per-state shadows or exact density matrices.

    ``shadows`` entries may be ``ClassicalShadow`` objects or dense density
    matrices (an infinite-shot stand-in).  ``method`` selects the dense or
    factorized trace evaluation; the factorized route requires explicit
    snapshots.
    """
    shadows = list(shadows)
    if not shadows:
        raise ValueError("at least one shadow is required")
    h = _hamiltonian_matrix(hamiltonian)
    d = h.shape[0]
    if method == "dense":
        h_eff, overlap = _assemble_dense(shadows, h, d)
    elif method == "factorized":
        h_eff, overlap = _assemble_factorized(shadows, h, d)
    else:
        raise ValueError(f"unknown assembly method {method!r}")
    return SubspaceProblem(len(shadows), _hermitized(h_eff), _hermitized(overlap))


def _assemble_dense(shadows, h: np.ndarray, d: int):
    rhos = _density_matrices(shadows, d)
    m = len(rhos)
    prods = [[rhos[i] @ rhos[j] for j in range(m)] for i in range(m)]
    h_prods = [[h @ prods[l][k] for k in range(m)] for l in range(m)]
    dim = m * m
    h_eff = np.empty((dim, dim), dtype=complex)
    overlap = np.empty((dim, dim), dtype=complex)
    for i, j in product(range(m), repeat=2):
        row = i * m + j
        bra = prods[i][j]
        for l, k in product(range(m), repeat=2):
            col = l * m + k
            overlap[row, col] = np.vdot(bra, prods[l][k])
            h_eff[row, col] = np.vdot(bra, h_prods[l][k])
    return h_eff, overlap


def _assemble_factorized(shadows, h: np.ndarray, d: int):
    """Evaluate the subspace traces from snapshot Gram matrices.

    Each estimator expands as rho_hat_a = alpha_a B_a B_a^dagger - I with
    B_a holding the snapshot vectors as columns and alpha_a = (d+1)/M_a.
    Every trace of a product of four estimators (with an optional H
    insertion) splits over the 16 choices of keeping the B-part or the
    identity, and each choice reduces to a cyclic product of small Gram
    blocks.
    """
    for entry in shadows:
        if not isinstance(entry, ClassicalShadow):
            raise TypeError("factorized assembly needs ClassicalShadow inputs")
    m = len(shadows)
    bs = [np.ascontiguousarray(s.phis.T) for s in shadows]  # d x M_a
    alphas = [(d + 1) / len(s) for s in shadows]
    gram = {}
    gram_h = {}
    for a in range(m):
        for b in range(m):
            gram[(a, b)] = bs[a].conj().T @ bs[b]
            gram_h[(a, b)] = bs[a].conj().T @ h @ bs[b]

    def trace_product(order, with_h_after: int | None):
        """Tr of prod rho_hat_{order[p]} with H inserted after position ``with_h_after``."""
        total = 0.0 + 0.0j
        for keep in product((True, False), repeat=4):
            segments = []  # ('B', a) kept factors and ('H',) markers, cyclic
            sign = 1.0
            coef = 1.0
            for p, a in enumerate(order):
                if keep[p]:
                    segments.append(("B", a))
                    coef *= alphas[a]
                else:
                    sign = -sign
                if with_h_after == p:
                    segments.append(("H",))
            total += sign * coef * _cyclic_trace(segments, bs, gram, gram_h, h, d)
        return total

    dim = m * m
    h_eff = np.empty((dim, dim), dtype=complex)
    overlap = np.empty((dim, dim), dtype=complex)
    for i, j in product(range(m), repeat=2):
        row = i * m + j
        for l, k in product(range(m), repeat=2):
            col = l * m + k
            order = (j, i, l, k)
            overlap[row, col] = trace_product(order, with_h_after=None)
            h_eff[row, col] = trace_product(order, with_h_after=1)
    return h_eff, overlap


def _cyclic_trace(segments, bs, gram, gram_h, h: np.ndarray, d: int):
    """Trace of a cyclic product of B_a B_a^dagger factors and H insertions."""
    if not segments:
        return float(d)
    if all(seg[0] == "H" for seg in segments):
        hpow = np.linalg.matrix_power(h, len(segments))
        return complex(np.trace(hpow))
    # rotate so the cycle starts with a B factor
    start = next(p for p, seg in enumerate(segments) if seg[0] == "B")
    segs = segments[start:] + segments[:start]
    # walk the cycle contracting B_a^dagger (H?) B_b into Gram blocks
    result = None
    pos = 0
    first_a = segs[0][1]
    while pos < len(segs):
        a = segs[pos][1]
        nxt = pos + 1
        h_between = False
        if nxt < len(segs) and segs[nxt][0] == "H":
            h_between = True
            nxt += 1
        b = segs[nxt][1] if nxt < len(segs) else first_a
        block = gram_h[(a, b)] if h_between else gram[(a, b)]
        result = block if result is None else result @ block
        pos = nxt
    return complex(np.trace(result))
