"""Reduced many-body Hamiltonian on a Slater-determinant basis.

The physical d x d block is embedded in a 2^n x 2^n matrix with
n = max(1, ceil(log2 d)); padded diagonal entries sit well above the physical
spectrum so the padded directions never interfere with the ground state.
"""

from dataclasses import dataclass

import numpy as np

from shadowqsd.shell_model.basis import SlaterDeterminant
from shadowqsd.shell_model.interaction import InteractionData, TwoBodyTerm

PAD_OFFSET_MEV = 100.0


@dataclass(frozen=True)
class ReducedHamiltonian:
    """Dense real-symmetric Hamiltonian padded to a full qubit register."""

    matrix: np.ndarray
    dim_physical: int
    n_qubits: int
    pad_energy: float
    basis: tuple[SlaterDeterminant, ...] | None = None

    def __post_init__(self):
        m = self.matrix
        dim = 1 << self.n_qubits
        if m.shape != (dim, dim):
            raise ValueError(f"matrix shape {m.shape} does not match 2^{self.n_qubits}")
        if not (0 < self.dim_physical <= dim):
            raise ValueError(f"dim_physical {self.dim_physical} out of range for dimension {dim}")
        if not np.allclose(m, m.T, atol=1e-12, rtol=0.0):
            raise ValueError("matrix must be symmetric to 1e-12")

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    @property
    def physical_block(self) -> np.ndarray:
        return self.matrix[: self.dim_physical, : self.dim_physical]

    @classmethod
    def from_dense(cls, matrix, dim_physical=None, pad_energy=None, basis=None) -> "ReducedHamiltonian":
        """Wrap an existing real symmetric matrix (e.g. a synthetic model)."""
        m = np.asarray(matrix, dtype=float)
        n = _qubits_for(m.shape[0])
        if m.shape[0] != 1 << n:
            raise ValueError(f"matrix dimension {m.shape[0]} is not a power of two")
        d = m.shape[0] if dim_physical is None else int(dim_physical)
        if pad_energy is None:
            pad_energy = float(m.diagonal()[d:].max()) if d < m.shape[0] else 0.0
        return cls(m, d, n, float(pad_energy), basis)


def _qubits_for(d: int) -> int:
    return max(1, (d - 1).bit_length())


def _jw_sign(mask: int, k: int) -> int:
    return -1 if (mask >> (k + 1)).bit_count() & 1 else 1


def _apply_term(mask: int, term: TwoBodyTerm):
    """Apply ``c+_{p1} c+_{p2} c_{q2} c_{q1}`` to an occupation mask.

    Returns (new_mask, sign) or None when the string annihilates the state.
    The rightmost operator acts first.
    """
    sign = 1
    for q in (term.q1, term.q2):
        bit = 1 << q
        if not mask & bit:
            return None
        sign *= _jw_sign(mask, q)
        mask &= ~bit
    for p in (term.p2, term.p1):
        bit = 1 << p
        if mask & bit:
            return None
        sign *= _jw_sign(mask, p)
        mask |= bit
    return mask, sign


def matrix_element(
    bra: SlaterDeterminant,
    ket: SlaterDeterminant,
    interaction: InteractionData,
) -> float:
    """Return <bra| H |ket> in MeV for the expanded m-scheme interaction."""
    if bra.n_particles != ket.n_particles:
        raise ValueError("bra and ket must contain the same particle number")
    value = 0.0
    if bra == ket:
        value += sum(interaction.single_particle_energy(k) for k in ket.occupied)
    bra_mask = bra.mask
    ket_mask = ket.mask
    if (bra_mask ^ ket_mask).bit_count() > 4:
        return 0.0
    for term in interaction.terms:
        res = _apply_term(ket_mask, term)
        if res is not None and res[0] == bra_mask:
            value += res[1] * term.coef
    return value


def build_hamiltonian(
    interaction: InteractionData,
    basis,
    pad_offset: float = PAD_OFFSET_MEV,
) -> ReducedHamiltonian:
    """Build the padded reduced Hamiltonian over ``basis``.

    The upper triangle (including the diagonal) is accumulated from the
    expanded interaction terms applied column by column; the lower triangle is
    mirrored, so the result is symmetric by construction.
    """
    basis = list(basis)
    if not basis:
        raise ValueError("basis must not be empty")
    d = len(basis)
    n = _qubits_for(d)
    dim = 1 << n
    index_of = {det.mask: i for i, det in enumerate(basis)}
    if len(index_of) != d:
        raise ValueError("basis contains duplicate determinants")

    h = np.zeros((dim, dim))
    for j, det in enumerate(basis):
        h[j, j] = sum(interaction.single_particle_energy(k) for k in det.occupied)
        ket_mask = det.mask
        for term in interaction.terms:
            res = _apply_term(ket_mask, term)
            if res is None:
                continue
            i = index_of.get(res[0])
            if i is not None and i <= j:
                h[i, j] += res[1] * term.coef
    upper = np.triu(h)
    h = upper + np.triu(upper, 1).T

    pad_energy = float(h[:d, :d].diagonal().max() + pad_offset)
    for k in range(d, dim):
        h[k, k] = pad_energy
    return ReducedHamiltonian(h, d, n, pad_energy, tuple(basis))


def total_jz_operator(interaction: InteractionData, basis, n_qubits: int | None = None) -> np.ndarray:
    """Diagonal total-Jz operator (in units of hbar) on the padded register."""
    basis = list(basis)
    twice_m = {o.index: o.twice_m for o in interaction.orbitals}
    n = _qubits_for(len(basis)) if n_qubits is None else n_qubits
    jz = np.zeros((1 << n, 1 << n))
    for i, det in enumerate(basis):
        jz[i, i] = sum(twice_m[k] for k in det.occupied) / 2.0
    return jz


@dataclass(frozen=True)
class TermSparsityReport:
    """Per-term column-sparsity check of the uncoupled two-body strings."""

    max_nonzeros_per_column: tuple[int, ...]
    terms: tuple[TwoBodyTerm, ...]

    @property
    def all_pass(self) -> bool:
        return all(c <= 1 for c in self.max_nonzeros_per_column)


def verify_term_sparsity(interaction: InteractionData, basis) -> TermSparsityReport:
    """Check every expanded two-body string maps each basis column to at most one row."""
    basis = list(basis)
    index_of = {det.mask: i for i, det in enumerate(basis)}
    counts = []
    for term in interaction.terms:
        worst = 0
        for det in basis:
            res = _apply_term(det.mask, term)
            hits = 1 if res is not None and res[0] in index_of and res[1] * term.coef != 0.0 else 0
            worst = max(worst, hits)
        counts.append(worst)
    return TermSparsityReport(tuple(counts), interaction.terms)
