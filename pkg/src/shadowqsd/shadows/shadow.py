"""Classical-shadow snapshot collection and density-matrix estimation.

A snapshot of a state rho is phi = C^dagger |z> for a uniformly random global
Clifford C and a Born-sampled outcome z of C rho C^dagger.  Averaging the
affine inverse of the measurement channel over M snapshots,

    rho_hat = (1/M) sum_k [ (d + 1) |phi_k><phi_k| - I ],

yields an unbiased estimator of rho.  Snapshot generation is driven entirely
by integers pre-drawn from the caller's generator, so results are
reproducible for a fixed seed regardless of batch boundaries.
"""

from dataclasses import dataclass

import numpy as np

from shadowqsd.shadows import kernels
from shadowqsd.shadows.statevector import BORN_NORM_TOL, StateVector
from shadowqsd.shadows.tableau import CliffordElement, clifford_from_draws, draw_clifford_integers

_BATCH = 1 << 15

# snapshots are dense 2^n vectors; beyond this register size a stabilizer
# backend would be needed
MAX_SNAPSHOT_QUBITS = 10

DUMP_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ShadowSnapshot:
    """One measurement record: the stabilizer state C^dagger|z> plus audit data."""

    phi: StateVector
    outcome: int
    clifford_integers: tuple[int, ...]

    @property
    def n_qubits(self) -> int:
        return self.phi.n_qubits

    def clifford(self) -> CliffordElement:
        """Rebuild the Clifford that produced this snapshot."""
        n = self.n_qubits
        ints = self.clifford_integers
        return clifford_from_draws(n, np.array(ints[:n]), np.array(ints[n : 2 * n]), ints[2 * n])


@dataclass(frozen=True)
class ClassicalShadow:
    """M snapshots of one state, stored column-stacked for fast estimation."""

    n_qubits: int
    phis: np.ndarray  # (M, d) complex128, rows are snapshot states
    outcomes: np.ndarray  # (M,) int64
    clifford_integers: np.ndarray  # (M, 2n + 1) int64

    def __post_init__(self):
        if self.phis.ndim != 2 or self.phis.shape[1] != 1 << self.n_qubits:
            raise ValueError("phis must be (M, 2^n)")
        if len(self) < 1:
            raise ValueError("a shadow needs at least one snapshot")

    def __len__(self) -> int:
        return self.phis.shape[0]

    @property
    def n_snapshots(self) -> int:
        return len(self)

    def snapshot(self, k: int) -> ShadowSnapshot:
        return ShadowSnapshot(
            StateVector(self.phis[k].copy()),
            int(self.outcomes[k]),
            tuple(int(v) for v in self.clifford_integers[k]),
        )

    def snapshots(self):
        return [self.snapshot(k) for k in range(len(self))]


def _require_normalized(state: StateVector) -> np.ndarray:
    if state.n_qubits > MAX_SNAPSHOT_QUBITS:
        raise ValueError(
            f"dense snapshots are capped at {MAX_SNAPSHOT_QUBITS} qubits, got {state.n_qubits}"
        )
    amps = np.ascontiguousarray(state.amplitudes, dtype=np.complex128)
    norm2 = float(np.vdot(amps, amps).real)
    if abs(norm2 - 1.0) > BORN_NORM_TOL:
        raise ValueError(f"state norm^2 {norm2} deviates from 1 beyond {BORN_NORM_TOL}")
    return amps


def _batches(total: int):
    start = 0
    while start < total:
        yield start, min(_BATCH, total - start)
        start += _BATCH


def take_snapshots(state: StateVector, n_snapshots: int, rng: np.random.Generator) -> ClassicalShadow:
    """Collect M independent (Clifford, outcome) snapshots of ``state``."""
    if n_snapshots < 1:
        raise ValueError("n_snapshots must be >= 1")
    amps = _require_normalized(state)
    n = state.n_qubits
    d = amps.size
    phis = np.empty((n_snapshots, d), np.complex128)
    outcomes = np.empty(n_snapshots, np.int64)
    audit = np.empty((n_snapshots, 2 * n + 1), np.int64)
    for start, count in _batches(n_snapshots):
        level_k, level_bits, sign_words = draw_clifford_integers(rng, n, count)
        born_u = rng.random(count)
        kernels.snapshot_batch(
            amps, n, level_k, level_bits, sign_words, born_u,
            phis[start : start + count], outcomes[start : start + count],
        )
        audit[start : start + count, :n] = level_k
        audit[start : start + count, n : 2 * n] = level_bits
        audit[start : start + count, 2 * n] = sign_words
    return ClassicalShadow(n, phis, outcomes, audit)


def materialize(shadow: ClassicalShadow) -> np.ndarray:
    """Average the inverted snapshots into the dense estimator rho_hat."""
    d = 1 << shadow.n_qubits
    m = len(shadow)
    gram = np.zeros((d, d), np.complex128)
    for start, count in _batches(m):
        block = shadow.phis[start : start + count]
        gram += block.T @ block.conj()
    return ((d + 1) / m) * gram - np.eye(d)


def shadow_density_matrix(
    state: StateVector, n_snapshots: int, rng: np.random.Generator
) -> np.ndarray:
    """Stream M snapshots directly into rho_hat without storing them.

    Draws the same random integers in the same order as ``take_snapshots``
    followed by ``materialize``, and accumulates with the same batch
    boundaries, so the two routes agree bit for bit.
    """
    if n_snapshots < 1:
        raise ValueError("n_snapshots must be >= 1")
    amps = _require_normalized(state)
    n = state.n_qubits
    d = amps.size
    gram = np.zeros((d, d), np.complex128)
    phis = np.empty((min(_BATCH, n_snapshots), d), np.complex128)
    outcomes = np.empty(min(_BATCH, n_snapshots), np.int64)
    for _, count in _batches(n_snapshots):
        level_k, level_bits, sign_words = draw_clifford_integers(rng, n, count)
        born_u = rng.random(count)
        kernels.snapshot_batch(
            amps, n, level_k, level_bits, sign_words, born_u,
            phis[:count], outcomes[:count],
        )
        block = phis[:count]
        gram += block.T @ block.conj()
    return ((d + 1) / n_snapshots) * gram - np.eye(d)


def dump_snapshots(shadow: ClassicalShadow, path) -> None:
    """Write an audit CSV of (clifford integers, outcome) pairs.

    The header line carries a format version and the qubit count; each row
    holds the integers that reproduce one snapshot exactly.
    """
    n = shadow.n_qubits
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# shadowqsd-snapshots v{DUMP_FORMAT_VERSION} n_qubits={n}\n")
        cols = (
            [f"level_k_{m}" for m in range(1, n + 1)]
            + [f"level_bits_{m}" for m in range(1, n + 1)]
            + ["sign_word", "outcome"]
        )
        fh.write(",".join(cols) + "\n")
        for k in range(len(shadow)):
            row = [str(int(v)) for v in shadow.clifford_integers[k]]
            row.append(str(int(shadow.outcomes[k])))
            fh.write(",".join(row) + "\n")


def load_snapshot_audit(path):
    """Read a snapshot dump; returns (n_qubits, clifford_integers, outcomes)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith(f"# shadowqsd-snapshots v{DUMP_FORMAT_VERSION}"):
            raise ValueError(f"unsupported snapshot dump header: {header!r}")
        n = int(header.split("n_qubits=")[1])
        fh.readline()  # column names
        rows = [line.strip().split(",") for line in fh if line.strip()]
    data = np.array([[int(v) for v in row] for row in rows], dtype=np.int64)
    return n, data[:, : 2 * n + 1], data[:, 2 * n + 1]


def replay_snapshots(n_qubits: int, clifford_integers, outcomes) -> ClassicalShadow:
    """Rebuild snapshot states from dumped audit integers."""
    from shadowqsd.shadows.statevector import apply_circuit

    ints = np.asarray(clifford_integers, dtype=np.int64)
    outs = np.asarray(outcomes, dtype=np.int64)
    d = 1 << n_qubits
    phis = np.empty((len(outs), d), np.complex128)
    for k in range(len(outs)):
        element = clifford_from_draws(
            n_qubits, ints[k, :n_qubits], ints[k, n_qubits : 2 * n_qubits], int(ints[k, 2 * n_qubits])
        )
        basis = StateVector.basis_state(n_qubits, int(outs[k]))
        phis[k] = apply_circuit(element.circuit, basis, inverse=True).amplitudes
    return ClassicalShadow(n_qubits, phis, outs, ints)
