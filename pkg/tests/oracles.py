"""Independent reference implementations used only by the tests.

These deliberately avoid the code paths they check: the Fock-space oracle
multiplies explicit creation/annihilation matrices, the Jacobi eigensolver
avoids LAPACK, and the span oracle uses least-squares residuals instead of
Gram-Schmidt.
"""

import numpy as np

from shadowqsd.shell_model.angular import clebsch_gordan


def creation_matrix(n_orbitals: int, k: int) -> np.ndarray:
    """Dense 2^K fermionic creation operator with descending-order convention."""
    dim = 1 << n_orbitals
    out = np.zeros((dim, dim))
    for mask in range(dim):
        if not (mask >> k) & 1:
            sign = -1.0 if bin(mask >> (k + 1)).count("1") & 1 else 1.0
            out[mask | (1 << k), mask] = sign
    return out


def fock_space_hamiltonian(interaction) -> np.ndarray:
    """Full-Fock-space H built from the coupled records via dense pair operators."""
    n_orb = len(interaction.orbitals)
    dim = 1 << n_orb
    a_dag = [creation_matrix(n_orb, k) for k in range(n_orb)]
    a_op = [m.T for m in a_dag]
    h = np.zeros((dim, dim))
    for orb in interaction.orbitals:
        h += interaction.spe.get(orb.shell_label, 0.0) * (a_dag[orb.index] @ a_op[orb.index])

    index_of = {(o.shell_label, o.twice_m, o.twice_tz): o.index for o in interaction.orbitals}
    twice_j = {s.label: s.twice_j for s in interaction.shells}
    records = {(r.a, r.b, r.c, r.d, r.twice_jj, r.twice_tt): r.value for r in interaction.tbme}
    closed = dict(records)
    for (a, b, c, d, jj, tt), v in records.items():
        if (a, b) != (c, d) and (c, d, a, b, jj, tt) not in records:
            closed[(c, d, a, b, jj, tt)] = v

    def pair_creation(lx, ly, jj, jz, tt, tz):
        op = np.zeros((dim, dim))
        jx, jy = twice_j[lx], twice_j[ly]
        for mx in range(-jx, jx + 1, 2):
            my = jz - mx
            if abs(my) > jy:
                continue
            cj = clebsch_gordan(jx, mx, jy, my, jj, jz)
            if cj == 0.0:
                continue
            for mux in (-1, 1):
                muy = tz - mux
                if muy not in (-1, 1):
                    continue
                ct = clebsch_gordan(1, mux, 1, muy, tt, tz)
                if ct == 0.0:
                    continue
                ix = index_of.get((lx, mx, mux))
                iy = index_of.get((ly, my, muy))
                if ix is None or iy is None:
                    continue
                op += cj * ct * (a_dag[ix] @ a_dag[iy])
        return op

    for (la, lb, lc, ld, jj, tt), value in closed.items():
        norm = np.sqrt((1.0 + (la == lb)) * (1.0 + (lc == ld)))
        for jz in range(-jj, jj + 1, 2):
            for tz in range(-tt, tt + 1, 2):
                left = pair_creation(la, lb, jj, jz, tt, tz)
                right = pair_creation(lc, ld, jj, jz, tt, tz).T
                h += (value / norm) * (left @ right)
    return h


def project_on_basis(full_matrix: np.ndarray, interaction, basis) -> np.ndarray:
    """Matrix elements of a Fock-space operator between determinant vectors."""
    n_orb = len(interaction.orbitals)
    dim = 1 << n_orb
    a_dag = [creation_matrix(n_orb, k) for k in range(n_orb)]
    vectors = []
    for det in basis:
        vec = np.zeros(dim)
        vec[0] = 1.0
        for k in reversed(det.occupied):
            vec = a_dag[k] @ vec
        vectors.append(vec)
    v = np.array(vectors).T
    return v.T @ full_matrix @ v


def jacobi_eigenvalues(matrix: np.ndarray, sweeps: int = 100, tol: float = 1e-13) -> np.ndarray:
    """Cyclic Jacobi rotations for a real symmetric matrix; no LAPACK."""
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    for _ in range(sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = 0.5 * np.arctan2(2 * a[p, q], a[q, q] - a[p, p])
                c, s = np.cos(theta), np.sin(theta)
                rot = np.eye(n)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    return np.sort(np.diag(a))


def span_residual(hamiltonian_matrix: np.ndarray, initial: np.ndarray, ground: np.ndarray,
                  dt: float, count: int) -> float:
    """Least-squares residual of the ground vector against evolved states."""
    w, v = np.linalg.eigh(hamiltonian_matrix)
    coeffs = v.conj().T @ initial
    cols = np.array([v @ (np.exp(-1j * w * (j + 1) * dt) * coeffs) for j in range(count)]).T
    x, *_ = np.linalg.lstsq(cols, ground.astype(complex), rcond=None)
    return float(np.linalg.norm(cols @ x - ground) ** 2)


def mnes_by_scan(hamiltonian_matrix: np.ndarray, initial: np.ndarray, dt: float, tol: float) -> int:
    """Brute-force minimal evolved-state count via explicit residual scans."""
    w, v = np.linalg.eigh(hamiltonian_matrix)
    ground = v[:, 0]
    for count in range(1, hamiltonian_matrix.shape[0] + 1):
        if span_residual(hamiltonian_matrix, initial, ground, dt, count) <= tol:
            return count
    raise AssertionError("no finite count found")
