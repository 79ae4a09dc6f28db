"""Compiled kernels for Clifford sampling, circuit synthesis and gate action.

Everything here operates on plain numpy arrays so the snapshot loop stays off
the Python interpreter; the wrapper module provides the object-level API.
All kernels are deterministic functions of pre-drawn random integers, which
keeps seeded runs reproducible regardless of batching.

Conventions:

* Symplectic vectors use interleaved coordinates (x1, z1, x2, z2, ...) during
  sampling and are repacked into tableau form afterwards.
* A tableau row (x bits, z bits, sign r) encodes the Pauli
  ``(-1)^r prod_q (i)^{x_q z_q} X_q^{x_q} Z_q^{z_q}``; rows 0..n-1 are the
  images of X_q under conjugation, rows n..2n-1 the images of Z_q.
* Gate records are (code, a, b) with codes 0=H(a), 1=S(a), 2=CNOT(a, b),
  3=X(a), 4=Z(a).  The recorded sequence g_1..g_k reduces the tableau to the
  identity, so the represented Clifford is C = g_1^-1 g_2^-1 ... g_k^-1.
* Statevector indices place qubit 0 on the most significant bit.
"""

import numpy as np
from numba import njit

GATE_H = 0
GATE_S = 1
GATE_CNOT = 2
GATE_X = 3
GATE_Z = 4


@njit(cache=True, nogil=True)
def max_gates(n_qubits: int) -> int:
    # Sweep emits O(n) gates per row per qubit; generous fixed bound.
    return 8 * n_qubits * n_qubits + 24 * n_qubits + 8


# ---------------------------------------------------------------------------
# Uniform symplectic-group sampling (transvection construction)
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _symplectic_inner(u, v, lo, nn):
    t = 0
    for i in range(lo, nn, 2):
        t ^= (u[i] & v[i + 1]) ^ (u[i + 1] & v[i])
    return t


@njit(cache=True, nogil=True)
def _apply_transvection(h, v, lo, nn):
    if _symplectic_inner(h, v, lo, nn) == 1:
        for i in range(lo, nn):
            v[i] ^= h[i]


@njit(cache=True, nogil=True)
def _find_transvection(x, y, t0, t1, lo, nn):
    """Fill t0, t1 with vectors such that Z_{t1} Z_{t0} x = y (x, y nonzero)."""
    for i in range(lo, nn):
        t0[i] = 0
        t1[i] = 0
    same = True
    for i in range(lo, nn):
        if x[i] != y[i]:
            same = False
            break
    if same:
        return
    if _symplectic_inner(x, y, lo, nn) == 1:
        for i in range(lo, nn):
            t0[i] = x[i] ^ y[i]
        return
    # <x, y> = 0: route through an intermediate vector z with <x, z> = <y, z> = 1.
    # First try a coordinate pair where both x and y have support.
    for i in range(lo, nn, 2):
        if (x[i] | x[i + 1]) and (y[i] | y[i + 1]):
            a = x[i] ^ y[i]
            b = x[i + 1] ^ y[i + 1]
            if a == 0 and b == 0:
                b = 1
                if x[i] != x[i + 1]:
                    a = 1
            t0[i] = a
            t0[i + 1] = b
            t1_inner_fill(x, y, t0, t1, lo, nn)
            return
    # Otherwise pick one pair where x has support and one where y does.
    for i in range(lo, nn, 2):
        if (x[i] | x[i + 1]) and not (y[i] | y[i + 1]):
            if x[i] == x[i + 1]:
                t0[i + 1] = 1
            else:
                t0[i + 1] = x[i]
                t0[i] = x[i + 1]
            break
    for i in range(lo, nn, 2):
        if not (x[i] | x[i + 1]) and (y[i] | y[i + 1]):
            if y[i] == y[i + 1]:
                t0[i + 1] ^= 1
            else:
                t0[i + 1] ^= y[i]
                t0[i] ^= y[i + 1]
            break
    t1_inner_fill(x, y, t0, t1, lo, nn)


@njit(cache=True, nogil=True)
def t1_inner_fill(x, y, t0, t1, lo, nn):
    # With z = x + t0-correction, split the two-transvection product.
    for i in range(lo, nn):
        t1[i] = t0[i] ^ y[i]
        t0[i] = t0[i] ^ x[i]


@njit(cache=True, nogil=True)
def _sample_symplectic_rows(n, lev_k, lev_bits, g, e1, f1, t0, t1, h0):
    """Build uniformly random symplectic rows over interleaved coordinates.

    ``lev_k[m-1]`` must be uniform on [1, 4^m - 1] and ``lev_bits[m-1]``
    uniform on [0, 2^(2m-1)), for m = 1..n.  Levels are applied from the
    innermost 2x2 block outward, each level choosing the images of one
    (X, Z) generator pair uniformly among the valid completions.
    """
    nn = 2 * n
    for i in range(nn):
        for j in range(nn):
            g[i, j] = 1 if i == j else 0
    for m in range(1, n + 1):
        lo = nn - 2 * m
        k = lev_k[m - 1]
        bits = lev_bits[m - 1]
        for i in range(lo, nn):
            f1[i] = (k >> (i - lo)) & 1
            e1[i] = 0
            h0[i] = 0
        e1[lo] = 1
        _find_transvection(e1, f1, t0, t1, lo, nn)
        # second basis image: e1 with random tail bits, pushed through the
        # transvections; bit 0 decides whether the final transvection acts
        b0 = bits & 1
        for j in range(2, 2 * m):
            h0[lo + j] = (bits >> (j - 1)) & 1
        h0[lo] = 1
        _apply_transvection(t0, h0, lo, nn)
        _apply_transvection(t1, h0, lo, nn)
        if b0 == 1:
            for i in range(lo, nn):
                f1[i] = 0
        for r in range(lo, nn):
            row = g[r]
            _apply_transvection(t0, row, lo, nn)
            _apply_transvection(t1, row, lo, nn)
            _apply_transvection(h0, row, lo, nn)
            _apply_transvection(f1, row, lo, nn)


@njit(cache=True, nogil=True)
def _tableau_from_draws(n, lev_k, lev_bits, sign_word, g, e1, f1, t0, t1, h0, tx, tz, tr):
    """Sample a uniform tableau: rows 0..n-1 are X images, n..2n-1 Z images."""
    _sample_symplectic_rows(n, lev_k, lev_bits, g, e1, f1, t0, t1, h0)
    for q in range(n):
        for j in range(n):
            tx[q, j] = g[2 * q, 2 * j]
            tz[q, j] = g[2 * q, 2 * j + 1]
            tx[n + q, j] = g[2 * q + 1, 2 * j]
            tz[n + q, j] = g[2 * q + 1, 2 * j + 1]
    for r in range(2 * n):
        tr[r] = (sign_word >> r) & 1


# ---------------------------------------------------------------------------
# Tableau gate updates (conjugation by the appended gate)
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _tab_h(tx, tz, tr, q):
    for r in range(tx.shape[0]):
        tr[r] ^= tx[r, q] & tz[r, q]
        tmp = tx[r, q]
        tx[r, q] = tz[r, q]
        tz[r, q] = tmp


@njit(cache=True, nogil=True)
def _tab_s(tx, tz, tr, q):
    for r in range(tx.shape[0]):
        tr[r] ^= tx[r, q] & tz[r, q]
        tz[r, q] ^= tx[r, q]


@njit(cache=True, nogil=True)
def _tab_cnot(tx, tz, tr, c, t):
    for r in range(tx.shape[0]):
        tr[r] ^= tx[r, c] & tz[r, t] & (tx[r, t] ^ tz[r, c] ^ 1)
        tx[r, t] ^= tx[r, c]
        tz[r, c] ^= tz[r, t]


@njit(cache=True, nogil=True)
def _tab_x(tx, tz, tr, q):
    for r in range(tx.shape[0]):
        tr[r] ^= tz[r, q]


@njit(cache=True, nogil=True)
def _tab_z(tx, tz, tr, q):
    for r in range(tx.shape[0]):
        tr[r] ^= tx[r, q]


@njit(cache=True, nogil=True)
def _emit(gates, ng, code, a, b, tx, tz, tr):
    gates[ng, 0] = code
    gates[ng, 1] = a
    gates[ng, 2] = b
    if code == GATE_H:
        _tab_h(tx, tz, tr, a)
    elif code == GATE_S:
        _tab_s(tx, tz, tr, a)
    elif code == GATE_CNOT:
        _tab_cnot(tx, tz, tr, a, b)
    elif code == GATE_X:
        _tab_x(tx, tz, tr, a)
    else:
        _tab_z(tx, tz, tr, a)
    return ng + 1


@njit(cache=True, nogil=True)
def _synthesize(tx, tz, tr, n, gates):
    """Reduce the tableau to the identity, recording the applied gates.

    Sweeps qubit by qubit: the stabilizer row is brought to +Z_q, then the
    destabilizer row to +X_q using only gates that fix Z_q.  Finished rows
    carry no support on later qubits, so later sweeps cannot disturb them.
    Returns the number of recorded gates.
    """
    ng = 0
    for q in range(n):
        s = n + q
        # --- stabilizer row -> Z_q
        jx = -1
        for j in range(q, n):
            if tx[s, j]:
                jx = j
                break
        if jx < 0:
            for j in range(q, n):
                if tz[s, j]:
                    ng = _emit(gates, ng, GATE_H, j, 0, tx, tz, tr)
                    jx = j
                    break
        if jx != q:
            ng = _emit(gates, ng, GATE_CNOT, q, jx, tx, tz, tr)
            ng = _emit(gates, ng, GATE_CNOT, jx, q, tx, tz, tr)
            ng = _emit(gates, ng, GATE_CNOT, q, jx, tx, tz, tr)
        for j in range(q + 1, n):
            if tx[s, j]:
                ng = _emit(gates, ng, GATE_CNOT, q, j, tx, tz, tr)
        for j in range(q + 1, n):
            if tz[s, j]:
                ng = _emit(gates, ng, GATE_H, j, 0, tx, tz, tr)
                ng = _emit(gates, ng, GATE_CNOT, q, j, tx, tz, tr)
        if tz[s, q]:
            ng = _emit(gates, ng, GATE_S, q, 0, tx, tz, tr)
        ng = _emit(gates, ng, GATE_H, q, 0, tx, tz, tr)
        # --- destabilizer row -> X_q (x bit at q is forced by anticommutation)
        for j in range(q + 1, n):
            if tx[q, j]:
                ng = _emit(gates, ng, GATE_CNOT, q, j, tx, tz, tr)
        for j in range(q + 1, n):
            if tz[q, j]:
                ng = _emit(gates, ng, GATE_H, j, 0, tx, tz, tr)
                ng = _emit(gates, ng, GATE_CNOT, q, j, tx, tz, tr)
        if tz[q, q]:
            ng = _emit(gates, ng, GATE_S, q, 0, tx, tz, tr)
        # --- signs
        if tr[q]:
            ng = _emit(gates, ng, GATE_Z, q, 0, tx, tz, tr)
        if tr[s]:
            ng = _emit(gates, ng, GATE_X, q, 0, tx, tz, tr)
    return ng


# ---------------------------------------------------------------------------
# Dense statevector gate action
# ---------------------------------------------------------------------------

_SQRT_HALF = 0.7071067811865476


@njit(cache=True, nogil=True)
def _vec_h(vec, n, q):
    bit = 1 << (n - 1 - q)
    for i in range(vec.shape[0]):
        if i & bit == 0:
            j = i | bit
            a = vec[i]
            b = vec[j]
            vec[i] = (a + b) * _SQRT_HALF
            vec[j] = (a - b) * _SQRT_HALF


@njit(cache=True, nogil=True)
def _vec_s(vec, n, q, dagger):
    bit = 1 << (n - 1 - q)
    phase = -1j if dagger else 1j
    for i in range(vec.shape[0]):
        if i & bit:
            vec[i] = vec[i] * phase


@njit(cache=True, nogil=True)
def _vec_cnot(vec, n, c, t):
    cbit = 1 << (n - 1 - c)
    tbit = 1 << (n - 1 - t)
    for i in range(vec.shape[0]):
        if (i & cbit) and not (i & tbit):
            j = i | tbit
            a = vec[i]
            vec[i] = vec[j]
            vec[j] = a


@njit(cache=True, nogil=True)
def _vec_x(vec, n, q):
    bit = 1 << (n - 1 - q)
    for i in range(vec.shape[0]):
        if i & bit == 0:
            j = i | bit
            a = vec[i]
            vec[i] = vec[j]
            vec[j] = a


@njit(cache=True, nogil=True)
def _vec_z(vec, n, q):
    bit = 1 << (n - 1 - q)
    for i in range(vec.shape[0]):
        if i & bit:
            vec[i] = -vec[i]


@njit(cache=True, nogil=True)
def _apply_reduction_gates(vec, n, gates, ng, dagger):
    """Act with the sampled Clifford on a dense vector.

    ``dagger=False`` applies C = g_1^-1 ... g_k^-1 (reverse order, inverted
    gates); ``dagger=True`` applies C^dagger = g_k ... g_1 (recorded order).
    """
    if dagger:
        for i in range(ng):
            code = gates[i, 0]
            a = gates[i, 1]
            b = gates[i, 2]
            if code == GATE_H:
                _vec_h(vec, n, a)
            elif code == GATE_S:
                _vec_s(vec, n, a, False)
            elif code == GATE_CNOT:
                _vec_cnot(vec, n, a, b)
            elif code == GATE_X:
                _vec_x(vec, n, a)
            else:
                _vec_z(vec, n, a)
    else:
        for i in range(ng - 1, -1, -1):
            code = gates[i, 0]
            a = gates[i, 1]
            b = gates[i, 2]
            if code == GATE_H:
                _vec_h(vec, n, a)
            elif code == GATE_S:
                _vec_s(vec, n, a, True)
            elif code == GATE_CNOT:
                _vec_cnot(vec, n, a, b)
            elif code == GATE_X:
                _vec_x(vec, n, a)
            else:
                _vec_z(vec, n, a)


# ---------------------------------------------------------------------------
# Snapshot batch
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def snapshot_batch(psi, n, lev_k, lev_bits, sign_words, born_u, phis, outcomes):
    """Collect one batch of classical-shadow snapshots.

    For each k: sample a uniform Clifford C_k from the pre-drawn integers,
    Born-sample z_k from C_k |psi> using the uniform variate ``born_u[k]``,
    and write phi_k = C_k^dagger |z_k> into ``phis[k]``.
    """
    batch = born_u.shape[0]
    nn = 2 * n
    d = psi.shape[0]
    g = np.empty((nn, nn), np.uint8)
    e1 = np.empty(nn, np.uint8)
    f1 = np.empty(nn, np.uint8)
    t0 = np.empty(nn, np.uint8)
    t1 = np.empty(nn, np.uint8)
    h0 = np.empty(nn, np.uint8)
    tx = np.empty((nn, n), np.uint8)
    tz = np.empty((nn, n), np.uint8)
    tr = np.empty(nn, np.uint8)
    gates = np.empty((max_gates(n), 3), np.int32)
    work = np.empty(d, np.complex128)
    for k in range(batch):
        _tableau_from_draws(n, lev_k[k], lev_bits[k], sign_words[k], g, e1, f1, t0, t1, h0, tx, tz, tr)
        ng = _synthesize(tx, tz, tr, n, gates)
        for i in range(d):
            work[i] = psi[i]
        _apply_reduction_gates(work, n, gates, ng, False)
        total = 0.0
        for i in range(d):
            total += work[i].real * work[i].real + work[i].imag * work[i].imag
        target = born_u[k] * total
        acc = 0.0
        z = -1
        last_support = 0
        for i in range(d):
            p = work[i].real * work[i].real + work[i].imag * work[i].imag
            if p > 0.0:
                last_support = i
            acc += p
            if acc > target:
                z = i
                break
        if z < 0:
            # float roundoff at u -> 1; fall back to the last supported outcome
            z = last_support
        outcomes[k] = z
        row = phis[k]
        for i in range(d):
            row[i] = 0.0
        row[z] = 1.0
        _apply_reduction_gates(row, n, gates, ng, True)
