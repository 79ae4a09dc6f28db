"""Angular-momentum coupling coefficients.

All quantum numbers are passed as twice their value (``two_j = 2j``) so that
half-integer spins stay in exact integer arithmetic.  Coefficients follow the
Condon-Shortley phase convention.
"""

import math

import numpy as np

# Log-factorial table.  Shell-model couplings stay far below 2j = 40; the
# largest factorial argument for two coupled spins is j1 + j2 + J + 1 <= 61.
_TABLE_SIZE = 130
_LOG_FACT = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, _TABLE_SIZE)))))


def _check_pair(two_j: int, two_m: int) -> None:
    if two_j < 0:
        raise ValueError(f"negative angular momentum: two_j = {two_j}")
    if (two_j - two_m) % 2 != 0:
        raise ValueError(
            f"parity mismatch: two_j = {two_j} and two_m = {two_m} must have equal parity"
        )
    if abs(two_m) > two_j:
        raise ValueError(f"projection out of range: |two_m| = {abs(two_m)} > two_j = {two_j}")


def clebsch_gordan(
    two_j1: int,
    two_m1: int,
    two_j2: int,
    two_m2: int,
    two_j: int,
    two_m: int,
) -> float:
    """Return the coefficient <j1 m1, j2 m2 | J M>.

    Evaluated with the Racah closed-form sum over log-factorials.  Returns 0
    when M != m1 + m2 or the triangle rule fails; raises ``ValueError`` when a
    (2j, 2m) pair is malformed, which is a contract violation rather than a
    vanishing coefficient.
    """
    _check_pair(two_j1, two_m1)
    _check_pair(two_j2, two_m2)
    _check_pair(two_j, two_m)
    if two_m1 + two_m2 != two_m:
        return 0.0
    if two_j > two_j1 + two_j2 or two_j < abs(two_j1 - two_j2):
        return 0.0
    if (two_j1 + two_j2 - two_j) % 2 != 0:
        return 0.0

    # Integer factorial arguments, all guaranteed even sums halved.
    def f(two_x: int) -> float:
        return _LOG_FACT[two_x // 2]

    log_pref = 0.5 * (
        math.log(two_j + 1)
        + f(two_j1 + two_j2 - two_j)
        + f(two_j1 - two_j2 + two_j)
        + f(-two_j1 + two_j2 + two_j)
        - f(two_j1 + two_j2 + two_j + 2)
        + f(two_j + two_m)
        + f(two_j - two_m)
        + f(two_j1 - two_m1)
        + f(two_j1 + two_m1)
        + f(two_j2 - two_m2)
        + f(two_j2 + two_m2)
    )

    k_min = max(0, (two_j2 - two_j - two_m1) // 2, (two_j1 + two_m2 - two_j) // 2)
    k_max = min(
        (two_j1 + two_j2 - two_j) // 2,
        (two_j1 - two_m1) // 2,
        (two_j2 + two_m2) // 2,
    )
    total = 0.0
    for k in range(k_min, k_max + 1):
        log_den = (
            _LOG_FACT[k]
            + f(two_j1 + two_j2 - two_j - 2 * k)
            + f(two_j1 - two_m1 - 2 * k)
            + f(two_j2 + two_m2 - 2 * k)
            + f(two_j - two_j2 + two_m1 + 2 * k)
            + f(two_j - two_j1 - two_m2 + 2 * k)
        )
        term = math.exp(log_pref - log_den)
        total += -term if k % 2 else term
    return total
