"""Scaling studies: error versus shots, subspace size, and estimator bias.

Repeats are independent jobs distributed over a small thread pool (the
snapshot kernels release the GIL); every repeat derives its own child seed
from the master seed, so results do not depend on scheduling order or worker
count.  Each study records the worst lower-bound margin min(E_s - E0) it
observed, which the test suite audits against the variational guarantee.
"""

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from shadowqsd.harness.config import ExperimentConfig
from shadowqsd.harness.models import resolve_model
from shadowqsd.shadows import StateVector, shadow_density_matrix
from shadowqsd.subspace import (
    compute_mnes,
    evolved_family,
    exact_ground_energy,
    shadow_qsd_ground_energy,
)

_MAX_WORKERS = 2
_ERR_FLOOR = 1e-15


@dataclass(frozen=True)
class ScalingResult:
    """Rows of one study plus the fitted trend."""

    study: str
    columns: tuple[str, ...]
    rows: np.ndarray
    slope: float
    intercept: float
    slope_stderr: float
    meta: dict = field(default_factory=dict, compare=False)

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(self.columns) + "\n")
            for row in self.rows:
                fh.write(",".join(_format_cell(v) for v in row) + "\n")


def _format_cell(value: float) -> str:
    return f"{int(value)}" if float(value).is_integer() and abs(value) < 1e15 else f"{value:.12g}"


def fit_loglog_slope(xs, ys) -> tuple[float, float, float]:
    """Least-squares slope, intercept and slope stderr of log(y) vs log(x)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 2:
        raise ValueError("need at least two points to fit a slope")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("log-log fit requires strictly positive values")
    return _fit_line(np.log(xs), np.log(ys))


def _fit_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    xbar = x.mean()
    ybar = y.mean()
    sxx = float(np.sum((x - xbar) ** 2))
    slope = float(np.sum((x - xbar) * (y - ybar)) / sxx)
    intercept = float(ybar - slope * xbar)
    resid = y - slope * x - intercept
    dof = x.size - 2
    stderr = float(np.sqrt(np.sum(resid**2) / dof / sxx)) if dof > 0 else float("nan")
    return slope, intercept, stderr


def _child_seeds(master_seed, count: int):
    return np.random.SeedSequence(master_seed).spawn(count)


def _run_repeats(task, seeds):
    """Evaluate ``task(seed)`` for every child seed on the worker pool."""
    with ThreadPoolExecutor(max_workers=_MAX_WORKERS) as pool:
        return list(pool.map(task, seeds))


def _quartiles(values):
    v = np.asarray(values, dtype=float)
    return float(np.median(v)), float(np.quantile(v, 0.25)), float(np.quantile(v, 0.75))


def _initial_state(config: ExperimentConfig, hamiltonian) -> StateVector:
    if config.initial >= hamiltonian.dim_physical:
        raise ValueError(
            f"initial basis index {config.initial} outside the physical block "
            f"of dimension {hamiltonian.dim_physical}"
        )
    return StateVector.basis_state(hamiltonian.n_qubits, config.initial)


def _resolve_m(config: ExperimentConfig, hamiltonian) -> int:
    if config.m == "mnes":
        return compute_mnes(hamiltonian, _initial_state(config, hamiltonian), config.dt, config.mnes_tol)
    return int(config.m)


def run_shots_scaling(config: ExperimentConfig) -> ScalingResult:
    """Median |E_s - E0| versus snapshots per state at the minimal subspace."""
    h = resolve_model(config.model, config.protons, config.neutrons, config.twice_jz)
    e0, _ = exact_ground_energy(h)
    initial = _initial_state(config, h)
    m = _resolve_m(config, h)
    times = [config.dt * (j + 1) for j in range(m)]
    seeds = _child_seeds(config.seed, len(config.shots) * config.repeats)

    rows = []
    margin = math.inf
    for col, n_shots in enumerate(config.shots):
        block = seeds[col * config.repeats : (col + 1) * config.repeats]

        def one(seed, n_shots=n_shots):
            es, _ = shadow_qsd_ground_energy(h, times, n_shots, seed, initial=initial)
            return es

        energies = _run_repeats(one, block)
        errs = [max(abs(e - e0), _ERR_FLOOR) for e in energies]
        margin = min(margin, min(e - e0 for e in energies))
        med, q25, q75 = _quartiles(errs)
        inv = 1.0 / np.asarray(errs)
        rows.append([n_shots, med, q25, q75, float(inv.mean()), float(inv.std(ddof=1) if len(inv) > 1 else 0.0), len(errs)])

    rows = np.asarray(rows, dtype=float)
    if len(config.shots) >= 2:
        slope, intercept, stderr = fit_loglog_slope(rows[:, 0], 1.0 / rows[:, 1])
    else:
        slope = intercept = stderr = float("nan")
    return ScalingResult(
        study="shots",
        columns=("shots", "median_abs_err_mev", "q25_abs_err_mev", "q75_abs_err_mev",
                 "mean_inv_err", "std_inv_err", "repeats"),
        rows=rows,
        slope=slope,
        intercept=intercept,
        slope_stderr=stderr,
        meta={"e0_mev": e0, "m": m, "lower_bound_margin_mev": margin, "dt": config.dt},
    )


def run_subspace_scaling(config: ExperimentConfig) -> ScalingResult:
    """Median |E_s - E0| versus evolved-state count at fixed shots per state."""
    h = resolve_model(config.model, config.protons, config.neutrons, config.twice_jz)
    e0, _ = exact_ground_energy(h)
    initial = _initial_state(config, h)
    mnes = _resolve_m(config, h)
    n_shots = config.shots[0]
    m_values = []
    clamped = False
    for k in range(config.m_extra + 1):
        m = mnes + k
        if m > h.dim_physical:
            clamped = True
            warnings.warn(
                f"subspace sweep clamped at the physical dimension {h.dim_physical}",
                stacklevel=2,
            )
            break
        m_values.append(m)
    seeds = _child_seeds(config.seed, len(m_values) * config.repeats)

    rows = []
    margin = math.inf
    for col, m in enumerate(m_values):
        times = [config.dt * (j + 1) for j in range(m)]
        block = seeds[col * config.repeats : (col + 1) * config.repeats]

        def one(seed, times=times):
            es, _ = shadow_qsd_ground_energy(h, times, n_shots, seed, initial=initial)
            return es

        energies = _run_repeats(one, block)
        errs = [max(abs(e - e0), _ERR_FLOOR) for e in energies]
        margin = min(margin, min(e - e0 for e in energies))
        med, q25, q75 = _quartiles(errs)
        rows.append([m, mnes, med, q25, q75, len(errs)])

    rows = np.asarray(rows, dtype=float)
    if len(m_values) >= 2:
        # exponential error decay shows as a line in log(1/err) versus m
        slope, intercept, stderr = _fit_line(rows[:, 0], np.log(1.0 / rows[:, 2]))
    else:
        slope = intercept = stderr = float("nan")
    meta = {"e0_mev": e0, "mnes": mnes, "shots": n_shots,
            "lower_bound_margin_mev": margin, "clamped": clamped}
    return ScalingResult(
        study="subspace",
        columns=("m", "mnes", "median_abs_err_mev", "q25_abs_err_mev", "q75_abs_err_mev", "repeats"),
        rows=rows,
        slope=slope,
        intercept=intercept,
        slope_stderr=stderr,
        meta=meta,
    )


def run_bias_variance_study(config: ExperimentConfig) -> tuple[ScalingResult, ScalingResult]:
    """Monte-Carlo bias and variance of one subspace matrix entry versus shots.

    The ``worst`` pattern estimates Tr(rho~ rho~ H rho~ rho~) with all four
    factors sharing one shadow; ``distinct`` uses four independent shadows of
    four different evolved states, where the deviation cancels in expectation.
    """
    h = resolve_model(config.model, config.protons, config.neutrons, config.twice_jz)
    matrix = h.matrix
    n_states = 1 if config.index_pattern == "worst" else 4
    family = evolved_family(h, [config.dt * (j + 1) for j in range(n_states)], _initial_state(config, h))
    states = family.states
    exact_rhos = [s.density_matrix() for s in states]
    if config.index_pattern == "worst":
        r = exact_rhos[0]
        exact_value = float(np.trace(r @ r @ matrix @ r @ r).real)
    else:
        exact_value = float(np.trace(exact_rhos[1] @ exact_rhos[0] @ matrix @ exact_rhos[2] @ exact_rhos[3]).real)

    grid = config.bias_shots
    seeds = _child_seeds(config.seed, len(grid) * config.repeats)
    bias_rows = []
    var_rows = []
    for col, m_shots in enumerate(grid):
        block = seeds[col * config.repeats : (col + 1) * config.repeats]

        def one(seed, m_shots=m_shots):
            children = seed.spawn(n_states)
            rhos = [
                shadow_density_matrix(states[i], m_shots, np.random.Generator(np.random.PCG64(children[i])))
                for i in range(n_states)
            ]
            if config.index_pattern == "worst":
                r = rhos[0]
                return float(np.trace(r @ r @ matrix @ r @ r).real)
            return float(np.trace(rhos[1] @ rhos[0] @ matrix @ rhos[2] @ rhos[3]).real)

        estimates = np.asarray(_run_repeats(one, block), dtype=float)
        deviations = exact_value - estimates
        bias = float(deviations.mean())
        se = float(deviations.std(ddof=1) / math.sqrt(len(deviations)))
        bias_rows.append([m_shots, abs(bias), se, len(deviations)])
        var_rows.append([m_shots, float(deviations.var(ddof=1)), len(deviations)])

    bias_rows = np.asarray(bias_rows, dtype=float)
    var_rows = np.asarray(var_rows, dtype=float)
    if len(grid) >= 2 and np.all(bias_rows[:, 1] > 0):
        bias_fit = fit_loglog_slope(bias_rows[:, 0], bias_rows[:, 1])
    else:
        bias_fit = (float("nan"),) * 3
    var_fit = fit_loglog_slope(var_rows[:, 0], var_rows[:, 1]) if len(grid) >= 2 else (float("nan"),) * 3
    meta = {"exact_value_mev": exact_value, "index_pattern": config.index_pattern,
            "dim": matrix.shape[0]}
    bias_result = ScalingResult(
        "bias", ("shots_per_state", "abs_bias_mev", "bias_stderr_mev", "repeats"),
        bias_rows, *bias_fit, meta=meta,
    )
    var_result = ScalingResult(
        "bias_variance", ("shots_per_state", "deviation_variance", "repeats"),
        var_rows, *var_fit, meta=meta,
    )
    return bias_result, var_result
