"""Built-in benchmark models so the experiment suite needs no external data.

``he6_random`` is a seeded random-eigenbasis 4-qubit Hamiltonian whose
|0...0> overlaps with the eigenvectors decay geometrically: three dominant
components put its minimum evolved-state count at 3, and the faint tail keeps
the evolved span enriching as the subspace grows.  ``pairing`` is a two-shell
neutron pairing interaction built through the full shell-model path.
"""

import numpy as np

from shadowqsd.shell_model import build_hamiltonian, enumerate_basis, parse_interaction
from shadowqsd.shell_model.hamiltonian import ReducedHamiltonian

HE6_RANDOM_SEED = 20406
_HE6_EIGENVALUE_RANGE = (-22.0, 8.0)
_HE6_OVERLAPS = np.array([0.72, 0.19, 0.088] + list(4e-9 * 0.3 ** np.arange(13)))

PAIRING_INTERACTION = """
# Two neutron shells with a schematic pairing force.
SHELL j3 3 1 1
SHELL j1 1 1 1
SPE j3 0.0
SPE j1 2.0
TBME j3 j3 j3 j3 0 2 -1.8
TBME j1 j1 j1 j1 0 2 -1.1
TBME j3 j3 j1 j1 0 2 -0.9
TBME j3 j3 j3 j3 4 2 -0.3
TBME j3 j1 j3 j1 2 2 -0.5
TBME j3 j1 j3 j1 4 2 -0.4
"""

BIAS_PROBE_SEED = 61803


def he6_random_model() -> ReducedHamiltonian:
    """Seeded 16-dimensional benchmark Hamiltonian with controlled overlaps."""
    rng = np.random.default_rng(HE6_RANDOM_SEED)
    c2 = _HE6_OVERLAPS / _HE6_OVERLAPS.sum()
    c = np.sqrt(c2)
    d = c.size
    g = rng.normal(size=(d, d))
    g[:, 0] = c
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.diag(r))
    # column 0 of q is c, so the transpose has <e_0|v_k> = q[k, 0] = c_k
    eigvecs = q.T
    lam = np.sort(rng.uniform(*_HE6_EIGENVALUE_RANGE, size=d))
    lam[0] = _HE6_EIGENVALUE_RANGE[0] - 0.5
    matrix = eigvecs @ np.diag(lam) @ eigvecs.T
    matrix = 0.5 * (matrix + matrix.T)
    return ReducedHamiltonian.from_dense(matrix)


def pairing_model(n_neutrons: int = 2, jz_restriction: int | None = None) -> ReducedHamiltonian:
    """Two-shell pairing Hamiltonian through the interaction/basis pipeline."""
    interaction = parse_interaction(PAIRING_INTERACTION)
    basis = enumerate_basis(interaction, 0, n_neutrons, jz_restriction)
    return build_hamiltonian(interaction, basis)


def bias_probe_model() -> ReducedHamiltonian:
    """Random 16-dimensional Hamiltonian with |0...0> sitting at energy zero.

    Estimator-bias studies probe matrix elements built from shadows of an
    evolved |0...0>; its energy <0|H|0> multiplies the O(d/M) cross terms of
    the deviation, so it is shifted to zero here to expose the O(d^3/M^2)
    component that dominates deeper coincidence patterns.  The shift is a
    constant, so the evolved states themselves are unchanged.
    """
    rng = np.random.default_rng(BIAS_PROBE_SEED)
    d = 16
    g = rng.normal(size=(d, d)) * (10.0 / np.sqrt(d))
    matrix = 0.5 * (g + g.T)
    matrix -= matrix[0, 0] * np.eye(d)
    return ReducedHamiltonian.from_dense(matrix)


TOY_MODELS = {
    "he6_random": he6_random_model,
    "pairing": pairing_model,
    "bias_probe": bias_probe_model,
}


def resolve_model(spec: str, n_protons: int = 0, n_neutrons: int = 0, jz_restriction=None) -> ReducedHamiltonian:
    """Resolve ``toy:<name>`` or ``file:<path>`` model specifications."""
    if spec.startswith("toy:"):
        name = spec[4:]
        if name not in TOY_MODELS:
            raise ValueError(f"unknown toy model {name!r}; available: {sorted(TOY_MODELS)}")
        if name == "pairing" and (n_neutrons or jz_restriction is not None):
            return pairing_model(n_neutrons or 2, jz_restriction)
        return TOY_MODELS[name]()
    if spec.startswith("file:"):
        from shadowqsd.shell_model import load_interaction

        interaction = load_interaction(spec[5:])
        basis = enumerate_basis(interaction, n_protons, n_neutrons, jz_restriction)
        return build_hamiltonian(interaction, basis)
    raise ValueError(f"model must start with 'toy:' or 'file:', got {spec!r}")
