"""Shadow-subspace ground-state estimation for shell-model Hamiltonians.

The package is organised in four layers:

``shadowqsd.shell_model``
    Interaction-file parsing, m-scheme Slater-determinant bases and the
    reduced many-body Hamiltonian padded to a qubit register.
``shadowqsd.shadows``
    Dense statevector simulation of randomised Clifford measurements and
    classical-shadow density-matrix estimators.
``shadowqsd.subspace``
    Real-time-evolved subspaces, the vectorised shadow-product overlap and
    effective-Hamiltonian matrices, and the generalised eigensolver.
``shadowqsd.harness``
    Reproducible scaling experiments (error versus shots, subspace size,
    estimator bias) with a small CLI.
"""

from shadowqsd.shell_model import (
    InteractionData,
    Orbital,
    ReducedHamiltonian,
    SlaterDeterminant,
    build_hamiltonian,
    clebsch_gordan,
    enumerate_basis,
    matrix_element,
    parse_interaction,
)
from shadowqsd.shadows import (
    ClassicalShadow,
    CliffordElement,
    Gate,
    ShadowSnapshot,
    StateVector,
    apply_circuit,
    born_sample,
    materialize,
    sample_clifford,
    shadow_density_matrix,
    take_snapshots,
)
from shadowqsd.subspace import (
    EvolvedFamily,
    GevpSolution,
    SubspaceProblem,
    assemble_subspace,
    compute_mnes,
    evolve_exact,
    evolved_family,
    exact_ground_energy,
    shadow_qsd_ground_energy,
    solve_gevp,
)

__version__ = "0.1.0"
