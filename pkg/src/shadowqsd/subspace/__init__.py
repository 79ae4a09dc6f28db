"""Real-time subspaces, shadow-product matrices and the generalized eigensolver."""

from shadowqsd.subspace.assembly import SubspaceProblem, assemble_subspace
from shadowqsd.subspace.evolution import (
    EvolvedFamily,
    evolve_exact,
    evolved_family,
    exact_ground_energy,
)
from shadowqsd.subspace.gevp import (
    MACHINE_RANK_TOL,
    DegenerateSubspaceError,
    GevpSolution,
    solve_gevp,
)
from shadowqsd.subspace.mnes import DEFAULT_MNES_TOL, NoFiniteMnesError, compute_mnes
from shadowqsd.subspace.pipeline import (
    PipelineDiagnostics,
    exact_subspace_ground_energy,
    shadow_qsd_ground_energy,
    write_run_diagnostics,
)

__all__ = [
    "DEFAULT_MNES_TOL",
    "MACHINE_RANK_TOL",
    "DegenerateSubspaceError",
    "EvolvedFamily",
    "GevpSolution",
    "NoFiniteMnesError",
    "PipelineDiagnostics",
    "SubspaceProblem",
    "assemble_subspace",
    "compute_mnes",
    "evolve_exact",
    "evolved_family",
    "exact_ground_energy",
    "exact_subspace_ground_energy",
    "shadow_qsd_ground_energy",
    "solve_gevp",
    "write_run_diagnostics",
]
