"""Statevector backend, random Cliffords and classical-shadow estimators."""

from shadowqsd.shadows.shadow import (
    ClassicalShadow,
    ShadowSnapshot,
    dump_snapshots,
    load_snapshot_audit,
    materialize,
    replay_snapshots,
    shadow_density_matrix,
    take_snapshots,
)
from shadowqsd.shadows.statevector import (
    Gate,
    StateVector,
    apply_circuit,
    born_sample,
    format_bitstring,
)
from shadowqsd.shadows.tableau import (
    CliffordElement,
    clifford_from_draws,
    draw_clifford_integers,
    sample_clifford,
)

__all__ = [
    "ClassicalShadow",
    "CliffordElement",
    "Gate",
    "ShadowSnapshot",
    "StateVector",
    "apply_circuit",
    "born_sample",
    "clifford_from_draws",
    "draw_clifford_integers",
    "dump_snapshots",
    "format_bitstring",
    "load_snapshot_audit",
    "materialize",
    "replay_snapshots",
    "sample_clifford",
    "shadow_density_matrix",
    "take_snapshots",
]
