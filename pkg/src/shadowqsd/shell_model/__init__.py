"""Nuclear shell-model data handling and reduced Hamiltonian construction."""

from shadowqsd.shell_model.angular import clebsch_gordan
from shadowqsd.shell_model.basis import SlaterDeterminant, dump_basis_csv, enumerate_basis
from shadowqsd.shell_model.hamiltonian import (
    ReducedHamiltonian,
    TermSparsityReport,
    build_hamiltonian,
    matrix_element,
    total_jz_operator,
    verify_term_sparsity,
)
from shadowqsd.shell_model.interaction import (
    InteractionData,
    InteractionParseError,
    InteractionValidationError,
    Orbital,
    ShellSpec,
    TbmeRecord,
    TwoBodyTerm,
    UndeclaredShellError,
    load_interaction,
    parse_interaction,
)

__all__ = [
    "InteractionData",
    "InteractionParseError",
    "InteractionValidationError",
    "Orbital",
    "ReducedHamiltonian",
    "ShellSpec",
    "SlaterDeterminant",
    "TbmeRecord",
    "TermSparsityReport",
    "TwoBodyTerm",
    "UndeclaredShellError",
    "build_hamiltonian",
    "clebsch_gordan",
    "dump_basis_csv",
    "enumerate_basis",
    "load_interaction",
    "matrix_element",
    "parse_interaction",
    "total_jz_operator",
    "verify_term_sparsity",
]
