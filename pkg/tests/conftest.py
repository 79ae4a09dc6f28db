import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shadowqsd.shell_model import parse_interaction

P_SHELL_NEUTRONS = """
# p-shell, neutrons only, schematic values
SHELL 0p3/2 3 -1 1
SHELL 0p1/2 1 -1 1
SPE 0p3/2 -2.0
SPE 0p1/2 1.5
TBME 0p3/2 0p3/2 0p3/2 0p3/2 0 2 -3.0
TBME 0p3/2 0p3/2 0p1/2 0p1/2 0 2 -1.2
TBME 0p1/2 0p1/2 0p1/2 0p1/2 0 2 -0.8
TBME 0p3/2 0p1/2 0p3/2 0p1/2 2 2 -0.7
TBME 0p3/2 0p3/2 0p3/2 0p3/2 4 2 -0.5
"""

MIXED_SPECIES = """
SHELL s1 1 1 1
SHELL s2 3 1 1
SHELL s1 1 1 -1
SPE s1 -1.3
SPE s2 0.7
TBME s1 s1 s1 s1 0 2 -2.1
TBME s1 s2 s1 s2 2 2 -1.1
TBME s1 s1 s2 s2 0 2 -0.9
TBME s2 s2 s2 s2 4 2 -0.4
TBME s1 s2 s1 s2 2 0 -1.7
TBME s1 s1 s1 s1 2 0 0.8
"""


@pytest.fixture(scope="session")
def p_shell():
    return parse_interaction(P_SHELL_NEUTRONS)


@pytest.fixture(scope="session")
def mixed_species():
    return parse_interaction(MIXED_SPECIES)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_state(n_qubits: int, rng) -> np.ndarray:
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return amps / np.linalg.norm(amps)
