import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Rational
from sympy.physics.quantum.cg import CG

from shadowqsd.shell_model import clebsch_gordan


def test_stretched_state():
    assert clebsch_gordan(1, 1, 1, 1, 2, 2) == pytest.approx(1.0, abs=1e-14)


def test_singlet_values():
    assert clebsch_gordan(1, 1, 1, -1, 0, 0) == pytest.approx(0.7071067811865476, abs=1e-13)
    assert clebsch_gordan(1, -1, 1, 1, 0, 0) == pytest.approx(-0.7071067811865476, abs=1e-13)


def test_projection_mismatch_is_zero():
    assert clebsch_gordan(1, 1, 1, 1, 0, 0) == 0.0


def test_triangle_violation_is_zero():
    # two j=3/2 cannot couple to J=5
    assert clebsch_gordan(3, 1, 3, 1, 10, 2) == 0.0


@pytest.mark.parametrize("two_j,two_m", [(1, 2), (2, 1), (3, 0), (0, 1)])
def test_parity_mismatch_raises(two_j, two_m):
    with pytest.raises(ValueError):
        clebsch_gordan(two_j, two_m, 1, 1, 2, 2)


def test_projection_out_of_range_raises():
    with pytest.raises(ValueError):
        clebsch_gordan(1, 3, 1, 1, 2, 2)


def test_orthogonality_up_to_two_j_five():
    for two_j1 in range(1, 6):
        for two_j2 in range(1, 6):
            for two_jj in range(abs(two_j1 - two_j2), two_j1 + two_j2 + 1, 2):
                for two_jjp in range(abs(two_j1 - two_j2), two_j1 + two_j2 + 1, 2):
                    for two_mm in range(-min(two_jj, two_jjp), min(two_jj, two_jjp) + 1, 2):
                        total = sum(
                            clebsch_gordan(two_j1, two_m1, two_j2, two_mm - two_m1, two_jj, two_mm)
                            * clebsch_gordan(two_j1, two_m1, two_j2, two_mm - two_m1, two_jjp, two_mm)
                            for two_m1 in range(-two_j1, two_j1 + 1, 2)
                            if abs(two_mm - two_m1) <= two_j2
                        )
                        expected = 1.0 if two_jj == two_jjp else 0.0
                        assert abs(total - expected) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(
    two_j1=st.integers(1, 5),
    two_j2=st.integers(1, 5),
    data=st.data(),
)
def test_against_exact_symbolic_values(two_j1, two_j2, data):
    two_jj = data.draw(
        st.integers(abs(two_j1 - two_j2), two_j1 + two_j2).filter(
            lambda v: (v - (two_j1 + two_j2)) % 2 == 0
        )
    )
    two_m1 = data.draw(st.integers(-two_j1, two_j1).filter(lambda v: (v - two_j1) % 2 == 0))
    two_m2 = data.draw(st.integers(-two_j2, two_j2).filter(lambda v: (v - two_j2) % 2 == 0))
    two_mm = two_m1 + two_m2
    if abs(two_mm) > two_jj:
        return
    ours = clebsch_gordan(two_j1, two_m1, two_j2, two_m2, two_jj, two_mm)
    exact = float(
        CG(
            Rational(two_j1, 2), Rational(two_m1, 2),
            Rational(two_j2, 2), Rational(two_m2, 2),
            Rational(two_jj, 2), Rational(two_mm, 2),
        ).doit()
    )
    assert ours == pytest.approx(exact, abs=1e-12)


def test_condon_shortley_sign_convention():
    # highest m1 coefficient is positive for every allowed J
    for two_jj in (0, 2):
        top = clebsch_gordan(1, 1, 1, two_jj - 1 if two_jj else -1, two_jj, 0)
        if two_jj == 2:
            top = clebsch_gordan(1, 1, 1, -1, 2, 0)
        assert top > 0
