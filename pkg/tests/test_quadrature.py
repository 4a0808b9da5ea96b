from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from qhtoeplitz.errors import QuadratureFailure
from qhtoeplitz.mellin import mellin_transform
from qhtoeplitz.operators import BasisVector, apply_qh
from qhtoeplitz.quadrature import (QuadratureConfig, integrate_powers, mellin_numeric,
                                   projection_coefficient, validate_lemma2)
from qhtoeplitz.symbols import QHSymbol, RadialSymbol, RadialTerm

F = Fraction
R = RadialSymbol.monomial
z, zbar = BasisVector.z, BasisVector.zbar


def test_mellin_numeric_examples():
    assert abs(mellin_numeric(R(3), 4) - 1 / 7) < 1e-12
    assert abs(mellin_numeric(RadialSymbol.one(), 2) - 0.5) < 1e-12
    assert abs(mellin_numeric(RadialSymbol([RadialTerm(-1, 1, 1)]), 3) - 0.25) < 1e-12


def test_mellin_numeric_divergent():
    with pytest.raises(ValueError):
        mellin_numeric(R(F(-3, 2)), 1)


def test_endpoint_singularity_against_mpmath():
    # closed form 2!/(1/10)^3; a generic adaptive rule underestimates this one badly
    val, _ = integrate_powers([(1, F(-9, 10), 2)])
    assert abs(val - 2000) < 1e-8
    val, _ = integrate_powers([(1, F(-1, 2), 1)])
    ref = mpmath.quad(lambda r: mpmath.log(1 / r) / mpmath.sqrt(r), [0, 1])
    assert abs(val - 4) < 1e-12 and abs(val - float(ref)) < 1e-7


def test_projection_examples():
    f = QHSymbol(1, R(1))
    assert abs(projection_coefficient(f, z(0), z(1)) - 1.0) < 1e-10
    assert projection_coefficient(f, z(0), z(2)) == 0
    g = QHSymbol(-1, R(3))
    exact = apply_qh(g, z(1))
    assert exact.vec == z(0) and exact.coeff == F(2, 6)
    assert abs(projection_coefficient(g, z(1), z(0)) - 2 / 6) < 1e-10


@pytest.mark.parametrize("f", [QHSymbol(1, R(1)), QHSymbol(-2, R(2)), QHSymbol(0, RadialSymbol.one())])
def test_validate_examples(f):
    rep = validate_lemma2(f, 10)
    assert rep.max_abs_dev <= 1e-9
    assert set(rep.to_dict()) == {"kmax", "max_abs_dev", "worst_index"}


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(target_abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_refinements=0)


def test_failure_with_too_few_refinements():
    with pytest.raises(QuadratureFailure):
        mellin_numeric(R(2), 3, QuadratureConfig(max_refinements=1))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.builds(RadialTerm, st.fractions(min_value=-1, max_value=5, max_denominator=4),
                          st.integers(0, 2),
                          st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)),
                min_size=1, max_size=3).map(RadialSymbol),
       st.fractions(min_value=3, max_value=30, max_denominator=4))
def test_numeric_matches_exact_transform(phi, zval):
    exact = float(mellin_transform(phi)(zval))
    assert abs(mellin_numeric(phi, zval) - exact) < 1e-9
