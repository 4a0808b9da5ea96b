from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from qhtoeplitz.errors import InadmissibleExponent, NotProper
from qhtoeplitz.exact_algebra import Polynomial, RationalFunction, rational_roots, rf_partial_fractions
from qhtoeplitz.mellin import (build_F_thm2, build_F_thm3, inverse_mellin, mellin_transform,
                               vanishing_on_sequence)
from qhtoeplitz.symbols import RadialSymbol, RadialTerm, mellin_convolve

F = Fraction
Z = Polynomial.x()
R = RadialSymbol.monomial


def rf(num, den):
    return RationalFunction(num, den)


@pytest.mark.parametrize("n", range(6))
def test_monomial_transform(n):
    assert mellin_transform(R(n)) == rf(Polynomial.constant(1), Z + n)


def test_two_over_r_minus_r():
    phi = RadialSymbol.from_pairs([(2, -1), (-1, 1)])
    assert mellin_transform(phi) == rf(Z + 3, Z * Z - 1)


def test_log_term():
    assert mellin_transform(RadialSymbol([RadialTerm(1, 1, 1)])) == rf(Polynomial.constant(1), (Z + 1) ** 2)


def test_log_term_by_quadrature():
    # r ln(1/r) at z = 3: int r^3 ln(1/r) dr = 1/16
    val = mpmath.quad(lambda r: r * mpmath.log(1 / r) * r ** 2, [0, 1])
    assert abs(float(val) - float(mellin_transform(RadialSymbol([RadialTerm(1, 1, 1)]))(3))) < 1e-14


def test_inverse_thm3_p1():
    assert inverse_mellin(rf(Polynomial.constant(1), Z) - rf(Polynomial.constant(1), Z + 2)) == \
        RadialSymbol.one() - R(2)


def test_inverse_examples():
    assert inverse_mellin(rf(Z + 3, Z * Z - 1)) == RadialSymbol.from_pairs([(2, -1), (-1, 1)])
    assert inverse_mellin(rf(Polynomial.constant(1), (Z + 1) ** 2)) == RadialSymbol([RadialTerm(1, 1, 1)])


def test_inverse_errors():
    with pytest.raises(NotProper):
        inverse_mellin(rf(Z, Z + 1))
    with pytest.raises(InadmissibleExponent):
        inverse_mellin(rf(Polynomial.constant(1), Z - 2))


def test_build_F_thm2_examples():
    assert build_F_thm2(1, 1, 0) == rf(Polynomial.constant(2), Z)
    F1 = build_F_thm2(1, 1, 1)
    assert F1 == rf(2 * (Z + 4), Z * (Z + 2))
    assert {(p, c) for p, _, c in rf_partial_fractions(F1).terms} == {(F(0), F(4)), (F(-2), F(-2))}
    F2 = build_F_thm2(1, 1, 2)
    assert F2 == rf(2 * (Z + 6), Z * (Z + 2))
    assert {(p, c) for p, _, c in rf_partial_fractions(F2).terms} == {(F(0), F(6)), (F(-2), F(-4))}


@pytest.mark.parametrize("p, s, m", [(1, 1, 0), (1, 1, 3), (1, 2, 2), (2, 3, 1), (3, 2, 4), (5, 1, 2)])
def test_build_F_thm2_matches_gamma_ratio(p, s, m):
    F_ = build_F_thm2(p, s, m)
    for z in (F(1, 3), F(5, 2), 7, F(31, 4)):
        w = mpmath.mpf(z.numerator if isinstance(z, F) else z) / (z.denominator if isinstance(z, F) else 1) / (2 * s)
        q = mpmath.mpf(p) / s
        ratio = (mpmath.gamma(w) * mpmath.gamma(w + q + m + 1)
                 / (mpmath.gamma(w + m + 1) * mpmath.gamma(w + q + 1)))
        assert abs(float(ratio) - float(F_(z))) < 1e-12 * max(1, abs(float(ratio)))


@pytest.mark.parametrize("p", [1, 2, 3, 7])
@pytest.mark.parametrize("s", [1, 2, 5])
def test_build_F_thm2_m0(p, s):
    assert build_F_thm2(p, s, 0) == rf(Polynomial.constant(2 * s), Z)


@pytest.mark.parametrize("p, s, m", [(p, s, m) for p in (1, 2, 3) for s in (1, 2, 3) for m in range(5)])
def test_built_F_is_proper_with_expected_poles(p, s, m):
    F_ = build_F_thm2(p, s, m)
    assert F_.is_proper()
    roots, rest = rational_roots(F_.den)
    assert rest.degree == 0
    assert {r for r, _ in roots} <= {F(-2 * j * s) for j in range(m + 1)}


def test_build_F_thm3():
    assert build_F_thm3(1) == rf(Polynomial.constant(1), Z * (Z + 2))
    assert build_F_thm3(2) == rf(Polynomial.constant(1), Z * (Z + 4))
    assert inverse_mellin(build_F_thm3(1) * 2) == RadialSymbol.one() - R(2)


def test_vanishing_examples():
    assert vanishing_on_sequence(RationalFunction.zero(), 3, 5)
    assert not vanishing_on_sequence(rf(Polynomial.constant(1), Z + 1), 2, 3)
    f = rf(Z - 3, Z + 1)
    assert f(3) == 0 and f(5) != 0
    assert not vanishing_on_sequence(f, 2, 3)


# -- properties --------------------------------------------------------------------

exps = st.fractions(min_value=F(-11, 6), max_value=6, max_denominator=6).filter(lambda a: a > -2)
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=12).filter(lambda c: c != 0)
symbols = st.lists(st.builds(RadialTerm, exps, st.integers(0, 3), coeffs), max_size=4).map(RadialSymbol)
log_free = st.lists(st.builds(RadialTerm, exps, st.just(0), coeffs), max_size=4).map(RadialSymbol)


@settings(max_examples=100, deadline=None)
@given(symbols)
def test_round_trip(phi):
    f = mellin_transform(phi)
    assert inverse_mellin(f) == phi
    assert mellin_transform(inverse_mellin(f)) == f


@settings(max_examples=100, deadline=None)
@given(log_free, log_free)
def test_multiplicativity(f, g):
    assert mellin_transform(mellin_convolve(f, g)) == mellin_transform(f) * mellin_transform(g)
