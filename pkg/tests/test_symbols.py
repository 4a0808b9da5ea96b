from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from qhtoeplitz.errors import InadmissibleExponent, SymbolSyntaxError, Unsupported, ZeroSymbol
from qhtoeplitz.symbols import (BoundednessClass, QHSymbol, RadialSymbol, RadialTerm,
                                classify_boundedness, format_qh, format_radial, mellin_convolve,
                                parse_radial, parse_symbol)

F = Fraction
R = RadialSymbol.monomial


def test_parse_degree_one():
    f = parse_symbol("E(1) * r^(-1)")
    assert f == QHSymbol(1, R(-1))


def test_parse_negative_degree():
    assert parse_symbol("E(-1) * r^(3)") == QHSymbol(-1, R(3))


def test_parse_radial_only():
    f = parse_symbol("2*r^(-1) - r^(1)")
    assert f.degree == 0
    assert f.radial == RadialSymbol.from_pairs([(2, -1), (-1, 1)])


def test_parse_parenthesised_radial_and_logs():
    f = parse_symbol(" E( 2 ) * ( 1/2 - 3/4*r^(1/2)*L^2 ) ")
    assert f.degree == 2
    assert f.radial == RadialSymbol([RadialTerm(0, 0, F(1, 2)), RadialTerm(F(1, 2), 2, F(-3, 4))])


def test_parse_combines_like_terms():
    assert parse_radial("r^(1) + 2*r^(1) - 3*r^(1)").is_zero()


@pytest.mark.parametrize("text, pos", [("r^(1", 4), ("2*", 2), ("r^(1) +", 7), ("E(1)*r^(1) x", 11),
                                       ("r^(1/0)", 5), ("", 0)])
def test_syntax_error_positions(text, pos):
    with pytest.raises(SymbolSyntaxError) as info:
        parse_symbol(text)
    assert info.value.position == pos


def test_inadmissible_exponent():
    with pytest.raises(InadmissibleExponent):
        parse_symbol("r^(-2)")
    with pytest.raises(InadmissibleExponent):
        R(-3)


def test_formal_parse_allows_low_exponents():
    assert parse_radial("3*r^(-2) - 2", formal=True).is_formal()


def test_format():
    assert format_radial(RadialSymbol.from_pairs([(2, -1), (-1, 1)])) == "2*r^(-1) - r^(1)"
    assert format_qh(QHSymbol(1, RadialSymbol.from_pairs([(2, -1), (-1, 1)]))) == "E(1)*(2*r^(-1) - r^(1))"
    assert format_qh(QHSymbol(-1, R(3))) == "E(-1)*r^(3)"
    assert format_radial(RadialSymbol([RadialTerm(1, 1, 1)])) == "r^(1)*L^1"
    assert format_radial(RadialSymbol()) == "0"


def test_classify_examples():
    assert classify_boundedness(R(2)) is BoundednessClass.BOUNDED
    assert classify_boundedness(R(-1)) is BoundednessClass.NEARLY_BOUNDED
    assert classify_boundedness(R(F(-3, 2))) is BoundednessClass.INTEGRABLE_ONLY
    with pytest.raises(ZeroSymbol):
        classify_boundedness(RadialSymbol())


def test_convolve_inverse_pair():
    assert mellin_convolve(R(-1), R(1)) == RadialSymbol.from_pairs([(F(1, 2), -1), (F(-1, 2), 1)])


def test_convolve_equal_exponents_gives_log():
    a = F(3, 2)
    assert mellin_convolve(R(a), R(a)) == RadialSymbol([RadialTerm(a, 1, 1)])


def test_convolve_with_one():
    a = F(5, 3)
    assert mellin_convolve(R(a), RadialSymbol.one()) == (RadialSymbol.one() - R(a)) * (1 / a)


def test_convolve_rejects_logs():
    with pytest.raises(Unsupported):
        mellin_convolve(RadialSymbol([RadialTerm(1, 1, 1)]), R(1))


@pytest.mark.parametrize("a, b, r", [(-1, 1, 0.3), (2, F(1, 2), 0.7), (F(-3, 2), 0, 0.45), (1, 1, 0.2)])
def test_convolve_matches_direct_integration(a, b, r):
    f, g = R(a), R(b)
    direct = mpmath.quad(lambda t: f(float(t)) * g(float(r / t)) / t, [r, 1])
    assert abs(float(direct) - mellin_convolve(f, g)(r)) < 1e-12


# -- properties --------------------------------------------------------------------

exps = st.fractions(min_value=F(-11, 6), max_value=6, max_denominator=6).filter(lambda a: a > -2)
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=12).filter(lambda c: c != 0)
terms = st.builds(RadialTerm, exps, st.integers(0, 2), coeffs)
symbols = st.lists(terms, max_size=4).map(RadialSymbol)
log_free = st.lists(st.builds(RadialTerm, exps, st.just(0), coeffs), max_size=4).map(RadialSymbol)


@settings(max_examples=100)
@given(st.integers(-5, 5), symbols)
def test_format_parse_round_trip(p, phi):
    f = QHSymbol(p, phi)
    text = format_qh(f)
    assert parse_symbol(text) == f
    assert format_qh(parse_symbol(text)) == text


@settings(max_examples=100)
@given(log_free, log_free)
def test_convolution_commutes(f, g):
    assert mellin_convolve(f, g) == mellin_convolve(g, f)


@given(symbols.filter(lambda s: not s.is_zero()), coeffs)
def test_classification_is_scale_invariant(phi, c):
    assert classify_boundedness(phi * c) is classify_boundedness(phi)
