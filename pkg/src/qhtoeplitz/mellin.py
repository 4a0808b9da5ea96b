"""Exact Mellin transform on finite radial symbols, its inverse, and the
rational functions F(z) whose inverse transforms are the commutant
candidates.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import InadmissibleExponent, NotProper
from .exact_algebra import (Polynomial, RationalFunction, format_rational,
                            rf_partial_fractions)
from .symbols import MIN_EXPONENT, RadialSymbol, RadialTerm


@lru_cache(maxsize=4096)
def mellin_transform(phi: RadialSymbol) -> RationalFunction:
    """``int_0^1 phi(r) r^(z-1) dr`` continued to a rational function of z.

    ``r^a ln(1/r)^l`` maps to ``l! / (z + a)^(l + 1)``.
    """
    if phi.is_zero():
        return RationalFunction.zero()
    top: dict[Fraction, int] = {}
    for t in phi.terms:
        top[t.exponent] = max(top.get(t.exponent, 0), t.log_power + 1)
    # common denominator prod (z + a)^top[a]; the factors are distinct
    den = Polynomial.constant(1)
    for a, e in top.items():
        den = den * Polynomial.linear(1, a) ** e
    num = Polynomial()
    for t in phi.terms:
        cofactor = Polynomial.constant(t.coeff * factorial(t.log_power))
        for a, e in top.items():
            power = e - (t.log_power + 1) if a == t.exponent else e
            if power:
                cofactor = cofactor * Polynomial.linear(1, a) ** power
        num = num + cofactor
    return RationalFunction(num, den)


def inverse_mellin(f: RationalFunction) -> RadialSymbol:
    """Radial symbol whose Mellin transform is ``f``.

    A pole of order ``l + 1`` at ``-a`` becomes a term in
    ``r^a ln(1/r)^l``.  ``f`` must be strictly proper.
    """
    if f.is_zero():
        return RadialSymbol()
    if not f.is_proper():
        raise NotProper(f"{f} is not strictly proper")
    pf = rf_partial_fractions(f)
    terms = []
    for pole, mult, coeff in pf.terms:
        exponent = -pole
        if exponent <= MIN_EXPONENT:
            raise InadmissibleExponent(
                f"pole at z = {format_rational(pole)} gives exponent "
                f"{format_rational(exponent)} <= -2")
        ell = mult - 1
        terms.append(RadialTerm(exponent, ell, coeff / factorial(ell)))
    return RadialSymbol(terms)


def build_F_thm2(p: int, s: int, m: int) -> RationalFunction:
    """Gamma ratio ``G(w) G(w+q+m+1) / (G(w+m+1) G(w+q+1))`` with ``w = z/2s``, ``q = p/s``.

    Reduced with ``G(x+1) = x G(x)`` to
    ``prod_{i=1..m} (w+q+i) / prod_{i=0..m} (w+i)``.
    """
    if p < 1 or s < 1 or m < 0:
        raise ValueError("need p, s >= 1 and m >= 0")
    two_s = 2 * s
    inv = Fraction(1, two_s)
    q = Fraction(p, s)
    num = Polynomial.constant(1)
    for i in range(1, m + 1):
        num = num * Polynomial.linear(inv, q + i)
    den = Polynomial.constant(1)
    for i in range(0, m + 1):
        den = den * Polynomial.linear(inv, i)
    return RationalFunction(num, den)


def build_F_thm3(p: int) -> RationalFunction:
    """``1 / (z (z + 2p))``."""
    if p < 1:
        raise ValueError("need p >= 1")
    return RationalFunction(Polynomial.constant(1),
                            Polynomial.x() * Polynomial.linear(1, 2 * p))


def vanishing_on_sequence(f: RationalFunction, p: int, n0: int) -> bool:
    """Does ``f`` vanish at ``p*k + n0`` for every natural ``k``?

    A nonzero rational function has finitely many zeros while the sequence
    is infinite, so this holds exactly when ``f`` is the zero function.
    """
    if p < 1:
        raise ValueError("the step p must be positive")
    return f.is_zero()
