"""Radial and quasihomogeneous symbols.

A radial symbol is a finite sum of terms ``c * r**a * ln(1/r)**l`` with
rational ``c`` and ``a`` (``a > -2``, so the term is integrable against
``r dr`` on ``[0, 1]``).  A quasihomogeneous symbol of degree ``p`` is
``e^{i p theta}`` times a radial symbol.

Text form (whitespace is ignored)::

    qh       := [ "E(" integer ")" "*" ] ( radial | "(" radial ")" )
    radial   := [sign] term { sign term }
    term     := [ rational "*" ] mono | rational
    mono     := "r^(" rational ")" [ "*" "L^" integer ]
    rational := integer [ "/" positive-integer ]

``E(p)`` stands for ``e^{i p theta}`` and ``L`` for ``ln(1/r)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from .errors import InadmissibleExponent, SymbolSyntaxError, Unsupported, ZeroSymbol
from .exact_algebra import as_rational, format_rational

MIN_EXPONENT = Fraction(-2)


@dataclass(frozen=True, order=True)
class RadialTerm:
    """``coeff * r**exponent * ln(1/r)**log_power``.

    ``formal=True`` lifts the ``exponent > -2`` restriction; such terms only
    appear in formal candidates and are never integrated.
    """

    exponent: Fraction
    log_power: int
    coeff: Fraction
    formal: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "exponent", as_rational(self.exponent))
        object.__setattr__(self, "coeff", as_rational(self.coeff))
        if not self.formal and self.exponent <= MIN_EXPONENT:
            raise InadmissibleExponent(
                f"exponent {format_rational(self.exponent)} is not > -2")
        if self.log_power < 0:
            raise ValueError("log power must be nonnegative")


class RadialSymbol:
    """Immutable finite sum of :class:`RadialTerm`, kept in canonical order."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[RadialTerm] = ()):
        acc: dict[tuple[Fraction, int], Fraction] = {}
        formal = set()
        for t in terms:
            key = (t.exponent, t.log_power)
            acc[key] = acc.get(key, Fraction(0)) + t.coeff
            if t.formal:
                formal.add(key)
        self.terms: tuple[RadialTerm, ...] = tuple(
            RadialTerm(a, l, c, (a, l) in formal) for (a, l), c in sorted(acc.items()) if c != 0)

    @classmethod
    def monomial(cls, exponent, coeff=1, log_power: int = 0) -> "RadialSymbol":
        return cls([RadialTerm(as_rational(exponent), log_power, as_rational(coeff))])

    @classmethod
    def one(cls) -> "RadialSymbol":
        return cls.monomial(0)

    @classmethod
    def from_pairs(cls, pairs, formal: bool = False) -> "RadialSymbol":
        """Build from ``[(coeff, exponent), ...]`` with no log factors."""
        return cls(RadialTerm(as_rational(a), 0, as_rational(c), formal) for c, a in pairs)

    def is_formal(self) -> bool:
        return any(t.exponent <= MIN_EXPONENT for t in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_log_free(self) -> bool:
        return all(t.log_power == 0 for t in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.terms[0].log_power == 0

    @property
    def min_exponent(self) -> Fraction:
        if not self.terms:
            raise ZeroSymbol("the zero symbol has no exponents")
        return min(t.exponent for t in self.terms)

    def __eq__(self, other):
        if not isinstance(other, RadialSymbol):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other: "RadialSymbol") -> "RadialSymbol":
        return RadialSymbol(self.terms + other.terms)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar) -> "RadialSymbol":
        c = as_rational(scalar)
        return RadialSymbol(replace(t, coeff=t.coeff * c) for t in self.terms)

    __rmul__ = __mul__

    def shift(self, a) -> "RadialSymbol":
        """Multiply by ``r**a``."""
        a = as_rational(a)
        return RadialSymbol(replace(t, exponent=t.exponent + a) for t in self.terms)

    def __call__(self, r: float) -> float:
        lg = -math.log(r)
        return sum(float(t.coeff) * r ** float(t.exponent) * lg ** t.log_power for t in self.terms)

    def __repr__(self):
        return f"RadialSymbol({format_radial(self)!r})"

    def __str__(self):
        return format_radial(self)


@dataclass(frozen=True)
class QHSymbol:
    """``e^{i degree theta} * radial(r)``."""

    degree: int
    radial: RadialSymbol

    def __str__(self):
        return format_qh(self)


class BoundednessClass(enum.Enum):
    BOUNDED = "BoundedSymbol"
    NEARLY_BOUNDED = "NearlyBounded"
    INTEGRABLE_ONLY = "IntegrableOnly"

    def __str__(self):
        return self.value


def classify_boundedness(phi: RadialSymbol) -> BoundednessClass:
    """Label a symbol by its smallest exponent.

    This is a heuristic: ``r**a`` with ``-1 <= a < 0`` is unbounded but of
    the nearly bounded kind, below ``-1`` it is only integrable.
    """
    if phi.is_zero():
        raise ZeroSymbol("cannot classify the zero symbol")
    a = phi.min_exponent
    if a >= 0:
        return BoundednessClass.BOUNDED
    if a >= -1:
        return BoundednessClass.NEARLY_BOUNDED
    return BoundednessClass.INTEGRABLE_ONLY


def mellin_convolve(f: RadialSymbol, g: RadialSymbol) -> RadialSymbol:
    """Closed-form ``(f *_M g)(r) = int_0^1 f(t) g(r/t) dt/t`` for log-free inputs."""
    if not (f.is_log_free() and g.is_log_free()):
        raise Unsupported("Mellin convolution is only implemented for log-free symbols")
    out = []
    for s in f.terms:
        for t in g.terms:
            c = s.coeff * t.coeff
            a, b = s.exponent, t.exponent
            if a == b:
                out.append(RadialTerm(a, 1, c))
            else:
                # r^a * r^b = (r^b - r^a) / (a - b)
                out.append(RadialTerm(b, 0, c / (a - b)))
                out.append(RadialTerm(a, 0, -c / (a - b)))
    return RadialSymbol(out)


# -- formatting --------------------------------------------------------------

def _format_term_body(t: RadialTerm, coeff: Fraction) -> str:
    if t.exponent == 0 and t.log_power == 0:
        return format_rational(coeff)
    mono = f"r^({format_rational(t.exponent)})"
    if t.log_power:
        mono += f"*L^{t.log_power}"
    if coeff == 1:
        return mono
    return f"{format_rational(coeff)}*{mono}"


def format_radial(phi: RadialSymbol) -> str:
    if phi.is_zero():
        return "0"
    out = ""
    for i, t in enumerate(phi.terms):
        body = _format_term_body(t, abs(t.coeff))
        if i == 0:
            out = ("-" if t.coeff < 0 else "") + body
        else:
            out += (" - " if t.coeff < 0 else " + ") + body
    return out


def format_qh(f: QHSymbol) -> str:
    radial = format_radial(f.radial)
    if f.degree == 0:
        return radial
    if len(f.radial.terms) > 1 or radial.startswith("-"):
        radial = f"({radial})"
    return f"E({f.degree})*{radial}"


# -- parsing -------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, formal: bool = False):
        self.text = text
        self.pos = 0
        self.formal = formal

    def error(self, message: str, pos: int | None = None):
        raise SymbolSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, s: str) -> bool:
        self.skip()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.accept(s):
            self.error(f"expected {s!r}")

    def digits(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected digits")
        return int(self.text[start:self.pos])

    def integer(self) -> int:
        sign = 1
        if self.accept("-"):
            sign = -1
        elif self.accept("+"):
            pass
        return sign * self.digits()

    def rational(self, signed: bool = False) -> Fraction:
        num = self.integer() if signed else self.digits()
        if self.accept("/"):
            at = self.pos
            den = self.digits()
            if den == 0:
                self.error("zero denominator", at)
            return Fraction(num, den)
        return Fraction(num)

    def mono(self, coeff: Fraction) -> RadialTerm:
        start = self.pos
        self.expect("r")
        self.expect("^")
        self.expect("(")
        exponent = self.rational(signed=True)
        self.expect(")")
        log_power = 0
        save = self.pos
        if self.accept("*"):
            if self.accept("L"):
                self.expect("^")
                log_power = self.digits()
            else:
                self.pos = save
        try:
            return RadialTerm(exponent, log_power, coeff, self.formal)
        except InadmissibleExponent as exc:
            raise InadmissibleExponent(f"{exc} at position {start}: {self.text!r}") from None

    def term(self, sign: int) -> RadialTerm | None:
        if self.peek() == "r":
            return self.mono(Fraction(sign))
        if not self.peek().isdigit():
            self.error("expected a term")
        c = sign * self.rational()
        if self.accept("*"):
            return self.mono(c)
        return RadialTerm(Fraction(0), 0, c) if c else None

    def radial(self) -> RadialSymbol:
        terms = []
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        while True:
            t = self.term(sign)
            if t is not None:
                terms.append(t)
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return RadialSymbol(terms)

    def qh(self) -> QHSymbol:
        degree = 0
        if self.accept("E"):
            self.expect("(")
            degree = self.integer()
            self.expect(")")
            self.expect("*")
        if self.accept("("):
            radial = self.radial()
            self.expect(")")
        else:
            radial = self.radial()
        if self.peek():
            self.error("unexpected trailing input")
        return QHSymbol(degree, radial)


def parse_symbol(text: str, formal: bool = False) -> QHSymbol:
    """Parse the text form of a quasihomogeneous symbol.

    With ``formal=True`` exponents <= -2 are accepted instead of raising
    InadmissibleExponent.
    """
    return _Parser(text, formal).qh()


def parse_radial(text: str, formal: bool = False) -> RadialSymbol:
    """Parse a radial symbol; an ``E(p)`` prefix other than ``E(0)`` is rejected."""
    f = parse_symbol(text, formal)
    if f.degree != 0:
        raise SymbolSyntaxError("expected a radial symbol without E(p)", text, 0)
    return f.radial
