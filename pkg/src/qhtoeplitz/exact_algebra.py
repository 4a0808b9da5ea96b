"""Exact arithmetic over Q: polynomials, rational functions, partial
fractions and null spaces of small dense matrices.

Scalars are :class:`fractions.Fraction` throughout.  Polynomials store
their coefficients lowest degree first; the zero polynomial has an empty
coefficient tuple and degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import DivisionByZero, PoleAtEvaluation, UnsupportedPole

Rational = Fraction


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """Exact string form: ``"3"`` or ``"-4/7"``."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def linear(cls, a, b) -> "Polynomial":
        """The polynomial ``a*z + b``."""
        return cls((b, a))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = Polynomial.constant(other)
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = format_rational(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(as_rational(other))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_rational(other)
            return Polynomial(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.lead
        if len(rem) - 1 < dd:
            return Polynomial(), Polynomial(rem)
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1 - dd, -1, -1):
            c = rem[i + dd] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def compose_linear(self, a, b) -> "Polynomial":
        """Return ``self(a*z + b)``."""
        inner = Polynomial.linear(a, b)
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def integer_primitive(self) -> list[int]:
        """Integer coefficients of the same polynomial scaled to content 1."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return [v // g for v in ints]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


_ENUMERATION_LIMIT = 10**8


def _root_candidates(p: Polynomial) -> set[Fraction]:
    """Superset of the rational roots of ``p`` (``p(0) != 0``).

    Small constant terms use the rational root theorem directly.  Otherwise
    the distinct roots are located numerically on the square-free part and
    snapped to ``num/den`` with ``den`` dividing the leading coefficient (or,
    for a huge leading coefficient, to nearby fractions of small height).
    Every candidate is verified exactly by the caller.
    """
    sqfree = p // poly_gcd(p, p.derivative())
    ints = sqfree.integer_primitive()
    lead_divs = _divisors(ints[-1]) if abs(ints[-1]) <= _ENUMERATION_LIMIT else None
    if abs(ints[0]) <= _ENUMERATION_LIMIT and lead_divs is not None:
        return {Fraction(sign * num, den) for num in _divisors(ints[0])
                for den in lead_divs for sign in (1, -1)}
    import numpy as np

    out = set()
    for x in np.roots([float(c) for c in reversed(ints)]):
        if abs(x.imag) > 1e-6 * (1 + abs(x)):
            continue
        if lead_divs is None:
            out.update(Fraction(x.real).limit_denominator(10**e) for e in range(7))
        else:
            out.update(Fraction(round(x.real * den), den) for den in lead_divs)
    return out


def rational_roots(p: Polynomial) -> tuple[list[tuple[Fraction, int]], Polynomial]:
    """Split off all rational roots of ``p``.

    Returns ``([(root, multiplicity), ...], cofactor)`` where the cofactor has
    no rational roots.  Roots come back in increasing order.
    """
    if p.is_zero():
        raise DivisionByZero("zero polynomial has no finite root set")
    found: dict[Fraction, int] = {}
    rest = p
    while rest.degree >= 1 and rest.coeffs[0] == 0:
        found[Fraction(0)] = found.get(Fraction(0), 0) + 1
        rest = Polynomial(rest.coeffs[1:])
    if rest.degree >= 1:
        for cand in sorted(_root_candidates(rest)):
            if rest.degree < 1:
                break
            lin = Polynomial.linear(1, -cand)
            while rest.degree >= 1:
                q, r = divmod(rest, lin)
                if not r.is_zero():
                    break
                found[cand] = found.get(cand, 0) + 1
                rest = q
    return sorted(found.items()), rest


class RationalFunction:
    """Quotient ``num/den`` kept in canonical form: coprime, monic ``den``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Polynomial._coerce(num)
        den = Polynomial.constant(1) if den is None else Polynomial._coerce(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Polynomial(), Polynomial.constant(1)
            return
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        lead = den.lead
        self.num = num * (1 / lead)
        self.den = den * (1 / lead)

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(Polynomial())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction, Polynomial)):
                other = RationalFunction(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "z") -> str:
        n = self.num.format(var)
        if self.den.degree == 0:
            return n
        if len([c for c in self.num.coeffs if c]) > 1:
            n = f"({n})"
        d = self.den.format(var)
        if len([c for c in self.den.coeffs if c]) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    @staticmethod
    def _coerce(other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(other)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise PoleAtEvaluation(f"{self} has a pole at z = {x}")
        return self.num(x) / d

    def is_proper(self) -> bool:
        return self.num.degree < self.den.degree

    def compose_linear(self, a, b) -> "RationalFunction":
        """Return ``self(a*z + b)``."""
        return RationalFunction(self.num.compose_linear(a, b), self.den.compose_linear(a, b))


def rf_reduce(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Canonical rational function ``num/den``; raises DivisionByZero on a zero denominator."""
    return RationalFunction(num, den)


@dataclass(frozen=True)
class PartialFractions:
    """``polynomial_part + sum(coefficient / (z - pole)**multiplicity)``."""

    polynomial_part: Polynomial
    terms: tuple[tuple[Fraction, int, Fraction], ...]

    def recombine(self) -> RationalFunction:
        acc = RationalFunction(self.polynomial_part)
        for pole, mult, coeff in self.terms:
            acc = acc + RationalFunction(Polynomial.constant(coeff),
                                         Polynomial.linear(1, -pole) ** mult)
        return acc

    def __str__(self):
        pieces = []
        if not self.polynomial_part.is_zero():
            pieces.append(str(self.polynomial_part))
        for pole, mult, coeff in self.terms:
            base = str(Polynomial.linear(1, -pole))
            if base != "z":
                base = f"({base})"
            if mult > 1:
                base = f"{base}^{mult}"
            pieces.append(f"{format_rational(coeff)}/{base}")
        return " + ".join(pieces) if pieces else "0"


def _series_quotient(num: list[Fraction], den: list[Fraction], order: int) -> list[Fraction]:
    """First ``order`` Taylor coefficients of num/den (den[0] != 0)."""
    out = []
    for t in range(order):
        acc = num[t] if t < len(num) else Fraction(0)
        for i in range(1, min(t, len(den) - 1) + 1):
            acc -= den[i] * out[t - i]
        out.append(acc / den[0])
    return out


def rf_partial_fractions(f: RationalFunction) -> PartialFractions:
    """Exact decomposition over rational poles.

    Raises UnsupportedPole if the denominator has an irreducible factor of
    degree >= 2 over Q.
    """
    poly_part, rem = divmod(f.num, f.den)
    roots, rest = rational_roots(f.den)
    if rest.degree >= 1:
        raise UnsupportedPole(rest.monic())
    terms = []
    for pole, mult in roots:
        cofactor = f.den // (Polynomial.linear(1, -pole) ** mult)
        shifted_num = rem.compose_linear(1, pole).coeffs
        shifted_den = cofactor.compose_linear(1, pole).coeffs
        series = _series_quotient(list(shifted_num), list(shifted_den), mult)
        for t, coeff in enumerate(series):
            if coeff != 0:
                terms.append((pole, mult - t, coeff))
    terms.sort(key=lambda t: (t[0], t[1]))
    return PartialFractions(poly_part, tuple(terms))


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        grid = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        return cls(len(grid), cols, grid)

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        v = [as_rational(x) for x in vec]
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.entries)

    def rank(self) -> int:
        return len(rref(self.entries)[1])

    def __str__(self):
        return "\n".join("[" + ", ".join(format_rational(x) for x in r) + "]"
                         for r in self.entries)


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[as_rational(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_basis(A: ExactMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the null space of ``A``, itself in reduced row echelon form.

    Each returned vector has leading (first nonzero) coordinate 1, which makes
    the basis unique.  An empty list means the kernel is trivial.
    """
    reduced, pivots = rref(A.entries)
    free = [c for c in range(A.cols) if c not in pivots]
    raw = []
    for f in free:
        v = [Fraction(0)] * A.cols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        raw.append(v)
    basis, _ = rref(raw)
    return [tuple(v) for v in basis]
