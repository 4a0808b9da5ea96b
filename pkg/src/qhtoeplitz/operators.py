"""Quasihomogeneous Toeplitz operators acting on the harmonic basis.

Basis monomials are labelled by a signed index: ``z^k`` is ``k`` and
``zbar^k`` is ``-k``.  A degree-``p`` operator sends index ``i`` to
``i + p`` times an exact rational weight.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PoleAtEvaluation
from .exact_algebra import ExactMatrix, format_rational
from .mellin import mellin_transform
from .symbols import QHSymbol, RadialSymbol

_BASIS_RE = re.compile(r"^\s*(zbar|z)\s*\^\s*(\d+)\s*$")


@dataclass(frozen=True, order=True)
class BasisVector:
    index: int

    @classmethod
    def z(cls, k: int) -> "BasisVector":
        if k < 0:
            raise ValueError("power must be nonnegative")
        return cls(k)

    @classmethod
    def zbar(cls, k: int) -> "BasisVector":
        if k < 0:
            raise ValueError("power must be nonnegative")
        return cls(-k)

    @classmethod
    def parse(cls, text: str) -> "BasisVector":
        m = _BASIS_RE.match(text)
        if not m:
            raise ValueError(f"not a basis vector (z^k or zbar^k): {text!r}")
        k = int(m.group(2))
        return cls.z(k) if m.group(1) == "z" else cls.zbar(k)

    @property
    def power(self) -> int:
        return abs(self.index)

    @property
    def conjugate(self) -> bool:
        return self.index < 0

    def __str__(self):
        return f"zbar^{-self.index}" if self.index < 0 else f"z^{self.index}"


@dataclass(frozen=True)
class ScaledBasisVector:
    coeff: Fraction
    vec: BasisVector

    def __eq__(self, other):
        if not isinstance(other, ScaledBasisVector):
            return NotImplemented
        if self.coeff == 0 and other.coeff == 0:
            return True
        return self.coeff == other.coeff and self.vec == other.vec

    def __hash__(self):
        return hash((self.coeff, self.vec if self.coeff else None))

    def __str__(self):
        return f"{format_rational(self.coeff)}*{self.vec}"


def _mellin_at(phi: RadialSymbol, x: int, where: str) -> Fraction:
    try:
        return mellin_transform(phi)(x)
    except PoleAtEvaluation:
        raise PoleAtEvaluation(
            f"Mellin transform of {phi} has a pole at {x} (needed for {where})") from None


def apply_qh(f: QHSymbol, v: BasisVector) -> ScaledBasisVector:
    """``T_f`` applied to one basis monomial, in closed form."""
    p, phi = f.degree, f.radial
    k = v.power
    if not v.conjugate:
        if k >= -p:
            c = (2 * k + 2 * p + 2) * _mellin_at(phi, 2 * k + p + 2, str(v))
            out = BasisVector.z(k + p)
        else:
            c = (-2 * k - 2 * p + 2) * _mellin_at(phi, -p + 2, str(v))
            out = BasisVector.zbar(-k - p)
    else:
        if k >= p:
            c = (2 * k - 2 * p + 2) * _mellin_at(phi, 2 * k - p + 2, str(v))
            out = BasisVector.zbar(k - p)
        else:
            c = (2 * p - 2 * k + 2) * _mellin_at(phi, p + 2, str(v))
            out = BasisVector.z(p - k)
    return ScaledBasisVector(Fraction(c), out)


def _compose(outer: QHSymbol, inner: QHSymbol, v: BasisVector) -> ScaledBasisVector:
    w = apply_qh(inner, v)
    u = apply_qh(outer, w.vec)
    return ScaledBasisVector(w.coeff * u.coeff, u.vec)


def commutator_coefficient(f: QHSymbol, g: QHSymbol, v: BasisVector):
    """Return ``(T_f T_g v, T_g T_f v)``; both sit on the same basis vector."""
    return _compose(f, g, v), _compose(g, f, v)


@dataclass
class CommutatorReport:
    kmax: int
    failures: list = field(default_factory=list)

    @property
    def commutes(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "kmax": self.kmax,
            "commutes": self.commutes,
            "failures": [{"index": str(BasisVector(i)), "lhs": str(l), "rhs": str(r)}
                         for i, l, r in self.failures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def signed_range(kmax: int):
    """Signed indices with ``|i| <= kmax`` in the order 0, 1, -1, 2, -2, ..."""
    yield 0
    for k in range(1, kmax + 1):
        yield k
        yield -k


def check_commute_range(f: QHSymbol, g: QHSymbol, kmax: int) -> CommutatorReport:
    report = CommutatorReport(kmax)
    for i in signed_range(kmax):
        lhs, rhs = commutator_coefficient(f, g, BasisVector(i))
        if lhs != rhs:
            report.failures.append((i, lhs, rhs))
    return report


@dataclass
class OperatorMatrix:
    """Truncated matrix of ``T_f`` in the basis ``z^0..z^N, zbar^1..zbar^N``.

    ``out_of_range`` lists the columns whose image falls outside the
    truncation; ``images`` keeps the full image of every column.
    """

    kmax: int
    degree: int
    entries: list  # (from BasisVector, to BasisVector, Fraction)
    out_of_range: list  # BasisVector columns
    images: dict = field(default_factory=dict, repr=False)

    def basis(self) -> list[BasisVector]:
        return ([BasisVector.z(k) for k in range(self.kmax + 1)]
                + [BasisVector.zbar(k) for k in range(1, self.kmax + 1)])

    def to_dict(self) -> dict:
        return {
            "kmax": self.kmax,
            "degree": self.degree,
            "entries": [{"from": str(a), "to": str(b), "coeff": format_rational(c)}
                        for a, b, c in self.entries],
            "out_of_range": [str(v) for v in self.out_of_range],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "OperatorMatrix":
        return cls(
            kmax=int(data["kmax"]),
            degree=int(data["degree"]),
            entries=[(BasisVector.parse(e["from"]), BasisVector.parse(e["to"]), Fraction(e["coeff"]))
                     for e in data["entries"]],
            out_of_range=[BasisVector.parse(s) for s in data["out_of_range"]],
        )

    def dense(self) -> ExactMatrix:
        basis = self.basis()
        pos = {v: i for i, v in enumerate(basis)}
        grid = [[Fraction(0)] * len(basis) for _ in basis]
        for a, b, c in self.entries:
            grid[pos[b]][pos[a]] = c
        return ExactMatrix.from_rows(grid, len(basis))


def operator_matrix(f: QHSymbol, kmax: int) -> OperatorMatrix:
    mat = OperatorMatrix(kmax, f.degree, [], [])
    for v in mat.basis():
        img = apply_qh(f, v)
        mat.images[v] = img
        if img.vec.power > kmax:
            mat.out_of_range.append(v)
        elif img.coeff != 0:
            mat.entries.append((v, img.vec, img.coeff))
    return mat
