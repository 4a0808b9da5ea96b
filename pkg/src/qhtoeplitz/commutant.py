"""Commutant computations for ``T_{E(p) phi}`` against ``T_{E(-s) psi}``.

The unknown ``phi`` ranges over a finite ansatz ``sum c_j r^{a_j}``.  The
commutation relation is imposed on every basis vector: both compositions
are expanded symbolically in the basis power ``k`` using the four-branch
action formula, the ``k`` axis is split wherever a branch changes, and

* each bounded piece contributes one linear equation per ``k``;
* each unbounded piece is a rational identity in ``k``: denominators are
  cleared and the coefficient of every power of ``k`` must vanish.

The result is a finite exact linear system in the ``c_j``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import (InadmissibleExponent, NoAdmissibleSolution, NotProper, PoleAtEvaluation,
                     Unsupported, UnsupportedPole)
from .exact_algebra import (ExactMatrix, Polynomial, RationalFunction, format_rational,
                            kernel_basis, poly_gcd, rational_roots, rf_partial_fractions, rref)
from .mellin import build_F_thm2, inverse_mellin, mellin_transform
from .operators import check_commute_range
from .symbols import (MIN_EXPONENT, BoundednessClass, QHSymbol, RadialSymbol, RadialTerm,
                      classify_boundedness, format_radial, mellin_convolve, parse_radial)

INF = math.inf


@dataclass(frozen=True)
class Ansatz:
    exponents: tuple[Fraction, ...]

    def __post_init__(self):
        exps = tuple(sorted(Fraction(a) for a in self.exponents))
        if len(set(exps)) != len(exps):
            raise ValueError("ansatz exponents must be distinct")
        for a in exps:
            if a <= MIN_EXPONENT:
                raise InadmissibleExponent(f"ansatz exponent {format_rational(a)} is not > -2")
        object.__setattr__(self, "exponents", exps)

    def __len__(self):
        return len(self.exponents)

    def columns(self) -> list[RadialSymbol]:
        return [RadialSymbol.monomial(a) for a in self.exponents]

    def symbol(self, coeffs: Sequence) -> RadialSymbol:
        return RadialSymbol(RadialTerm(a, 0, Fraction(c)) for a, c in zip(self.exponents, coeffs))

    def coordinates(self, phi: RadialSymbol) -> tuple[Fraction, ...] | None:
        """Coefficients of ``phi`` in this ansatz, or None if it is not in the span."""
        coords = {a: Fraction(0) for a in self.exponents}
        for t in phi.terms:
            if t.log_power or t.exponent not in coords:
                return None
            coords[t.exponent] = t.coeff
        return tuple(coords[a] for a in self.exponents)


def normalize_ray(phi: RadialSymbol) -> RadialSymbol:
    """Scale to integer coefficients with content 1 and a positive first term."""
    if phi.is_zero():
        return phi
    den = 1
    for t in phi.terms:
        den = den * t.coeff.denominator // gcd(den, t.coeff.denominator)
    ints = [int(t.coeff * den) for t in phi.terms]
    g = 0
    for v in ints:
        g = gcd(g, v)
    scale = Fraction(den, g)
    if phi.terms[0].coeff < 0:
        scale = -scale
    return phi * scale


def proportional(a: RadialSymbol, b: RadialSymbol) -> bool:
    """True when ``a = c * b`` for some nonzero rational ``c``."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return normalize_ray(a) == normalize_ray(b)


# -- symbolic branch expansion ---------------------------------------------------

# Branches of the basis action for degree p, as intervals of the signed input
# index i with linear prefactor u*i + v and Mellin argument a*i + b.
def _branches(p: int):
    return [
        ("z,k>=-p", max(0, -p), INF, (2, 2 * p + 2), (2, p + 2)),
        ("z,k<-p", 0, -p - 1, (-2, -2 * p + 2), (0, -p + 2)),
        ("zbar,k>=p", -INF, min(-1, -p), (-2, -2 * p + 2), (-2, -p + 2)),
        ("zbar,k<p", -p + 1, -1, (2, 2 * p + 2), (0, p + 2)),
    ]


@dataclass(frozen=True)
class _Factor:
    which: str  # "f" (unknown phi) or "g" (known psi)
    pre: tuple[int, int]  # pre(k) = pre[0]*k + pre[1]
    arg: tuple[int, int]  # Mellin argument a*k + b


def _k_interval(sigma: int, offset: int, ilo, ihi):
    if sigma == 1:
        return ilo - offset, ihi - offset
    return offset - ihi, offset - ilo


def _expand(p: int, which: str, sigma: int, offset: int, lo, hi):
    """Split [lo, hi] in k by the branch applied to index sigma*k + offset."""
    out = []
    for name, ilo, ihi, (u, v), (a, b) in _branches(p):
        klo, khi = _k_interval(sigma, offset, ilo, ihi)
        nlo, nhi = max(lo, klo), min(hi, khi)
        if nlo > nhi:
            continue
        pre = (u * sigma, u * offset + v)
        arg = (a * sigma, a * offset + b)
        out.append(((nlo, nhi), f"{which}[{name}]", _Factor(which, pre, arg), (sigma, offset + p)))
    return out


def _compose(outer: tuple[int, str], inner: tuple[int, str], sigma: int, lo, hi):
    pieces = []
    for (ilo, ihi), n1, f1, (s1, o1) in _expand(inner[0], inner[1], sigma, 0, lo, hi):
        for (jlo, jhi), n2, f2, _ in _expand(outer[0], outer[1], s1, o1, ilo, ihi):
            pieces.append(((jlo, jhi), f"{n2}.{n1}", (f1, f2)))
    return pieces


@dataclass(frozen=True)
class RowTag:
    family: str  # "z^k" or "zbar^k"
    k_range: tuple
    lhs: str  # branches used by T_f T_g
    rhs: str  # branches used by T_g T_f
    k: int | None = None  # set for bounded pieces
    power: int | None = None  # set for unbounded pieces

    def __str__(self):
        lo, hi = self.k_range
        rng = f"{lo}<=k<={hi}" if hi != INF else f"k>={lo}"
        where = f"k={self.k}" if self.k is not None else f"coeff of k^{self.power}"
        return f"{self.family} [{rng}] {self.lhs} vs {self.rhs}: {where}"


@dataclass
class ConstraintSystem:
    ansatz: Ansatz
    matrix: ExactMatrix
    tags: list[RowTag]

    def rows(self):
        return list(zip(self.tags, self.matrix.entries))


class _Transforms:
    def __init__(self, psi: RadialSymbol, ansatz: Ansatz):
        self.psi_hat = mellin_transform(psi)
        self.phi_hats = [mellin_transform(c) for c in ansatz.columns()]

    def hats(self, which: str):
        return [self.psi_hat] if which == "g" else self.phi_hats

    def value(self, fac: _Factor, k: int, where: str) -> list[Fraction]:
        x = fac.arg[0] * k + fac.arg[1]
        pre = fac.pre[0] * k + fac.pre[1]
        out = []
        for h in self.hats(fac.which):
            try:
                out.append(pre * h(x))
            except PoleAtEvaluation:
                raise PoleAtEvaluation(f"pole at Mellin argument {x} ({where}, k={k})") from None
        return out

    def function(self, fac: _Factor, lo, hi, where: str) -> list[RationalFunction]:
        a, b = fac.arg
        out = []
        for h in self.hats(fac.which):
            for pole_z in _rational_zeros(h.den):
                if a == 0:
                    if b == pole_z:
                        raise PoleAtEvaluation(f"pole at Mellin argument {b} ({where})")
                    continue
                k = (pole_z - b) / a
                if k.denominator == 1 and lo <= k <= hi:
                    raise PoleAtEvaluation(f"pole at Mellin argument {pole_z} ({where}, k={k})")
            out.append(RationalFunction(Polynomial.linear(*fac.pre)) * h.compose_linear(a, b))
        return out


def _rational_zeros(p: Polynomial) -> list[Fraction]:
    if p.degree < 1:
        return []
    return [r for r, _ in rational_roots(p)[0]]


def _path_values(tr: _Transforms, factors, k: int, where: str) -> list[Fraction]:
    f_vals, g_val = None, None
    for fac in factors:
        if fac.which == "f":
            f_vals = tr.value(fac, k, where)
        else:
            g_val = tr.value(fac, k, where)[0]
    return [v * g_val for v in f_vals]


def _path_functions(tr: _Transforms, factors, lo, hi, where: str) -> list[RationalFunction]:
    f_fns, g_fn = None, None
    for fac in factors:
        if fac.which == "f":
            f_fns = tr.function(fac, lo, hi, where)
        else:
            g_fn = tr.function(fac, lo, hi, where)[0]
    return [v * g_fn for v in f_fns]


def generate_constraints(p: int, s: int, psi: RadialSymbol, ansatz: Ansatz) -> ConstraintSystem:
    """Exact linear conditions on the ansatz coefficients for
    ``T_{E(p) phi} T_{E(-s) psi} = T_{E(-s) psi} T_{E(p) phi}``."""
    if p < 1 or s < 1:
        raise ValueError("p and s must be positive")
    tr = _Transforms(psi, ansatz)
    f_op, g_op = (p, "f"), (-s, "g")
    rows: list[list[Fraction]] = []
    tags: list[RowTag] = []
    for family, sigma, start in (("z^k", 1, 0), ("zbar^k", -1, 1)):
        lhs_pieces = _compose(f_op, g_op, sigma, start, INF)
        rhs_pieces = _compose(g_op, f_op, sigma, start, INF)
        for (llo, lhi), lname, lfac in lhs_pieces:
            for (rlo, rhi), rname, rfac in rhs_pieces:
                lo, hi = max(llo, rlo), min(lhi, rhi)
                if lo > hi:
                    continue
                lo = int(lo)
                rng = (lo, hi if hi == INF else int(hi))
                where = f"{family} {lname} vs {rname}"
                if hi != INF:
                    for k in range(lo, int(hi) + 1):
                        lv = _path_values(tr, lfac, k, where)
                        rv = _path_values(tr, rfac, k, where)
                        rows.append([x - y for x, y in zip(lv, rv)])
                        tags.append(RowTag(family, rng, lname, rname, k=k))
                    continue
                lf = _path_functions(tr, lfac, lo, hi, where)
                rf = _path_functions(tr, rfac, lo, hi, where)
                diffs = [x - y for x, y in zip(lf, rf)]
                common = Polynomial.constant(1)
                for d in diffs:
                    common = common * d.den // poly_gcd(common, d.den)
                polys = [d.num * (common // d.den) for d in diffs]
                top = max((q.degree for q in polys), default=-1)
                for i in range(top + 1):
                    rows.append([q.coeffs[i] if i <= q.degree else Fraction(0) for q in polys])
                    tags.append(RowTag(family, rng, lname, rname, power=i))
    return ConstraintSystem(ansatz, ExactMatrix.from_rows(rows, len(ansatz)), tags)


# -- transcribed identities (cross-check) ---------------------------------------

def quoted_identities(p: int, s: int, psi: RadialSymbol, ansatz: Ansatz, k_limit: int = 12):
    """The pointwise commutation identities in their textbook closed form.

    Returns ``[(label, k, row)]`` with each row linear in the ansatz
    coefficients; unbounded families are sampled for ``k <= k_limit``.
    These are kept independent of :func:`generate_constraints` so the two can
    be compared.
    """
    ph = [mellin_transform(c) for c in ansatz.columns()]
    gh = mellin_transform(psi)
    out = []

    def add(label, k, row):
        out.append((label, k, [Fraction(x) for x in row]))

    for k in range(0, abs(s - p) + 1):
        if p <= s:
            add("phi only, k<=|s-p|", k, [(k + p + 1) * h(2 * k + p + 2)
                                         - (s - k + 1) * h(2 * s - 2 * k - p + 2) for h in ph])
        else:
            d = (k + s + 1) * gh(2 * k + s + 2) - (p - k + 1) * gh(2 * p - 2 * k - s + 2)
            add("psi only, k<=|s-p|", k, [d * h(p + 2) for h in ph])
    for k in range(max(0, s - p), s):
        add("z^k, max(0,s-p)<=k<s", k, [(k + p + 1) * h(2 * k + p + 2) * gh(2 * k + 2 * p - s + 2)
                                        - (s - k + 1) * h(p + 2) * gh(s + 2) for h in ph])
    for k in range(max(0, p - s), p):
        add("zbar^k, max(0,p-s)<=k<p", k, [(k + s + 1) * h(2 * k + 2 * s - p + 2) * gh(2 * k + s + 2)
                                           - (p - k + 1) * h(p + 2) * gh(s + 2) for h in ph])
    for k in range(s, max(s, k_limit) + 1):
        add("z^k, k>=s", k, [(k + p + 1) * h(2 * k + p + 2) * gh(2 * k + 2 * p - s + 2)
                             - (k - s + 1) * h(2 * k - 2 * s + p + 2) * gh(2 * k - s + 2) for h in ph])
    for k in range(p, max(p, k_limit) + 1):
        add("zbar^k, k>=p", k, [(k - p + 1) * h(2 * k - p + 2) * gh(2 * k - 2 * p + s + 2)
                                - (k + s + 1) * h(2 * k + 2 * s - p + 2) * gh(2 * k + s + 2) for h in ph])
    return out


def _in_span(basis_rows, row) -> bool:
    if not any(row):
        return True
    if not basis_rows:
        return False
    return len(rref(list(basis_rows) + [row])[1]) == len(rref(basis_rows)[1])


def transcription_mismatches(p: int, s: int, psi: RadialSymbol, ansatz: Ansatz,
                             k_limit: int = 12) -> list[str]:
    """Compare generated constraints with :func:`quoted_identities` both ways.

    Every quoted identity must follow from the generated system, and every
    generated bounded-``k`` row must follow from the quoted identities.
    Returns human-readable descriptions of the rows that do not.
    """
    system = generate_constraints(p, s, psi, ansatz)
    generated = [list(r) for r in system.matrix.entries]
    quoted = quoted_identities(p, s, psi, ansatz, k_limit)
    quoted_rows = [row for _, _, row in quoted]
    problems = []
    for label, k, row in quoted:
        if not _in_span(generated, row):
            problems.append(f"quoted identity not implied: {label} at k={k}")
    for tag, row in system.rows():
        if tag.k is not None and not _in_span(quoted_rows, list(row)):
            problems.append(f"generated row not covered: {tag}")
    return problems


# -- commutant pipelines -----------------------------------------------------------

def candidate_from_F(p: int, s: int, m: int) -> RadialSymbol:
    """``sum_j a_j r^{2js - p}`` from the residues ``a_j`` of F at ``-2js``.

    For ``p >= 2`` the leading term is not integrable; the result is then a
    formal symbol (diagnostic in :func:`solve_commutant`).
    """
    pf = rf_partial_fractions(build_F_thm2(p, s, m))
    pairs = []
    for pole, mult, coeff in pf.terms:
        if mult != 1:
            raise Unsupported("F has a repeated pole")
        pairs.append((coeff, -pole - p))
    return normalize_ray(RadialSymbol.from_pairs(pairs, formal=p >= 2))


def system_S_matrix(s: int, m: int) -> ExactMatrix:
    """``a_kj = (k+2)/(2k+2js+2) - (s-k+1)/(2s-2k+2js)`` for ``0<=k<s``, ``0<=j<=m``."""
    rows = [[Fraction(k + 2, 2 * k + 2 * j * s + 2) - Fraction(s - k + 1, 2 * s - 2 * k + 2 * j * s)
             for j in range(m + 1)] for k in range(s)]
    return ExactMatrix.from_rows(rows, m + 1)


@dataclass
class CommutantResult:
    p: int
    s: int
    m: int
    n: int
    ansatz: Ansatz
    kernel: list[RadialSymbol]
    candidate_from_F: RadialSymbol | None
    candidate_consistent: bool
    boundedness_note: list[BoundednessClass]
    diagnostics: list[str] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel)

    def to_dict(self) -> dict:
        return {
            "p": self.p, "s": self.s, "m": self.m, "n": self.n,
            "ansatz": [format_rational(a) for a in self.ansatz.exponents],
            "kernel": [format_radial(k) for k in self.kernel],
            "candidate": format_radial(self.candidate_from_F) if self.candidate_from_F is not None else None,
            "consistent": self.candidate_consistent,
            "boundedness": [str(b) for b in self.boundedness_note],
            "diagnostics": list(self.diagnostics),
            "findings": list(self.findings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "CommutantResult":
        cand = d.get("candidate")
        return cls(
            p=d["p"], s=d["s"], m=d["m"], n=d["n"],
            ansatz=Ansatz(tuple(Fraction(a) for a in d["ansatz"])),
            kernel=[parse_radial(k) for k in d["kernel"]],
            candidate_from_F=parse_radial(cand, formal=True) if cand is not None else None,
            candidate_consistent=bool(d["consistent"]),
            boundedness_note=[BoundednessClass(b) for b in d.get("boundedness", [])],
            diagnostics=list(d.get("diagnostics", [])),
            findings=list(d.get("findings", [])),
        )


def solve_commutant(p: int, s: int, m: int, verify_kmax: int = 64) -> CommutantResult:
    """Exact commutant of ``T_{E(-s) r^n}``, ``n = (2m+1)s``, among
    ``T_{E(p) phi}`` with ``phi`` in ``span{r^{2js-p} : j = 0..m}``."""
    if p < 1 or s < 1 or m < 0:
        raise ValueError("need p, s >= 1 and m >= 0")
    n = (2 * m + 1) * s
    psi = RadialSymbol.monomial(n)
    diagnostics: list[str] = []
    findings: list[str] = []
    exps = []
    for j in range(m + 1):
        a = Fraction(2 * j * s - p)
        if a <= MIN_EXPONENT:
            diagnostics.append(f"dropped inadmissible ansatz exponent {format_rational(a)} (j={j})")
        else:
            exps.append(a)
    if p != 1:
        diagnostics.append(f"leading term r^(-{p}) is integrable only for p = 1; here p = {p}")
    ansatz = Ansatz(tuple(exps))

    kernel: list[RadialSymbol] = []
    if len(ansatz):
        system = generate_constraints(p, s, psi, ansatz)
        basis = kernel_basis(system.matrix)
        kernel = [normalize_ray(ansatz.symbol(v)) for v in basis]
        diagnostics.append(f"constraint system: {system.matrix.rows} rows, rank {system.matrix.rank()}, "
                           f"kernel dimension {len(kernel)}")
    else:
        basis = []
        diagnostics.append("empty ansatz: no admissible exponents")

    g = QHSymbol(-s, psi)
    for phi in kernel:
        rep = check_commute_range(QHSymbol(p, phi), g, verify_kmax)
        diagnostics.append(f"kernel member {format_radial(phi)}: commutes up to |k|<={verify_kmax}: {rep.commutes}")
        if not rep.commutes:
            findings.append(f"kernel member {format_radial(phi)} fails the basis-wise check")

    candidate = candidate_from_F(p, s, m)
    coords = ansatz.coordinates(candidate) if p == 1 else None
    if coords is None:
        consistent = False
        diagnostics.append(f"candidate {format_radial(candidate)} is outside the admissible ansatz")
    else:
        consistent = _in_span([list(v) for v in basis], list(coords))
        diagnostics.append(f"candidate {format_radial(candidate)} in kernel span: {consistent}")

    if p == 1 and s >= 2:
        A = system_S_matrix(s, m)
        rank = A.rank()
        diagnostics.append(f"system S: {s}x{m + 1}, rank {rank}")
        if rank < s:
            findings.append(f"system S rows are linearly dependent (rank {rank} < {s})")
        if coords is not None and any(A.apply(coords)):
            findings.append("F-candidate does not satisfy system S")
        for phi in kernel:
            if any(A.apply(ansatz.coordinates(phi))):
                findings.append(f"kernel member {format_radial(phi)} violates system S")

    expected_nontrivial = _claimed_nontrivial(p, s, m)
    if expected_nontrivial is not None and (len(kernel) > 0) != expected_nontrivial:
        findings.append(
            f"exact kernel dimension {len(kernel)} disagrees with the stated conclusion "
            f"({'nontrivial' if expected_nontrivial else 'trivial'} commutant expected)")
    if len(kernel) >= 2:
        findings.append(f"kernel dimension {len(kernel)} >= 2 contradicts uniqueness up to scale")

    return CommutantResult(p, s, m, n, ansatz, kernel, candidate, consistent,
                           [classify_boundedness(k) for k in kernel], diagnostics, findings)


def _claimed_nontrivial(p: int, s: int, m: int) -> bool | None:
    if p >= s:
        return p == 1 and s == 1
    if p == 1:
        return s <= m + 1
    return False


def solve_convolution_equation(p: int, psi: RadialSymbol, C=Fraction(1, 2)) -> RadialSymbol:
    """Solve ``phi *_M psi = C (r^-p - r^p)`` for ``phi`` (admissible only when ``p = 1``)."""
    if p < 1:
        raise ValueError("p must be positive")
    if p > 1:
        raise NoAdmissibleSolution(f"r^(-{p}) - r^({p}) is not integrable for p = {p}")
    if psi.is_zero():
        raise NoAdmissibleSolution("psi must be nonzero")
    target = RadialSymbol.from_pairs([(C, -p), (-C, p)])
    try:
        phi = inverse_mellin(mellin_transform(target) / mellin_transform(psi))
    except (NotProper, InadmissibleExponent, UnsupportedPole) as exc:
        raise NoAdmissibleSolution(str(exc)) from None
    if phi.is_log_free() and psi.is_log_free():
        ok = mellin_convolve(phi, psi) == target
    else:
        ok = mellin_transform(phi) * mellin_transform(psi) == mellin_transform(target)
    if not ok:
        raise NoAdmissibleSolution("solution failed verification")
    return phi


def check_eq22(p: int, s: int, n: int) -> list[int]:
    """``k`` in ``[0, p-s)`` where
    ``(2k+2s+2)/(2k+s+n+2) = (2p-2k+2)/(2p-2k-s+n+2)`` fails."""
    bad = []
    for k in range(0, max(0, p - s)):
        d1, d2 = 2 * k + s + n + 2, 2 * p - 2 * k - s + n + 2
        if d1 == 0 or d2 == 0:
            bad.append(k)
        elif Fraction(2 * k + 2 * s + 2, d1) != Fraction(2 * p - 2 * k + 2, d2):
            bad.append(k)
    return bad


@dataclass
class UniquenessReport:
    p: int
    s: int
    psi: RadialSymbol
    ansatz: Ansatz
    dimension: int
    kernel: list[RadialSymbol]

    @property
    def contradiction(self) -> bool:
        return self.dimension >= 2

    def to_dict(self) -> dict:
        return {"p": self.p, "s": self.s, "psi": format_radial(self.psi),
                "ansatz": [format_rational(a) for a in self.ansatz.exponents],
                "dimension": self.dimension, "contradiction": self.contradiction,
                "kernel": [format_radial(k) for k in self.kernel]}


def uniqueness_report(p: int, s: int, psi: RadialSymbol, ansatz: Ansatz) -> UniquenessReport:
    if psi.is_zero():
        raise ValueError("psi must be nonzero")
    system = generate_constraints(p, s, psi, ansatz)
    basis = kernel_basis(system.matrix)
    kernel = [normalize_ray(ansatz.symbol(v)) for v in basis]
    return UniquenessReport(p, s, psi, ansatz, len(basis), kernel)


def uniqueness_grid(s_values=(1, 2, 3), m_values=(0, 1, 2, 3), p: int = 1,
                    verify_kmax: int = 32) -> list[dict]:
    """Kernel dimension and system-S rank for each ``(s, m)`` configuration."""
    rows = []
    for s in s_values:
        for m in m_values:
            res = solve_commutant(p, s, m, verify_kmax=verify_kmax)
            rows.append({
                "p": p, "s": s, "m": m, "n": res.n,
                "kernel_dimension": res.kernel_dimension,
                "system_S_rank": system_S_matrix(s, m).rank(),
                "candidate_consistent": res.candidate_consistent,
                "kernel": [format_radial(k) for k in res.kernel],
                "findings": res.findings,
            })
    return rows
