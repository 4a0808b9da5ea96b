"""Floating-point cross-checks for the exact engine.

Everything here works from the symbol's terms and plain numerical
integration; nothing is taken from the exact Mellin transform.  Radial
integrals over ``[0, 1]`` use tanh-sinh quadrature evaluated in log space,
so integrable endpoint singularities ``r^b`` (``b > -1``) and
``ln(1/r)^l`` factors need no special treatment.

Area measure convention: ``int_D g(|z|) dA = 2 int_0^1 g(r) r dr``, the
normalisation under which ``sqrt(n+1) z^n`` is a unit vector.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureFailure
from .operators import BasisVector, apply_qh, signed_range
from .symbols import QHSymbol, RadialSymbol

_T_MAX = 8.0  # pi*sinh(8) ~ 4.7e3, so the tails sit far below double precision


@dataclass(frozen=True)
class QuadratureConfig:
    target_abs_tol: float = 1e-12
    max_refinements: int = 16

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")


DEFAULT_CONFIG = QuadratureConfig()


def _nodes(t: np.ndarray):
    """log r, log(1 - r) and dr/dt at tanh-sinh parameters ``t``."""
    v = math.pi * np.sinh(t)
    # r = 1 / (1 + exp(-v)),  1 - r = 1 / (1 + exp(v))
    log_r = -np.logaddexp(0.0, -v)
    log_1mr = -np.logaddexp(0.0, v)
    log_w = math.log(math.pi) + np.log(np.cosh(t)) + log_r + log_1mr
    return log_r, log_w


def integrate_powers(terms, cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """``int_0^1 sum c * r^b * ln(1/r)^l dr`` for ``terms = [(c, b, l), ...]``.

    Returns ``(value, error_estimate)``; every ``b`` must exceed -1.
    """
    terms = [(float(c), float(b), int(l)) for c, b, l in terms]
    for _, b, _ in terms:
        if not b > -1:
            raise ValueError(f"r^{b} is not integrable on [0, 1]")
    if not terms:
        return 0.0, 0.0

    def f(t):
        log_r, log_w = _nodes(t)
        lg = -log_r
        acc = np.zeros_like(t)
        for c, b, l in terms:
            term = np.exp((b * log_r) + log_w)
            if l:
                term = term * lg ** l
            acc += c * term
        return acc

    h = 0.5
    t = np.arange(-_T_MAX, _T_MAX + h / 2, h)
    total = h * float(np.sum(f(t)))
    err = math.inf
    for level in range(1, cfg.max_refinements + 1):
        h /= 2
        t_new = np.arange(-_T_MAX + h, _T_MAX, 2 * h)
        new_total = total / 2 + h * float(np.sum(f(t_new)))
        err = abs(new_total - total)
        total = new_total
        if level >= 3 and err <= cfg.target_abs_tol:
            return total, err
    raise QuadratureFailure(
        f"no convergence after {cfg.max_refinements} refinements (last change {err:.3e})")


def mellin_numeric(phi: RadialSymbol, z, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``int_0^1 phi(r) r^(z-1) dr`` by quadrature."""
    z = float(z)
    if phi.is_zero():
        return 0.0
    if not z + float(phi.min_exponent) > 0:
        raise ValueError(f"Mellin integral diverges at z = {z}")
    value, _ = integrate_powers([(t.coeff, t.exponent + z - 1, t.log_power) for t in phi.terms], cfg)
    return value


def projection_coefficient(f: QHSymbol, u: BasisVector, target: BasisVector,
                           cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Coefficient of ``target`` in ``Q(f u)``: ``<f u, e> / <e, e>``.

    The angular integral is done by hand; it vanishes unless the angular
    frequencies match, in which case no quadrature is needed for the zero.
    """
    if u.index + f.degree != target.index:
        return 0.0
    k, j = u.power, target.power
    # <f u, e> = 2 int phi(r) r^k r^j r dr ; <e, e> = 2 int r^(2j+1) dr
    inner, _ = integrate_powers(
        [(2 * t.coeff, t.exponent + k + j + 1, t.log_power) for t in f.radial.terms], cfg)
    norm, _ = integrate_powers([(2, 2 * j + 1, 0)], cfg)
    return inner / norm


@dataclass
class Lemma2Report:
    kmax: int
    max_abs_dev: float
    worst_index: str

    def to_dict(self) -> dict:
        return {"kmax": self.kmax, "max_abs_dev": self.max_abs_dev, "worst_index": self.worst_index}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def validate_lemma2(f: QHSymbol, kmax: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> Lemma2Report:
    """Compare the closed-form action with numerical projection on ``|i| <= kmax``."""
    worst, worst_at = -1.0, BasisVector(0)
    for i in signed_range(kmax):
        v = BasisVector(i)
        exact = apply_qh(f, v)
        approx = projection_coefficient(f, v, exact.vec, cfg)
        dev = abs(float(exact.coeff) - approx)
        if dev > worst:
            worst, worst_at = dev, v
    return Lemma2Report(kmax, worst, str(worst_at))
