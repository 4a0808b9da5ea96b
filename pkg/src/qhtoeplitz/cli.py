"""Command-line front end (``qh``).

Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
3 numerical failure.  Exact values are always printed as ``num/den``.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
from dataclasses import dataclass

from .commutant import check_eq22, solve_commutant, solve_convolution_equation
from .errors import (InadmissibleExponent, NoAdmissibleSolution, PoleAtEvaluation,
                     QuadratureFailure, SymbolSyntaxError, Unsupported, ZeroSymbol)
from .mellin import mellin_transform
from .operators import BasisVector, apply_qh, check_commute_range, operator_matrix
from .quadrature import validate_lemma2
from .symbols import format_radial, mellin_convolve, parse_radial, parse_symbol

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass
class CommandOutcome:
    exit_code: int
    payload: str


def default_kmax() -> int:
    raw = os.environ.get("QH_DEFAULT_KMAX", "64")
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"QH_DEFAULT_KMAX must be an integer, got {raw!r}")
    if value < 1:
        raise SystemExit("QH_DEFAULT_KMAX must be positive")
    return value


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def _basis(text: str) -> BasisVector:
    try:
        return BasisVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qh", description="Exact computations with quasihomogeneous Toeplitz operators "
                               "on the harmonic Bergman space.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("mellin", "Mellin transform of a radial symbol")
    p.add_argument("radial")
    p = add("convolve", "Mellin convolution of two radial symbols")
    p.add_argument("f")
    p.add_argument("g")
    p = add("apply", "apply T_f to one basis vector")
    p.add_argument("--symbol", required=True)
    p.add_argument("--basis", required=True, type=_basis, help="z^k or zbar^k")
    p = add("matrix", "truncated operator matrix")
    p.add_argument("--symbol", required=True)
    p.add_argument("--kmax", type=_positive)
    p = add("commute", "check T_f T_g = T_g T_f on |index| <= kmax")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--kmax", type=_positive)
    p = add("solve", "commutant of T_{E(-s) r^n}, n = (2m+1)s, over the r^{2js-p} ansatz")
    p.add_argument("--p", required=True, type=_positive)
    p.add_argument("--s", required=True, type=_positive)
    p.add_argument("--m", required=True, type=_nonnegative)
    p.add_argument("--verify-kmax", type=_positive)
    p = add("conv-solve", "solve phi *_M psi = (1/2)(1/r - r)")
    p.add_argument("--p", required=True, type=_positive)
    p.add_argument("--psi", required=True)
    p = add("check-eq22", "check the ratio identity for 0 <= k < p - s")
    p.add_argument("--p", required=True, type=_positive)
    p.add_argument("--s", required=True, type=_positive)
    p.add_argument("--n", required=True, type=_nonnegative)
    p = add("validate", "compare closed-form action with numerical projection")
    p.add_argument("--symbol", required=True)
    p.add_argument("--kmax", type=_positive)
    p.add_argument("--tol", type=float, default=1e-9)
    return parser


def _emit(args, data: dict, text: str) -> str:
    return json.dumps(data) if args.json else text


def _dispatch(args) -> CommandOutcome:
    cmd = args.command
    kmax = getattr(args, "kmax", None) or default_kmax()

    if cmd == "mellin":
        phi = parse_radial(args.radial)
        f = mellin_transform(phi)
        return CommandOutcome(EXIT_OK, _emit(args, {"symbol": format_radial(phi), "mellin": str(f)}, str(f)))

    if cmd == "convolve":
        h = mellin_convolve(parse_radial(args.f), parse_radial(args.g))
        return CommandOutcome(EXIT_OK, _emit(args, {"convolution": format_radial(h)}, format_radial(h)))

    if cmd == "apply":
        f = parse_symbol(args.symbol)
        try:
            out = apply_qh(f, args.basis)
        except PoleAtEvaluation as exc:
            return CommandOutcome(EXIT_FAILED, _emit(args, {"error": str(exc)}, f"error: {exc}"))
        data = {"input": str(args.basis), "coeff": str(out.coeff), "output": str(out.vec)}
        return CommandOutcome(EXIT_OK, _emit(args, data, str(out)))

    if cmd == "matrix":
        mat = operator_matrix(parse_symbol(args.symbol), kmax)
        lines = [f"kmax={mat.kmax} degree={mat.degree}"]
        lines += [f"{e['from']} -> {e['coeff']}*{e['to']}" for e in mat.to_dict()["entries"]]
        lines.append("out_of_range: " + ", ".join(str(v) for v in mat.out_of_range))
        return CommandOutcome(EXIT_OK, _emit(args, mat.to_dict(), "\n".join(lines)))

    if cmd == "commute":
        rep = check_commute_range(parse_symbol(args.f), parse_symbol(args.g), kmax)
        data = rep.to_dict()
        lines = [f"kmax={rep.kmax} commutes={str(rep.commutes).lower()}"]
        lines += [f"  {d['index']}: {d['lhs']} != {d['rhs']}" for d in data["failures"]]
        code = EXIT_OK if rep.commutes else EXIT_FAILED
        return CommandOutcome(code, _emit(args, data, "\n".join(lines)))

    if cmd == "solve":
        res = solve_commutant(args.p, args.s, args.m, verify_kmax=args.verify_kmax or default_kmax())
        d = res.to_dict()
        lines = [f"p={res.p} s={res.s} m={res.m} n={res.n}",
                 f"ansatz exponents: {d['ansatz']}",
                 f"kernel: {d['kernel']}",
                 f"candidate: {d['candidate']}",
                 f"consistent: {str(d['consistent']).lower()}"]
        lines += [f"  {x}" for x in res.diagnostics]
        lines += [f"  FINDING: {x}" for x in res.findings]
        return CommandOutcome(EXIT_OK, _emit(args, d, "\n".join(lines)))

    if cmd == "conv-solve":
        psi = parse_radial(args.psi)
        try:
            phi = solve_convolution_equation(args.p, psi)
        except NoAdmissibleSolution as exc:
            return CommandOutcome(EXIT_FAILED, _emit(args, {"error": str(exc)}, f"no admissible solution: {exc}"))
        data = {"p": args.p, "psi": format_radial(psi), "phi": format_radial(phi)}
        return CommandOutcome(EXIT_OK, _emit(args, data, format_radial(phi)))

    if cmd == "check-eq22":
        bad = check_eq22(args.p, args.s, args.n)
        data = {"p": args.p, "s": args.s, "n": args.n, "failing_k": bad}
        return CommandOutcome(EXIT_FAILED if bad else EXIT_OK, _emit(args, data, json.dumps(bad)))

    if cmd == "validate":
        rep = validate_lemma2(parse_symbol(args.symbol), kmax)
        code = EXIT_OK if rep.max_abs_dev <= args.tol else EXIT_FAILED
        text = f"kmax={rep.kmax} max_abs_dev={rep.max_abs_dev:.3e} worst_index={rep.worst_index}"
        return CommandOutcome(code, _emit(args, rep.to_dict(), text))

    raise AssertionError(cmd)


def run(argv=None) -> CommandOutcome:
    """Parse ``argv`` and execute; never calls ``sys.exit``."""
    parser = build_parser()
    err = io.StringIO()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return CommandOutcome(code, err.getvalue().rstrip())
    try:
        return _dispatch(args)
    except (SymbolSyntaxError, InadmissibleExponent, Unsupported, ZeroSymbol) as exc:
        return CommandOutcome(EXIT_USAGE, f"error: {exc}")
    except QuadratureFailure as exc:
        return CommandOutcome(EXIT_NUMERIC, f"quadrature failure: {exc}")
    except SystemExit as exc:
        return CommandOutcome(EXIT_USAGE, f"error: {exc.code}")


def main(argv=None) -> None:
    outcome = run(argv)
    stream = sys.stdout if outcome.exit_code in (EXIT_OK, EXIT_FAILED) else sys.stderr
    if outcome.payload:
        print(outcome.payload, file=stream)
    sys.exit(outcome.exit_code)


if __name__ == "__main__":
    main()
