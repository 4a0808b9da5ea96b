"""Exact and numerical tools for quasihomogeneous Toeplitz operators on the
harmonic Bergman space of the unit disk."""

from .commutant import (Ansatz, CommutantResult, ConstraintSystem, candidate_from_F, check_eq22,
                        generate_constraints, solve_commutant, solve_convolution_equation,
                        system_S_matrix, uniqueness_report)
from .exact_algebra import (ExactMatrix, PartialFractions, Polynomial, RationalFunction,
                            kernel_basis, rf_partial_fractions, rf_reduce)
from .mellin import build_F_thm2, build_F_thm3, inverse_mellin, mellin_transform, vanishing_on_sequence
from .operators import (BasisVector, CommutatorReport, ScaledBasisVector, apply_qh,
                        check_commute_range, commutator_coefficient, operator_matrix)
from .quadrature import QuadratureConfig, mellin_numeric, projection_coefficient, validate_lemma2
from .symbols import (BoundednessClass, QHSymbol, RadialSymbol, RadialTerm, classify_boundedness,
                      mellin_convolve, parse_radial, parse_symbol)

__version__ = "0.1.0"
