"""Jump-corrected interpolation, differentiation and quadrature.

High-order polynomial collocation loses its accuracy on functions with a
jump discontinuity. When the discontinuity's location and derivative jumps
are known, adding a jump-built correction to each nodal datum restores the
smooth machinery's accuracy: one interpolant covers the whole interval, its
derivative matrices and quadrature weights apply unchanged, and a moving
discontinuity costs only a reevaluation of the correction weights per step.
"""

from .diffmat import DerivMatrix, apply, derivative_matrix, fd_weights, negative_sum_trick
from .grid import Grid, GridFamily, chebyshev_gauss_lobatto, custom, equidistant
from .jumps import (
    CorrectionWeights,
    JumpData,
    XiOnNodeError,
    corrected_derivative,
    corrected_integrate,
    corrected_interpolate,
    correction_matrix,
    correction_terms,
    correction_weights,
    jump_weights,
    one_sided_derivatives_at_node,
    reconstruct_pieces,
)
from .lagrange import BarycentricWeights, barycentric_weights, basis_eval, basis_matrix, interpolate
from .mol import AdvectionProblem, EvolutionResult, evolve, jump_at, rhs, rk4_step
from .quadrature import QuadRule, basis_integrals, integrate, quad_weights
from .refproblems import (
    LegendreProblem,
    SyntheticPiecewise,
    legendre_P,
    legendre_P_derivative,
    legendre_Q,
    legendre_Q_derivative,
)

__version__ = "0.1.0"

__all__ = [
    "Grid",
    "GridFamily",
    "equidistant",
    "chebyshev_gauss_lobatto",
    "custom",
    "BarycentricWeights",
    "barycentric_weights",
    "basis_eval",
    "basis_matrix",
    "interpolate",
    "DerivMatrix",
    "fd_weights",
    "derivative_matrix",
    "negative_sum_trick",
    "apply",
    "QuadRule",
    "quad_weights",
    "integrate",
    "basis_integrals",
    "JumpData",
    "XiOnNodeError",
    "CorrectionWeights",
    "jump_weights",
    "correction_terms",
    "correction_matrix",
    "correction_weights",
    "reconstruct_pieces",
    "corrected_interpolate",
    "corrected_derivative",
    "corrected_integrate",
    "one_sided_derivatives_at_node",
    "LegendreProblem",
    "SyntheticPiecewise",
    "legendre_P",
    "legendre_P_derivative",
    "legendre_Q",
    "legendre_Q_derivative",
    "AdvectionProblem",
    "EvolutionResult",
    "jump_at",
    "rhs",
    "rk4_step",
    "evolve",
]
