"""Filon-Clenshaw-Curtis quadrature for ``int_a^b f(x) exp(i k g(x)) dx``.

Plain FCC handles a linear oscillator. The modified rules (mfcc) map each
panel through ``g`` so that non-linear oscillators reduce to the linear
case; a graded mesh deals with stationary points of ``g``.
"""

from .chebyshev import ChebCoeffs, ChebNodes, cc_nodes, cheb_coeffs, cheb_interp_eval
from .errors import (
    DomainError,
    EvaluationError,
    ExpressionError,
    ExprSyntaxError,
    FallbackRequired,
    InvalidIntervalError,
    InvalidNodesError,
    InvalidParameterError,
    InvalidValueError,
    NotIncreasingError,
    OracleFailure,
    OscillatorNotMonotoneError,
    QuadratureError,
    SplitRequiredError,
    StationaryPointError,
    UnknownIdentifierError,
)
from .expr import Expression, eval_expr, parse_expr, to_text
from .fcc import FccRule, fcc_apply, fcc_integrate_affine, fcc_rule
from .interpolation import BarySet, bary_eval_full, bary_eval_local, bary_weights, select_tube
from .methods import (
    GradedParams,
    QuadResult,
    graded_integrate,
    graded_mesh,
    integrate_split,
    method1_integrate,
    method2_integrate,
    mfcc_panel,
    split_at_stationary_points,
)
from .oracle import OracleConfig, oracle_cheb_moment, oracle_integrate
from .oscillator import (
    complex_step_derivative,
    node_images,
    normalize_orientation,
    panel_transform,
    reflect,
    sigma_eval,
)
from .problem import OscProblem
from .weights import FccWeights, cc_plain_weights, fcc_weights, gamma_n

__version__ = "0.1.0"
