"""Modified FCC rules for ``int_a^b f(x) exp(i k g(x)) dx``.

Every routine here samples ``f / g'`` at points of the panel, which are the
exact values of the transformed amplitude at the images ``d_j`` of those
points, interpolates them to the Clenshaw-Curtis points and applies the
FCC rule. The variants differ only in how the panel is chosen and how the
interpolation is done:

* :func:`method1_integrate` - uniform mesh, ``N + 1`` Clenshaw-Curtis
  reference points per panel, full Lagrange interpolation;
* :func:`method2_integrate` - one panel, ``N' + 1`` uniform reference points,
  local interpolation on ``s`` consecutive images;
* :func:`graded_integrate` - mesh ``(j/M)**q`` graded towards a stationary
  point at ``a``, first panel dropped.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ._validation import check_positive_int, evaluate, evaluate_real
from .chebyshev import cc_nodes, cheb_coeffs
from .errors import InvalidParameterError, NotIncreasingError, OscillatorNotMonotoneError
from .fcc import fcc_apply, fcc_rule
from .interpolation import BarySet, bary_eval_full, bary_eval_local
from .oscillator import (CONJUGATE, EPS_STAT, IDENTITY, PanelTransform,
                         apply_postprocess, derivative, node_images,
                         normalize_orientation, sigma_eval)
from .problem import OscProblem
from .weights import K_MIN, cc_plain_weights

SMALL_KTILDE = "small-ktilde"
FIRST_PANEL_ZERO = "first-panel-zero"


@dataclass
class QuadResult:
    value: complex
    panels_used: int = 0
    evals: int = 0
    lambda_max: float = 0.0
    fallbacks: List[str] = field(default_factory=list)

    def __complex__(self):
        return complex(self.value)


@dataclass(frozen=True)
class _PanelOutcome:
    value: complex
    evals: int
    lam: float
    small_k: bool


def _fsum_complex(values) -> complex:
    v = np.asarray(list(values), dtype=complex)
    return complex(math.fsum(v.real), math.fsum(v.imag))


def _plain_panel(problem, a, b, N):
    # phase change across the panel is negligible: classical Clenshaw-Curtis
    # on the whole integrand in the original variable, so g' is not needed
    t = cc_nodes(N).nodes
    x = 0.5 * (a + b) + 0.5 * (b - a) * t
    vals = evaluate(problem.f, x, "amplitude") * np.exp(
        1j * problem.k * evaluate_real(problem.g, x))
    alpha = cheb_coeffs(vals).alpha
    terms = alpha * cc_plain_weights(N)
    terms[0] *= 0.5
    terms[-1] *= 0.5
    return 0.5 * (b - a) * _fsum_complex(terms)


def _cc_reference(N):
    # Clenshaw-Curtis points in increasing order
    return cc_nodes(N).nodes[::-1].copy()


def _mfcc(problem: OscProblem, a: float, b: float, N: int, u: np.ndarray,
          s: Optional[int], eps_stat: float) -> _PanelOutcome:
    x = 0.5 * (a + b) + 0.5 * (b - a) * u
    x[0], x[-1] = a, b
    gx = evaluate_real(problem.g, x)
    ga, gb = gx[0], gx[-1]
    if gb < ga:
        raise NotIncreasingError(f"g decreases on [{a}, {b}]")
    if np.any(np.diff(gx) < 0):
        # also guards the fallback, which would otherwise accept g(a) == g(b)
        raise OscillatorNotMonotoneError(f"g is not monotone on [{a}, {b}]")
    l = 0.5 * (gb - ga)
    ktilde = l * problem.k
    if not ktilde >= K_MIN:
        return _PanelOutcome(_plain_panel(problem, a, b, N), 2 * (N + 1), 0.0, True)
    c = 0.5 * (gb + ga)
    tr = PanelTransform(a, b, float(ga), float(gb), c, l, ktilde)
    img = node_images(problem.g, a, b, u, transform=tr, gx=gx)
    sig = sigma_eval(problem, img.x, eps_stat=eps_stat)
    t = cc_nodes(N).nodes
    if s is None:
        vals = bary_eval_full(BarySet.build(img.d, sig), t)
    else:
        vals = bary_eval_local(img.d, sig, t, s)
    rule = fcc_rule(N, ktilde)
    value = l * np.exp(1j * problem.k * c) * fcc_apply(rule, vals)
    return _PanelOutcome(complex(value), 3 * u.size, img.lam, False)


def mfcc_panel(problem: OscProblem, N: int, Nprime: Optional[int] = None,
               u_nodes: Union[str, Sequence[float], None] = None,
               interp: Union[str, int] = "full", eps_stat: float = EPS_STAT) -> complex:
    """One MFCC rule over ``[problem.a, problem.b]``.

    Parameters
    ----------
    problem : OscProblem
        ``g`` must be strictly increasing on the interval.
    N : int
        Order of the FCC rule (``N + 1`` Clenshaw-Curtis points).
    Nprime : int, optional
        Number of reference intervals; defaults to ``N``.
    u_nodes : {"cc", "uniform"} or array, optional
        Reference points in [-1, 1]. Defaults to Clenshaw-Curtis points
        when ``Nprime == N`` and uniform points otherwise.
    interp : "full" or int
        Full Lagrange interpolation or the tube size ``s``.
    """
    N = check_positive_int(N, "N")
    u = _reference_points(N, Nprime, u_nodes)
    s = None if interp == "full" else check_positive_int(interp, "s", 2)
    return _mfcc(problem, problem.a, problem.b, N, u, s, eps_stat).value


def _reference_points(N, Nprime, u_nodes):
    Np = N if Nprime is None else check_positive_int(Nprime, "Nprime")
    if u_nodes is None:
        u_nodes = "cc" if Np == N else "uniform"
    if isinstance(u_nodes, str):
        if u_nodes == "cc":
            return _cc_reference(Np)
        if u_nodes == "uniform":
            return np.linspace(-1.0, 1.0, Np + 1)
        raise InvalidParameterError(f"unknown reference point family {u_nodes!r}")
    u = np.asarray(u_nodes, dtype=float)
    if Nprime is not None and u.size != Np + 1:
        raise InvalidParameterError("u_nodes must have Nprime + 1 entries")
    return u


def _oriented(problem: OscProblem):
    # only the endpoint values are compared; panels catch anything worse
    ga, gb = evaluate_real(problem.g, np.array([problem.a, problem.b]))
    if gb >= ga:
        return problem, IDENTITY
    p, tag = normalize_orientation(problem)
    return p, tag


def _collect(outcomes: Sequence[_PanelOutcome], extra_tags=()) -> QuadResult:
    tags = list(extra_tags)
    if any(o.small_k for o in outcomes):
        tags.append(SMALL_KTILDE)
    return QuadResult(
        value=_fsum_complex(o.value for o in outcomes),
        panels_used=len(outcomes),
        evals=sum(o.evals for o in outcomes),
        lambda_max=max((o.lam for o in outcomes), default=0.0),
        fallbacks=tags,
    )


def method1_integrate(problem: OscProblem, M: int, N: int,
                      eps_stat: float = EPS_STAT) -> QuadResult:
    """Composite MFCC rule on ``M`` equal panels, ``N`` points per panel.

    Each panel uses Clenshaw-Curtis reference points and full Lagrange
    interpolation of ``f / g'`` at their images.
    """
    M = check_positive_int(M, "M")
    N = check_positive_int(N, "N")
    prob, tag = _oriented(problem)
    a, b = prob.a, prob.b
    mesh = a + (b - a) * np.arange(M + 1) / M
    mesh[-1] = b
    u = _cc_reference(N)
    out = [_mfcc(prob, mesh[j], mesh[j + 1], N, u, None, eps_stat) for j in range(M)]
    res = _collect(out)
    res.value = apply_postprocess(res.value, tag)
    return res


def method2_integrate(problem: OscProblem, N: int, Nprime: Optional[int] = None,
                      s: int = 3, u_nodes: Union[str, Sequence[float]] = "uniform",
                      eps_stat: float = EPS_STAT) -> QuadResult:
    """MFCC rule over the whole interval with local (tube) interpolation.

    ``Nprime`` defaults to ``ceil(k * N)``; values below that trigger a
    warning since the interpolation error is then not controlled.
    """
    N = check_positive_int(N, "N")
    if Nprime is None:
        Nprime = math.ceil(problem.k * N)
    Nprime = check_positive_int(Nprime, "Nprime")
    s = check_positive_int(s, "s", 2)
    if s > Nprime:
        raise InvalidParameterError(f"tube size s={s} exceeds Nprime={Nprime}")
    if Nprime < problem.k * N:
        warnings.warn(f"Nprime={Nprime} is below k*N={problem.k * N:g}", stacklevel=2)
    prob, tag = _oriented(problem)
    u = _reference_points(N, Nprime, u_nodes)
    res = _collect([_mfcc(prob, prob.a, prob.b, N, u, s, eps_stat)])
    res.value = apply_postprocess(res.value, tag)
    return res


@dataclass(frozen=True)
class GradedParams:
    """Parameters of the graded composite rule.

    ``q`` defaults to ``floor((N+1)/(beta+1)) + 1`` and must exceed
    ``(N+1-r)/(beta+1-r)`` with ``beta = -n/(n+1)`` and ``r = r_select``.
    """

    n_order: int
    N: int
    M: int
    q: Optional[float] = None
    r_select: float = 0.0

    def __post_init__(self):
        n = check_positive_int(self.n_order, "stationary point order")
        check_positive_int(self.N, "N")
        check_positive_int(self.M, "M")
        r = Fraction(self.r_select)
        beta = Fraction(-n, n + 1)
        if not 0 <= r < 1 + beta:
            raise InvalidParameterError(f"r_select must lie in [0, {1 + beta})")
        bound = (self.N + 1 - r) / (beta + 1 - r)
        if self.q is None:
            object.__setattr__(self, "q", math.floor((self.N + 1) / (beta + 1)) + 1)
        if not Fraction(self.q) > bound:
            raise InvalidParameterError(
                f"grading exponent q={self.q} must exceed {float(bound):g}")

    @property
    def beta(self) -> float:
        return -self.n_order / (self.n_order + 1)


def graded_mesh(a: float, b: float, M: int, q: float) -> np.ndarray:
    """``a + (b - a) * (j / M)**q`` for ``j = 0..M``."""
    x = a + (b - a) * (np.arange(M + 1) / M) ** q
    x[0], x[-1] = a, b
    return x


def _check_order(problem: OscProblem, n: int):
    a, b = problem.a, problem.b
    scale = np.max(np.abs(derivative(problem, np.linspace(a, b, 9)[1:])))
    if abs(derivative(problem, np.array([a]))[0]) > 1e-8 * (1 + scale):
        warnings.warn(f"g'(a) does not vanish; declared order {n} looks wrong", stacklevel=3)
        return
    # local exponent of g(a + h) - g(a) ~ h**(n+1)
    h = 1e-3 * (b - a)
    g0, g1, g2 = evaluate_real(problem.g, np.array([a, a + h, a + 2 * h]))
    if g1 != g0 and g2 != g0:
        p = math.log2(abs((g2 - g0) / (g1 - g0)))
        if abs(p - (n + 1)) > 0.5:
            warnings.warn(f"g behaves like (x-a)**{p:.2f} at a; declared order {n} "
                          f"implies exponent {n + 1}", stacklevel=3)


def graded_integrate(problem: OscProblem, params: GradedParams) -> QuadResult:
    """Composite MFCC rule on a mesh graded towards a stationary point at ``a``.

    ``g'`` must vanish to order ``params.n_order`` at ``a`` and be positive
    on ``(a, b]``. The first panel contributes zero.
    """
    prob, tag = _oriented(problem)
    _check_order(prob, params.n_order)
    x = graded_mesh(prob.a, prob.b, params.M, params.q)
    u = _cc_reference(params.N)
    # near the stationary point |g'| is legitimately tiny; only exact zeros fail
    out = [_mfcc(prob, x[j], x[j + 1], params.N, u, None, 0.0)
           for j in range(1, params.M)]
    res = _collect(out, extra_tags=[FIRST_PANEL_ZERO])
    res.value = apply_postprocess(res.value, tag)
    return res


@dataclass(frozen=True)
class Piece:
    """A subproblem with at most one stationary point, located at its left end."""

    problem: OscProblem
    stat_order: Optional[int]
    postprocess: str


def split_at_stationary_points(problem: OscProblem,
                               points: Sequence[Tuple[float, int]]) -> List[Piece]:
    """Split at stationary points (and midway between neighbours).

    Pieces whose stationary point sits at the right end are reflected, then
    each piece is oriented so that ``g`` increases. The original integral is
    the sum of ``apply_postprocess(I(piece.problem), piece.postprocess)``.
    """
    a, b = problem.a, problem.b
    locs = [float(p) for p, _ in points]
    orders = [check_positive_int(n, "stationary point order") for _, n in points]
    if any(not a <= p <= b for p in locs):
        raise InvalidParameterError("stationary points must lie in [a, b]")
    if any(q <= p for p, q in zip(locs, locs[1:])):
        raise InvalidParameterError("stationary points must be sorted and distinct")
    cuts = {a, b, *locs}
    cuts.update(0.5 * (p + q) for p, q in zip(locs, locs[1:]))
    cuts = sorted(cuts)
    order_at = dict(zip(locs, orders))
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        sub = problem.on(lo, hi)
        if lo in order_at:
            p, post = normalize_orientation(sub)
            pieces.append(Piece(p, order_at[lo], post))
        elif hi in order_at:
            p, post = normalize_orientation(sub, reflect_first=True)
            pieces.append(Piece(p, order_at[hi], post))
        else:
            p, post = normalize_orientation(sub)
            pieces.append(Piece(p, None, post))
    return pieces


def integrate_split(problem: OscProblem, points: Sequence[Tuple[float, int]],
                    N: int, M: int, q: Optional[float] = None) -> QuadResult:
    """Integrate across stationary points: graded rule next to each, Method I elsewhere."""
    parts = []
    tags = []
    for piece in split_at_stationary_points(problem, points):
        if piece.stat_order is None:
            r = method1_integrate(piece.problem, M, N)
        else:
            r = graded_integrate(piece.problem, GradedParams(piece.stat_order, N, M, q))
        parts.append((apply_postprocess(r.value, piece.postprocess), r))
        tags.extend(t for t in r.fallbacks if t not in tags)
    return QuadResult(
        value=_fsum_complex(v for v, _ in parts),
        panels_used=sum(r.panels_used for _, r in parts),
        evals=sum(r.evals for _, r in parts),
        lambda_max=max(r.lambda_max for _, r in parts),
        fallbacks=tags,
    )
