"""Quantities derived from the oscillator ``g`` on a panel.

On a panel ``[a, b]`` with ``g`` increasing, the substitution ``tau = g(x)``
followed by the affine map of ``[g(a), g(b)]`` onto ``[-1, 1]`` turns the
integral into ``l * exp(i k c) * int_{-1}^{1} Ft(tau) exp(i kt tau) dtau``
with ``c``, ``l`` the centre and half-length of ``[g(a), g(b)]`` and
``kt = l k``. The transformed amplitude is known exactly at the images
``d_j`` of reference points ``u_j``: ``Ft(d_j) = f(x_j) / g'(x_j)``, so
no inverse of ``g`` is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ._validation import check_interval, evaluate, evaluate_real
from .errors import (EvaluationError, InvalidNodesError, NotIncreasingError,
                     OscillatorNotMonotoneError, SplitRequiredError,
                     StationaryPointError)
from .problem import OscProblem

#: Step of the complex-step derivative. No subtraction takes place, so the
#: step can be far below machine epsilon.
COMPLEX_STEP = 1e-100

#: Relative threshold below which ``|g'|`` is treated as a stationary point.
EPS_STAT = 1e-12

IDENTITY = "identity"
CONJUGATE = "conjugate"


def complex_step_derivative(phi, x, h: float = COMPLEX_STEP):
    """``Im(phi(x + i h)) / h``; ``phi`` must accept complex arguments."""
    xa = np.asarray(x, dtype=float)
    y = np.asarray(phi(xa + 1j * h))
    if not np.all(np.isfinite(y)):
        raise EvaluationError("non-finite value in complex-step evaluation")
    d = np.imag(y) / h
    if np.shape(d) != xa.shape:
        d = np.broadcast_to(d, xa.shape)
    return d[()] if d.ndim == 0 else np.array(d)


def derivative(problem: OscProblem, x):
    """``g'(x)``: the registered derivative if any, else the complex step."""
    if problem.gprime is not None:
        return evaluate_real(problem.gprime, x, "derivative")
    return complex_step_derivative(problem.g, x)


@dataclass(frozen=True)
class PanelTransform:
    a: float
    b: float
    ga: float
    gb: float
    c: float
    l: float
    ktilde: float

    def to_panel(self, u):
        """The affine map of [-1, 1] onto [a, b]."""
        return 0.5 * (self.a + self.b) + 0.5 * (self.b - self.a) * np.asarray(u)

    @property
    def prefactor(self) -> complex:
        k = self.ktilde / self.l
        return self.l * np.exp(1j * k * self.c)


def panel_transform(g, a: float, b: float, k: float) -> PanelTransform:
    a, b = check_interval(a, b)
    ga, gb = evaluate_real(g, np.array([a, b]))
    if not gb > ga:
        raise NotIncreasingError(
            f"g(b) <= g(a) on [{a}, {b}]; normalize the orientation first")
    c = 0.5 * (gb + ga)
    l = 0.5 * (gb - ga)
    return PanelTransform(a, b, float(ga), float(gb), c, l, l * k)


@dataclass(frozen=True)
class NodeImages:
    """Reference points ``u``, their panel points ``x`` and images ``d``."""

    u: np.ndarray
    x: np.ndarray
    d: np.ndarray
    lam: float

    @property
    def lambda_(self) -> float:
        return self.lam


def node_images(g, a: float, b: float, u, transform: PanelTransform | None = None,
                gx=None) -> NodeImages:
    """Images ``d_j = (g(x_j) - c) / l`` of the points ``x_j`` mapped from ``u_j``.

    ``gx`` may carry precomputed values of ``g`` at the mapped points.
    """
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.size < 2 or u[0] != -1.0 or u[-1] != 1.0:
        raise InvalidNodesError("reference points must run from -1 to 1")
    if np.any(np.diff(u) <= 0):
        raise InvalidNodesError("reference points must be strictly increasing")
    if transform is None:
        transform = panel_transform(g, a, b, 1.0)
    x = transform.to_panel(u)
    x[0], x[-1] = transform.a, transform.b
    if gx is None:
        gx = evaluate_real(g, x)
    d = (gx - transform.c) / transform.l
    d[0], d[-1] = -1.0, 1.0
    gaps = np.diff(d)
    if np.any(gaps <= 0):
        raise OscillatorNotMonotoneError(
            f"node images are not increasing on [{transform.a}, {transform.b}]")
    return NodeImages(u, x, d, float(gaps.max()))


def sigma_eval(problem: OscProblem, x, eps_stat: float = EPS_STAT):
    """``f(x) / g'(x)``, the transformed amplitude at the image of ``x``.

    Raises :class:`StationaryPointError` when ``|g'|`` falls below
    ``eps_stat * (1 + max|g'|)`` at any of the points; ``eps_stat=0``
    only rejects exact zeros.
    """
    x = np.asarray(x, dtype=float)
    gp = np.asarray(derivative(problem, x), dtype=float)
    scale = np.max(np.abs(gp), initial=0.0)
    if np.any(np.abs(gp) <= eps_stat * (1.0 + scale)):
        bad = x[np.abs(gp) <= eps_stat * (1.0 + scale)] if x.ndim else x
        raise StationaryPointError(f"g' vanishes (numerically) near x={np.ravel(bad)[0]!r}")
    fx = evaluate(problem.f, x, "amplitude")
    out = fx / gp
    return out[()] if np.ndim(out) == 0 else out


def reflect(problem: OscProblem) -> OscProblem:
    """Substitute ``x -> a + b - x``; the integral is unchanged."""
    f, g, gp = problem.f, problem.g, problem.gprime
    s = problem.a + problem.b
    return replace(
        problem,
        f=lambda x: f(s - x),
        g=lambda x: g(s - x),
        gprime=None if gp is None else (lambda x: -np.asarray(gp(s - x))),
    )


def _monotone_direction(problem: OscProblem, samples: int = 65) -> int:
    x = np.linspace(problem.a, problem.b, samples)
    dg = np.diff(evaluate_real(problem.g, x))
    if np.all(dg > 0):
        return 1
    if np.all(dg < 0):
        return -1
    raise SplitRequiredError(
        f"g is not monotone on [{problem.a}, {problem.b}]; split at its stationary points")


def normalize_orientation(problem: OscProblem, reflect_first: bool = False):
    """Return an equivalent problem with increasing ``g`` and a postprocess tag.

    For decreasing ``g`` the problem becomes ``(conj f, -g)`` and the tag is
    ``"conjugate"``: the original integral is the conjugate of the new one.
    With ``reflect_first`` the variable is first reflected about the
    interval midpoint, which moves a right-endpoint stationary point to the
    left endpoint.
    """
    if reflect_first:
        problem = reflect(problem)
    if _monotone_direction(problem) > 0:
        return problem, IDENTITY
    f, g, gp = problem.f, problem.g, problem.gprime
    flipped = replace(
        problem,
        f=lambda x: np.conj(f(x)),
        g=lambda x: -g(x),
        gprime=None if gp is None else (lambda x: -np.asarray(gp(x))),
    )
    return flipped, CONJUGATE


def apply_postprocess(value: complex, tag: str) -> complex:
    return complex(np.conj(value)) if tag == CONJUGATE else complex(value)
