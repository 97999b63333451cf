"""Brute-force reference values for oscillatory integrals.

Composite Gauss-Legendre on uniform sub-panels small enough that the phase
``k g`` changes by at most about one radian on each, refined by doubling
until two successive values agree. Slow (the cost grows linearly with
``k``) but independent of everything else in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from ._validation import check_interval, evaluate, evaluate_real
from .errors import InvalidParameterError, OracleFailure

_CHUNK = 1 << 18


@dataclass(frozen=True)
class OracleConfig:
    target_tol: float = 1e-13
    max_panels: int = 1 << 22
    gauss_order: int = 24
    min_panels: int = 4
    phase_budget: float = 1.0

    def __post_init__(self):
        if not self.target_tol >= 1e-15:
            raise InvalidParameterError("target_tol must be at least 1e-15")
        if self.gauss_order < 8:
            raise InvalidParameterError("gauss_order must be at least 8")
        if self.min_panels < 1 or self.max_panels < self.min_panels:
            raise InvalidParameterError("need 1 <= min_panels <= max_panels")


@lru_cache(maxsize=None)
def _gauss(order):
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _composite(f, g, a, b, k, panels, order):
    x0, w0 = _gauss(order)
    h = (b - a) / panels
    per_chunk = max(1, _CHUNK // order)
    partial = []
    for start in range(0, panels, per_chunk):
        j = np.arange(start, min(panels, start + per_chunk))
        mid = a + (j + 0.5) * h
        x = (mid[:, None] + 0.5 * h * x0[None, :]).ravel()
        vals = evaluate(f, x, "amplitude") * np.exp(1j * k * evaluate_real(g, x))
        s = np.sum(vals.reshape(-1, order) * w0[None, :])
        partial.append(s)
    p = np.asarray(partial)
    return 0.5 * h * complex(math.fsum(p.real), math.fsum(p.imag))


def _initial_panels(g, a, b, k, cfg):
    xs = np.linspace(a, b, 4097)
    slope = np.max(np.abs(np.diff(evaluate_real(g, xs)))) * (xs.size - 1)
    n = math.ceil(k * slope / cfg.phase_budget)
    return max(cfg.min_panels, n)


def oracle_integrate(f, g, a, b, k, cfg: OracleConfig = OracleConfig(), history=None) -> complex:
    """Reference value of ``int_a^b f(x) exp(i k g(x)) dx``.

    ``f`` and ``g`` are called with real arrays. If ``history`` is a list,
    the value at every refinement level is appended to it.

    Raises
    ------
    OracleFailure
        If successive values still disagree at ``cfg.max_panels``.
    """
    a, b = check_interval(a, b)
    k = float(k)
    n = _initial_panels(g, a, b, abs(k), cfg)
    prev = _composite(f, g, a, b, k, n, cfg.gauss_order)
    if history is not None:
        history.append(prev)
    while 2 * n <= cfg.max_panels:
        n *= 2
        cur = _composite(f, g, a, b, k, n, cfg.gauss_order)
        if history is not None:
            history.append(cur)
        if abs(cur - prev) <= cfg.target_tol * (1.0 + abs(cur)):
            return cur
        prev = cur
    raise OracleFailure(
        f"no agreement to {cfg.target_tol:g} with {n} panels on [{a}, {b}], k={k:g}")


def _chebyshev_t(n):
    def T(x):
        return np.cos(n * np.arccos(np.clip(x, -1.0, 1.0)))
    return T


def oracle_cheb_moment(n: int, ktilde: float, cfg: OracleConfig = OracleConfig()) -> complex:
    """``int_{-1}^{1} T_n(x) exp(i ktilde x) dx`` by :func:`oracle_integrate`."""
    if n < 0:
        raise InvalidParameterError("n must be non-negative")
    cfg = replace(cfg, min_panels=max(cfg.min_panels, int(n)))
    return oracle_integrate(_chebyshev_t(int(n)), lambda x: x, -1.0, 1.0, ktilde, cfg)
