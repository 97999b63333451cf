"""Clenshaw-Curtis points and Chebyshev coefficient transforms.

Conventions: the points are ``t_j = cos(j*pi/N)``, ``j = 0..N``, stored in
descending order, and an interpolant of degree ``N`` is written as the
double-primed sum ``sum'' alpha_n T_n`` in which the first and last terms
are halved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft

from .errors import DomainError, InvalidParameterError, InvalidValueError

#: Orders at or above this use the FFT-based DCT-I instead of the direct sum.
FAST_TRANSFORM_MIN_ORDER = 64


def _frozen(a):
    a = np.array(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class ChebNodes:
    order: int
    nodes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen(self.nodes))


@dataclass(frozen=True)
class ChebCoeffs:
    order: int
    alpha: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frozen(self.alpha))


def _check_order(N):
    if isinstance(N, bool) or int(N) != N or N < 1:
        raise InvalidParameterError(f"order N must be a positive integer, got {N!r}")
    return int(N)


def cc_nodes(N: int) -> ChebNodes:
    """Clenshaw-Curtis points ``cos(j*pi/N)`` for ``j = 0..N``.

    The first half is computed with ``cos`` and mirrored, so that
    ``t[j] == -t[N - j]`` holds bitwise and the midpoint (even ``N``) is 0.
    """
    N = _check_order(N)
    t = np.empty(N + 1)
    half = N // 2
    j = np.arange(half + 1)
    t[: half + 1] = np.cos(j * np.pi / N)
    t[N - half:] = -t[half::-1]
    if N % 2 == 0:
        t[half] = 0.0
    return ChebNodes(N, t)


def _as_samples(values):
    v = np.asarray(values)
    if v.ndim != 1 or v.size < 2:
        raise InvalidParameterError("expected a 1-D array of at least 2 samples")
    if not np.all(np.isfinite(v)):
        raise InvalidValueError("samples contain non-finite entries")
    if not np.iscomplexobj(v):
        v = v.astype(float)
    return v


def cheb_coeffs_direct(values) -> np.ndarray:
    """Reference O(N^2) evaluation of the coefficient sum."""
    v = _as_samples(values)
    N = v.size - 1
    jn = np.outer(np.arange(N + 1), np.arange(N + 1)) % (2 * N)
    C = np.cos(jn * np.pi / N)
    w = v.copy()
    w[0] *= 0.5
    w[N] *= 0.5
    return (2.0 / N) * (C @ w)


def cheb_coeffs_fast(values) -> np.ndarray:
    """DCT-I based evaluation of the coefficient sum, O(N log N)."""
    v = _as_samples(values)
    N = v.size - 1
    if np.iscomplexobj(v):
        out = scipy.fft.dct(v.real, type=1) + 1j * scipy.fft.dct(v.imag, type=1)
    else:
        out = scipy.fft.dct(v, type=1)
    return out / N


def cheb_coeffs(values) -> ChebCoeffs:
    """Chebyshev coefficients of the interpolant through samples at ``cc_nodes(N)``.

    Parameters
    ----------
    values : array_like, shape (N+1,)
        Samples ordered like the nodes, i.e. ``values[j] = f(cos(j*pi/N))``.
        Real or complex.

    Returns
    -------
    ChebCoeffs
        ``alpha_n = (2/N) sum''_j cos(j*n*pi/N) values[j]``.
    """
    v = _as_samples(values)
    N = v.size - 1
    if N >= FAST_TRANSFORM_MIN_ORDER:
        alpha = cheb_coeffs_fast(v)
    else:
        alpha = cheb_coeffs_direct(v)
    return ChebCoeffs(N, alpha)


def cheb_interp_eval(coeffs: ChebCoeffs, x):
    """Evaluate ``sum'' alpha_n T_n(x)`` by Clenshaw's recurrence.

    ``x`` may be a scalar or an array; every entry must lie in [-1, 1].
    """
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0) or not np.all(np.isfinite(xa)):
        raise DomainError("Chebyshev interpolant is only defined on [-1, 1]")
    c = np.array(coeffs.alpha)
    N = c.size - 1
    c[0] *= 0.5
    c[N] *= 0.5
    b1 = np.zeros_like(xa, dtype=c.dtype)
    b2 = np.zeros_like(b1)
    for n in range(N, 0, -1):
        b1, b2 = c[n] + 2.0 * xa * b1 - b2, b1
    out = c[0] + xa * b1 - b2
    return out[()] if np.ndim(out) == 0 else out
