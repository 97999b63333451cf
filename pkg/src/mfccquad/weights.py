"""Modified moments ``omega_n(k) = int_{-1}^{1} T_n(x) exp(i k x) dx``.

The moments are obtained from the auxiliary sequence
``rho_n = int_{-1}^{1} U_{n-1}(x) exp(i k x) dx`` (``rho_0 = 0``), which
satisfies the inhomogeneous three-term recurrence

    rho_{n+1} + (2n / (i k)) rho_n - rho_{n-1} = 2 gamma_n(k),

together with ``omega_n = (rho_{n+1} - rho_{n-1}) / 2``. The recurrence is
run forwards while ``n <= k``. Beyond that point forward recursion is
unstable, and the remaining ``rho_n`` are found by solving the recurrence as
a tridiagonal two-point boundary value problem, which is diagonally
dominant there (Olver's algorithm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import FallbackRequired, InvalidParameterError

#: Below this wavenumber the recurrence divides by (almost) zero; callers
#: switch to plain Clenshaw-Curtis weights instead.
K_MIN = 1e-8

# growth of the dominant homogeneous solution required between the last
# wanted index and the truncation index of the boundary value problem
_TRUNCATION_GROWTH = 1e18


@dataclass(frozen=True)
class FccWeights:
    ktilde: float
    order: int
    omega: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        for name in ("omega", "rho"):
            a = np.array(getattr(self, name))
            a.flags.writeable = False
            object.__setattr__(self, name, a)


def gamma_n(n: int, ktilde: float) -> complex:
    """Boundary term ``(T_n(1) e^{ik} - T_n(-1) e^{-ik}) / (ik)``."""
    if ktilde <= 0:
        raise InvalidParameterError("ktilde must be positive")
    if n % 2 == 0:
        return complex(2.0 * math.sin(ktilde) / ktilde, 0.0)
    return 2.0 * math.cos(ktilde) / (1j * ktilde)


def _gammas(count, k):
    g = np.empty(count, dtype=complex)
    g[0::2] = 2.0 * math.sin(k) / k
    g[1::2] = 2.0 * math.cos(k) / (1j * k)
    return g


def _truncation_index(first, k, minimum):
    # grow the Bessel-type dominant solution z_{n+1} = (2n/k) z_n - z_{n-1}
    z_prev, z, n = 0.0, 1.0, first
    while n < minimum or abs(z) < _TRUNCATION_GROWTH:
        z_prev, z = z, (2.0 * n / k) * z - z_prev
        n += 1
    return n


def _rho(N, k):
    """rho_0 .. rho_{N+1} for k > 0."""
    last = N + 1
    # forward phase: rho_{n+1} from rho_n, rho_{n-1} for n <= k
    m = min(last, math.floor(k) + 1)
    n_end = m
    if m < last:
        margin = math.ceil(10 + 0.5 * math.sqrt(N))
        n_end = _truncation_index(last, k, last + margin)
    gam = _gammas(n_end + 2, k)
    rho = np.zeros(n_end + 2, dtype=complex)
    rho[1] = gam[0]
    for n in range(1, m):
        rho[n + 1] = 2.0 * gam[n] - (2.0 * n / (1j * k)) * rho[n] + rho[n - 1]
    if m < last:
        # unknowns rho_{m+1} .. rho_{n_end}; equations n = m+1 .. n_end
        n = np.arange(m + 1, n_end + 1)
        size = n.size
        ab = np.zeros((3, size), dtype=complex)
        ab[0, 1:] = 1.0
        ab[1, :] = 2.0 * n / (1j * k)
        ab[2, :-1] = -1.0
        rhs = 2.0 * gam[m + 1:n_end + 1]
        rhs[0] += rho[m]
        # far boundary from the leading asymptotics rho_n ~ (ik/n) gamma_n
        rho_far = (1j * k / (n_end + 1)) * gam[n_end + 1]
        rhs[-1] -= rho_far
        rho[m + 1:n_end + 1] = solve_banded((1, 1), ab, rhs)
        rho[n_end + 1] = rho_far
    return rho[: last + 1]


def fcc_weights(N: int, ktilde: float) -> FccWeights:
    """Modified moments ``omega_0 .. omega_N`` at wavenumber ``ktilde``.

    Negative ``ktilde`` is accepted and handled by conjugation. Raises
    :class:`FallbackRequired` when ``|ktilde| < K_MIN``.
    """
    if isinstance(N, bool) or int(N) != N or N < 1:
        raise InvalidParameterError(f"order N must be a positive integer, got {N!r}")
    N = int(N)
    k = float(ktilde)
    if not math.isfinite(k):
        raise InvalidParameterError("ktilde must be finite")
    if abs(k) < K_MIN:
        raise FallbackRequired(f"|ktilde|={abs(k):.3g} below {K_MIN:g}")
    rho = _rho(N, abs(k))
    omega = np.empty(N + 1, dtype=complex)
    omega[0] = rho[1]
    omega[1:] = 0.5 * (rho[2:] - rho[:-2])
    if k < 0:
        omega, rho = omega.conj(), rho.conj()
    return FccWeights(k, N, omega, rho)


def cc_plain_weights(N: int) -> np.ndarray:
    """``int_{-1}^{1} T_n(x) dx`` for ``n = 0..N``."""
    if isinstance(N, bool) or int(N) != N or N < 1:
        raise InvalidParameterError(f"order N must be a positive integer, got {N!r}")
    n = np.arange(int(N) + 1)
    w = np.zeros(n.size)
    even = n % 2 == 0
    w[even] = 2.0 / (1.0 - n[even] ** 2)
    return w
