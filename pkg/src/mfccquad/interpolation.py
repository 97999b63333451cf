"""Lagrange interpolation in the first barycentric form.

``p(x) = l(x) * sum_n w_n / (x - d_n) * v_n`` with ``l(x) = prod (x - d_m)``
and ``w_n = 1 / prod_{m != n} (d_n - d_m)``.

All node differences are multiplied by ``4 / (d_last - d_first)`` before
forming products, which keeps them near unit size; the common factor is
removed again after ``l(x)`` and ``w_n`` are combined. Above
``LOG_DOMAIN_MIN_NODES`` nodes the products are accumulated as logarithms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidNodesError, InvalidParameterError

LOG_DOMAIN_MIN_NODES = 401


def _check_nodes(nodes):
    d = np.asarray(nodes, dtype=float)
    if d.ndim != 1 or d.size < 2:
        raise InvalidNodesError("need at least two nodes")
    if not np.all(np.isfinite(d)):
        raise InvalidNodesError("nodes must be finite")
    if np.any(np.diff(d) <= 0):
        raise InvalidNodesError("nodes must be strictly increasing (no duplicates)")
    return d


def _scaled_weights(d):
    """``(w_s, C)`` with ``w_n = w_s[n] * C**(len(d) - 1)``."""
    C = 4.0 / (d[-1] - d[0])
    D = C * (d[:, None] - d[None, :])
    np.fill_diagonal(D, 1.0)
    return 1.0 / np.prod(D, axis=1), C


def _log_weights(d):
    """``log|w_n|`` (for the scaled differences) and ``sign(w_n)``."""
    C = 4.0 / (d[-1] - d[0])
    n = d.size
    logw = np.empty(n)
    for i in range(n):
        diff = C * (d[i] - d)
        diff[i] = 1.0
        logw[i] = -np.sum(np.log(np.abs(diff)))
    sign = np.where((n - 1 - np.arange(n)) % 2 == 0, 1.0, -1.0)
    return logw, sign, C


def bary_weights(nodes) -> np.ndarray:
    """Barycentric weights ``1 / prod_{m != n} (d_n - d_m)``.

    May overflow for very large node sets; the evaluators never form the
    unscaled weights.
    """
    d = _check_nodes(nodes)
    if d.size >= LOG_DOMAIN_MIN_NODES:
        logw, sign, C = _log_weights(d)
        with np.errstate(over="ignore"):
            return sign * np.exp(logw + (d.size - 1) * np.log(C))
    w_s, C = _scaled_weights(d)
    return w_s * C ** (d.size - 1)


@dataclass(frozen=True)
class BarySet:
    """Nodes, values and precomputed scaled weights for repeated evaluation."""

    nodes: np.ndarray
    values: np.ndarray
    w_scaled: np.ndarray
    sign: np.ndarray | None
    scale: float

    @classmethod
    def build(cls, nodes, values):
        d = _check_nodes(nodes)
        v = np.asarray(values)
        if v.shape != d.shape:
            raise InvalidParameterError("values must match nodes in length")
        if d.size >= LOG_DOMAIN_MIN_NODES:
            logw, sign, C = _log_weights(d)
            return cls(d, v, logw, sign, C)
        w_s, C = _scaled_weights(d)
        return cls(d, v, w_s, None, C)

    @property
    def w(self) -> np.ndarray:
        return bary_weights(self.nodes)


def _node_hits(d, x):
    """Index of a node within one ulp of each x, or -1."""
    i = np.clip(np.searchsorted(d, x), 0, d.size - 1)
    hit = np.full(x.shape, -1)
    for cand in (i - 1, i):
        cand = np.clip(cand, 0, d.size - 1)
        close = np.abs(x - d[cand]) <= np.spacing(np.abs(d[cand]))
        hit = np.where((hit < 0) & close, cand, hit)
    return hit


def bary_eval_full(bset: BarySet, x):
    """Evaluate the interpolant through all nodes of ``bset`` at ``x``."""
    d, v = bset.nodes, bset.values
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa < d[0]) or np.any(xa > d[-1]):
        raise DomainError("extrapolation outside the node range")
    hit = _node_hits(d, xa)
    out = np.empty(xa.shape, dtype=np.result_type(v, float))
    out[hit >= 0] = v[hit[hit >= 0]]
    rest = np.flatnonzero(hit < 0)
    C = bset.scale
    for i in rest:
        diff = C * (xa[i] - d)
        if bset.sign is None:
            ell = np.prod(diff)
            out[i] = ell * np.sum(bset.w_scaled / diff * v)
        else:
            logell = np.sum(np.log(np.abs(diff)))
            sgn_ell = np.prod(np.sign(diff))
            terms = bset.sign * np.exp(logell + bset.w_scaled - np.log(np.abs(diff)))
            out[i] = sgn_ell * np.sum(terms * np.sign(diff) * v)
    return out[0] if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class TubeSelection:
    s: int
    j: np.ndarray


def select_tube(nodes, x, s: int) -> TubeSelection:
    """Start index of the ``s`` consecutive nodes used at each ``x``.

    The window whose centre is nearest to ``x`` is taken (ties go to the
    smaller index), clamped to the valid range, then shifted as little as
    possible so that ``d_j <= x <= d_{j+s-1}``.
    """
    d = np.asarray(nodes, dtype=float)
    last = d.size - 1
    if isinstance(s, bool) or int(s) != s or s < 2 or s > last + 1:
        raise InvalidParameterError(f"tube size must lie in [2, {last + 1}], got {s}")
    s = int(s)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa < d[0]) or np.any(xa > d[-1]):
        raise DomainError("tube requested outside the node range")
    jmax = last - s + 1
    centers = 0.5 * (d[: jmax + 1] + d[s - 1:])
    i = np.searchsorted(centers, xa)
    left = np.clip(i - 1, 0, jmax)
    right = np.clip(i, 0, jmax)
    j = np.where(np.abs(centers[left] - xa) <= np.abs(centers[right] - xa), left, right)
    # containment: j <= r (d_j <= x) and j + s - 1 >= q (d_{j+s-1} >= x)
    r = np.searchsorted(d, xa, side="right") - 1
    q = np.searchsorted(d, xa, side="left")
    j = np.clip(j, q - s + 1, r)
    j = np.clip(j, 0, jmax)
    return TubeSelection(s, j if np.ndim(x) else j[:1])


def bary_eval_local(nodes, values, x, s: int):
    """Interpolate at ``x`` using only the ``s``-node tube around each point."""
    d = _check_nodes(nodes)
    v = np.asarray(values)
    if v.shape != d.shape:
        raise InvalidParameterError("values must match nodes in length")
    if s == d.size:
        return bary_eval_full(BarySet.build(d, v), x)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    j = select_tube(d, xa, s).j
    idx = j[:, None] + np.arange(s)
    D = d[idx]
    V = v[idx]
    C = 4.0 / (D[:, -1] - D[:, 0])
    diff = C[:, None] * (xa[:, None] - D)
    dd = C[:, None, None] * (D[:, :, None] - D[:, None, :])
    dd[:, np.arange(s), np.arange(s)] = 1.0
    w = 1.0 / np.prod(dd, axis=2)
    hit = np.abs(xa[:, None] - D) <= np.spacing(np.abs(D))
    safe = np.where(hit, 1.0, diff)
    out = np.prod(diff, axis=1) * np.sum(w / safe * V, axis=1)
    rows = np.any(hit, axis=1)
    if np.any(rows):
        out = out.astype(np.result_type(out, V))
        out[rows] = V[rows, np.argmax(hit[rows], axis=1)]
    return out[0] if np.ndim(x) == 0 else out
