"""The N-point Filon-Clenshaw-Curtis rule for a linear oscillator."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._validation import check_frequency, check_interval, check_positive_int, evaluate
from .chebyshev import ChebNodes, cc_nodes, cheb_coeffs
from .errors import FallbackRequired, InvalidParameterError
from .weights import FccWeights, cc_plain_weights, fcc_weights


@dataclass(frozen=True)
class FccRule:
    """Nodes and moments for ``int_{-1}^{1} f(x) exp(i*ktilde*x) dx``.

    ``weights`` is ``None`` when ``|ktilde|`` is below the moment recursion's
    threshold; the rule then integrates ``f(x) exp(i*ktilde*x)`` with the
    classical Clenshaw-Curtis weights.
    """

    order: int
    ktilde: float
    weights: Optional[FccWeights]
    nodes: ChebNodes

    @property
    def is_plain(self) -> bool:
        return self.weights is None


def fcc_rule(N: int, ktilde: float) -> FccRule:
    N = check_positive_int(N, "N")
    try:
        w = fcc_weights(N, ktilde)
    except FallbackRequired:
        w = None
    return FccRule(N, float(ktilde), w, cc_nodes(N))


def _dsum(terms):
    # double-primed sum in ascending n
    t = np.array(terms, dtype=complex)
    t[0] *= 0.5
    t[-1] *= 0.5
    return complex(math.fsum(t.real), math.fsum(t.imag))


def fcc_apply(rule: FccRule, values) -> complex:
    """Apply the rule to samples ``values[j] = f(t_j)`` at the rule's nodes."""
    v = np.asarray(values)
    if v.shape != (rule.order + 1,):
        raise InvalidParameterError(
            f"expected {rule.order + 1} samples, got shape {v.shape}")
    if rule.weights is None:
        folded = v * np.exp(1j * rule.ktilde * rule.nodes.nodes)
        alpha = cheb_coeffs(folded).alpha
        return _dsum(alpha * cc_plain_weights(rule.order))
    alpha = cheb_coeffs(v).alpha
    return _dsum(alpha * rule.weights.omega)


def fcc_integrate_affine(f, a: float, b: float, k: float, N: int) -> complex:
    """``int_a^b f(x) exp(i*k*x) dx`` by the N-point FCC rule.

    ``f`` is called once with an array of the N+1 mapped nodes.
    """
    a, b = check_interval(a, b)
    k = check_frequency(k)
    c = 0.5 * (b + a)
    l = 0.5 * (b - a)
    rule = fcc_rule(N, l * k)
    values = evaluate(f, c + l * rule.nodes.nodes, "amplitude")
    return l * np.exp(1j * k * c) * fcc_apply(rule, values)
