"""Shared test data: smooth functions with symbolic derivatives."""

import numpy as np

# (name, phi, dphi, sample interval)
DERIVATIVE_SUITE = [
    ("x^2", lambda x: x**2, lambda x: 2 * x, (-2, 2)),
    ("x^3-x", lambda x: x**3 - x, lambda x: 3 * x**2 - 1, (-2, 2)),
    ("sin", np.sin, np.cos, (-3, 3)),
    ("cos", np.cos, lambda x: -np.sin(x), (-3, 3)),
    ("exp", np.exp, np.exp, (-2, 2)),
    ("exp(-x^2)", lambda x: np.exp(-x**2), lambda x: -2 * x * np.exp(-x**2), (-2, 2)),
    ("log", np.log, lambda x: 1 / x, (0.1, 5)),
    ("sqrt", np.sqrt, lambda x: 0.5 / np.sqrt(x), (0.1, 5)),
    ("sqrt(x^2+3x+4)", lambda x: np.sqrt(x**2 + 3 * x + 4),
     lambda x: (2 * x + 3) / (2 * np.sqrt(x**2 + 3 * x + 4)), (-1, 1)),
    ("1/(1+x^2)", lambda x: 1 / (1 + x**2), lambda x: -2 * x / (1 + x**2) ** 2, (-3, 3)),
    ("atan", np.arctan, lambda x: 1 / (1 + x**2), (-3, 3)),
    ("tanh", np.tanh, lambda x: 1 / np.cosh(x) ** 2, (-3, 3)),
    ("x*exp(x)", lambda x: x * np.exp(x), lambda x: (1 + x) * np.exp(x), (-2, 2)),
    ("sin(x^2)", lambda x: np.sin(x**2), lambda x: 2 * x * np.cos(x**2), (-2, 2)),
    ("x^4.5", lambda x: x**4.5, lambda x: 4.5 * x**3.5, (0.1, 3)),
    ("cosh", np.cosh, np.sinh, (-2, 2)),
    ("x^4", lambda x: x**4, lambda x: 4 * x**3, (-2, 2)),
    ("log(1+x^2)", lambda x: np.log(1 + x**2), lambda x: 2 * x / (1 + x**2), (-3, 3)),
    ("tan", np.tan, lambda x: 1 / np.cos(x) ** 2, (-1.2, 1.2)),
    ("cos(pi x)", lambda x: np.cos(np.pi * x), lambda x: -np.pi * np.sin(np.pi * x), (-1, 1)),
]


def max_relative_derivative_error(derivative, n_points=101):
    """Worst relative error of ``derivative(phi, x)`` over the suite."""
    worst = 0.0
    for _, phi, dphi, (lo, hi) in DERIVATIVE_SUITE:
        x = np.linspace(lo, hi, n_points)
        exact = dphi(x)
        got = derivative(phi, x)
        scale = np.maximum(np.abs(exact), np.max(np.abs(exact)) * 1e-3)
        worst = max(worst, float(np.max(np.abs(got - exact) / scale)))
    return worst


# High-precision (mpmath, 34 digits) values of the three table integrals,
# frozen at authoring time; each agreed with itself under mesh doubling to
# better than 1e-32.
REF_TABLE1 = complex("0.0007780187070271163496802183-0.005602280216464252142733127j")
REF_TABLE2 = complex("-0.0003771570694027524663198147+0.02813900378146850238169324j")
REF_TABLE3 = complex("-0.1383371416242684086461059-0.05046413274413320547270767j")
