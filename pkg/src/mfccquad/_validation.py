"""Input checks shared by the public entry points."""

import math
import numbers

import numpy as np

from .errors import EvaluationError, InvalidIntervalError, InvalidParameterError


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        if not (isinstance(value, numbers.Real) and float(value).is_integer()):
            raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise InvalidParameterError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_interval(a, b):
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise InvalidIntervalError(f"need finite a < b, got [{a}, {b}]")
    return a, b


def check_frequency(k):
    k = float(k)
    if not (math.isfinite(k) and k > 0):
        raise InvalidParameterError(f"frequency k must be positive, got {k}")
    return k


def evaluate(func, x, what="function"):
    """Call a user function on an array of points and insist on finite output."""
    x = np.asarray(x)
    y = np.asarray(func(x))
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        raise EvaluationError(f"{what} returned non-finite values")
    return y


def evaluate_real(func, x, what="oscillator"):
    y = evaluate(func, x, what)
    if np.iscomplexobj(y):
        scale = np.max(np.abs(y.real), initial=1.0)
        if np.max(np.abs(y.imag), initial=0.0) > 1e-12 * scale:
            raise EvaluationError(f"{what} must be real-valued on real arguments")
        y = y.real
    return np.asarray(y, dtype=float)
