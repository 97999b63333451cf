"""The integral ``int_a^b f(x) exp(i k g(x)) dx`` as a value object."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

from ._validation import check_frequency, check_interval


@dataclass(frozen=True)
class OscProblem:
    """Amplitude ``f``, oscillator ``g``, interval ``[a, b]`` and frequency ``k``.

    ``f`` and ``g`` take NumPy arrays. ``g`` must also accept complex
    arguments (it is differentiated by the complex step) unless an exact
    derivative ``gprime`` is supplied. Both may be called concurrently.
    """

    f: Callable
    g: Callable
    a: float
    b: float
    k: float
    gprime: Optional[Callable] = None

    def __post_init__(self):
        a, b = check_interval(self.a, self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "k", check_frequency(self.k))

    def on(self, a, b) -> "OscProblem":
        """The same integrand restricted to ``[a, b]``."""
        if (a, b) == (self.a, self.b):
            return self
        return replace(self, a=a, b=b)
