"""Convergence studies: run a method over a parameter grid and emit CSV.

Each row holds the computed value, its absolute error against
:func:`~mfccquad.oracle.oracle_integrate`, the observed rate
``log2(E_prev / E)`` against the row with half the refinement parameter
(``M`` for mfcc1/graded, ``N`` for fcc/mfcc2), and the error scaled by
``k`` (``k**2`` for mfcc2).
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from .errors import InvalidParameterError
from .expr import Expression
from .fcc import fcc_integrate_affine
from .methods import GradedParams, graded_integrate, method1_integrate, method2_integrate
from .oracle import OracleConfig, oracle_integrate
from .problem import OscProblem

METHODS = ("fcc", "mfcc1", "mfcc2", "graded")
CSV_HEADER = ("method", "k", "M", "N", "Nprime", "s", "q", "value_re", "value_im",
              "abs_error", "rate", "scaled_error")
# N' = k N
KN = "kN"


@dataclass
class StudySpec:
    method: str
    f: str
    g: str
    a: float
    b: float
    k: List[float]
    M: List[int] = field(default_factory=lambda: [16])
    N: List[int] = field(default_factory=lambda: [8])
    Nprime: List[Union[int, str]] = field(default_factory=lambda: [KN])
    s: List[int] = field(default_factory=lambda: [3])
    q: List[Optional[float]] = field(default_factory=lambda: [None])
    stat_order: Optional[int] = None
    gprime: Optional[str] = None
    output: str = "-"

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidParameterError(f"method must be one of {METHODS}")
        for name in ("k", "M", "N", "Nprime", "s", "q"):
            if not getattr(self, name):
                raise InvalidParameterError(f"grid {name!r} is empty")
        if self.method == "graded" and self.stat_order is None:
            raise InvalidParameterError("method 'graded' needs stat_order")


@dataclass(frozen=True)
class GridPoint:
    k: float
    M: Optional[int] = None
    N: Optional[int] = None
    Nprime: Optional[int] = None
    s: Optional[int] = None
    q: Optional[float] = None
    # rows with equal group and half the refinement parameter are predecessors
    group: Tuple = ()
    level: int = 0


def grid_points(spec: StudySpec) -> List[GridPoint]:
    """Grid in output order; the refinement parameter varies fastest."""
    pts = []
    m = spec.method
    for k in spec.k:
        if m == "fcc":
            pts += [GridPoint(k, N=N, group=(k,), level=N) for N in spec.N]
        elif m == "mfcc1":
            for N in spec.N:
                pts += [GridPoint(k, M=M, N=N, group=(k, N), level=M) for M in spec.M]
        elif m == "mfcc2":
            for s in spec.s:
                for npr in spec.Nprime:
                    for N in spec.N:
                        Np = math.ceil(k * N) if npr == KN else int(npr)
                        pts.append(GridPoint(k, N=N, Nprime=Np, s=s, group=(k, s, npr), level=N))
        else:
            for q in spec.q:
                for N in spec.N:
                    qq = GradedParams(spec.stat_order, N, 1, q).q
                    pts += [GridPoint(k, M=M, N=N, q=qq, group=(k, N, q), level=M)
                            for M in spec.M]
    return pts


def _problem(spec: StudySpec, k: float) -> OscProblem:
    gp = Expression(spec.gprime) if spec.gprime else None
    return OscProblem(Expression(spec.f), Expression(spec.g), spec.a, spec.b, k, gp)


def compute(spec: StudySpec, pt: GridPoint) -> complex:
    prob = _problem(spec, pt.k)
    if spec.method == "fcc":
        return fcc_on_linear(prob, pt.N)
    if spec.method == "mfcc1":
        return method1_integrate(prob, pt.M, pt.N).value
    if spec.method == "mfcc2":
        return method2_integrate(prob, pt.N, pt.Nprime, pt.s).value
    return graded_integrate(prob, GradedParams(spec.stat_order, pt.N, pt.M, pt.q)).value


def fcc_on_linear(prob: OscProblem, N: int) -> complex:
    """Plain FCC for an affine oscillator ``g(x) = slope*x + shift``."""
    x = np.linspace(prob.a, prob.b, 9)
    gx = np.real(np.asarray(prob.g(x), dtype=complex))
    slope = (gx[-1] - gx[0]) / (prob.b - prob.a)
    shift = gx[0] - slope * prob.a
    if np.max(np.abs(gx - (slope * x + shift))) > 1e-12 * (1 + np.max(np.abs(gx))):
        raise InvalidParameterError("method 'fcc' needs an affine oscillator g")
    if slope == 0:
        raise InvalidParameterError("method 'fcc' needs a non-constant oscillator g")
    phase = np.exp(1j * prob.k * shift)
    if slope > 0:
        return phase * fcc_integrate_affine(prob.f, prob.a, prob.b, prob.k * slope, N)
    f = prob.f
    val = fcc_integrate_affine(lambda t: np.conj(f(t)), prob.a, prob.b, -prob.k * slope, N)
    return phase * np.conj(val)


def scale_power(method: str) -> int:
    return 2 if method == "mfcc2" else 1


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def run_rows(spec: StudySpec, jobs: int = 1,
             cfg: OracleConfig = OracleConfig()) -> Iterator[Dict[str, str]]:
    """Yield CSV rows in grid order; failures propagate after earlier rows."""
    pts = grid_points(spec)
    refs: Dict[float, complex] = {}
    for k in dict.fromkeys(pt.k for pt in pts):
        p = _problem(spec, k)
        refs[k] = oracle_integrate(p.f, p.g, p.a, p.b, k, cfg)

    def work(pt):
        return compute(spec, pt), refs[pt.k]

    errors: Dict[Tuple, Dict[int, float]] = {}
    p = scale_power(spec.method)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        for pt, (value, ref) in zip(pts, pool.map(work, pts)):
            err = abs(value - ref)
            seen = errors.setdefault(pt.group, {})
            prev = seen.get(pt.level // 2) if pt.level % 2 == 0 else None
            rate = None
            if prev is not None and prev > 0 and err > 0:
                rate = math.log2(prev / err)
            seen[pt.level] = err
            yield {
                "method": spec.method, "k": _fmt(pt.k), "M": _fmt(pt.M), "N": _fmt(pt.N),
                "Nprime": _fmt(pt.Nprime), "s": _fmt(pt.s), "q": _fmt(pt.q),
                "value_re": _fmt(value.real), "value_im": _fmt(value.imag),
                "abs_error": _fmt(err), "rate": _fmt(rate),
                "scaled_error": _fmt(pt.k ** p * err),
            }


def write_study(spec: StudySpec, stream: TextIO, jobs: int = 1,
                cfg: OracleConfig = OracleConfig()) -> int:
    """Write the study as CSV to ``stream``; returns the number of rows."""
    w = csv.DictWriter(stream, fieldnames=CSV_HEADER, lineterminator="\n")
    w.writeheader()
    n = 0
    try:
        for row in run_rows(spec, jobs, cfg):
            w.writerow(row)
            n += 1
    finally:
        stream.flush()
    return n


def _split(v):
    return [t.strip() for t in v.split(",") if t.strip()]


def _opt_float(t):
    return None if t.lower() in ("", "default", "none") else float(t)


def parse_config(text: str) -> StudySpec:
    """Parse a flat ``key = value`` file (``#`` comments) into a StudySpec.

    List-valued keys (k, M, N, Nprime, s, q) take comma-separated values;
    ``Nprime = kN`` means ``ceil(k*N)`` and ``q = default`` the standard
    grading exponent.
    """
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParameterError(f"config line {lineno}: expected key = value")
        key, val = (p.strip() for p in line.split("=", 1))
        raw[key.lower().replace("-", "_")] = val
    conv = {
        "method": str, "f": str, "g": str, "gprime": str, "output": str,
        "a": float, "b": float,
        "k": lambda v: [float(t) for t in _split(v)],
        "m": lambda v: [int(t) for t in _split(v)],
        "n": lambda v: [int(t) for t in _split(v)],
        "nprime": lambda v: [t if t == KN else int(t) for t in _split(v)],
        "s": lambda v: [int(t) for t in _split(v)],
        "q": lambda v: [_opt_float(t) for t in (_split(v) or ["default"])],
        "stat_order": int,
    }
    names = {"m": "M", "n": "N", "nprime": "Nprime"}
    kwargs = {}
    for key, val in raw.items():
        if key not in conv:
            raise InvalidParameterError(f"unknown config key {key!r}")
        try:
            kwargs[names.get(key, key)] = conv[key](val)
        except ValueError as exc:
            raise InvalidParameterError(f"bad value for {key!r}: {val!r}") from exc
    missing = {"method", "f", "g", "a", "b", "k"} - kwargs.keys()
    if missing:
        raise InvalidParameterError(f"config is missing {sorted(missing)}")
    return StudySpec(**kwargs)


_G_SQRT = "sqrt(x^2+3*x+4)"

TABLE_PRESETS = {
    1: dict(method="mfcc1", f="x^4.5/(1+x^2)", g=_G_SQRT, a=0.0, b=1.0, k=[100.0],
            M=[16, 32, 64, 128, 256, 512], N=[1, 2, 3]),
    2: dict(method="mfcc2", f="(x-1)/(1+x^2)", g=_G_SQRT, a=-1.0, b=1.0, k=[100.0],
            N=[2, 4, 8, 16, 32, 64], Nprime=[KN], s=[2, 3, 4, 5]),
    3: dict(method="graded", f="(x-1)/(1+x^2)", g="x^4", a=0.0, b=1.0, k=[1000.0],
            M=[100, 200, 400, 800], N=[4, 6, 8], stat_order=3),
}


def table_spec(number: int, output: str = "-") -> StudySpec:
    if number not in TABLE_PRESETS:
        raise InvalidParameterError(f"no preset for table {number}")
    return StudySpec(output=output, **TABLE_PRESETS[number])
