import math

import numpy as np
import pytest

from _suites import REF_TABLE1, REF_TABLE2, REF_TABLE3
from mfccquad import (
    GradedParams,
    InvalidParameterError,
    OscProblem,
    fcc_integrate_affine,
    graded_integrate,
    graded_mesh,
    integrate_split,
    method1_integrate,
    method2_integrate,
    mfcc_panel,
    oracle_integrate,
    split_at_stationary_points,
)
from mfccquad.methods import FIRST_PANEL_ZERO, SMALL_KTILDE
from mfccquad.oscillator import CONJUGATE, apply_postprocess

G_SQRT = lambda x: np.sqrt(x**2 + 3 * x + 4)
F1 = lambda x: x**4.5 / (1 + x**2)
F2 = lambda x: (x - 1) / (1 + x**2)
IDENT = lambda x: x


def table1(k=100.0):
    return OscProblem(F1, G_SQRT, 0, 1, k)


def table2(k=100.0):
    return OscProblem(F2, G_SQRT, -1, 1, k)


def table3():
    return OscProblem(F2, lambda x: x**4, 0, 1, 1000.0)


def within_factor(err, table, factor):
    return table / factor <= err <= table * factor


# ---- single panel -----------------------------------------------------------

@pytest.mark.parametrize("N", [1, 4, 9, 16])
def test_panel_identity_is_plain_fcc(N):
    f = lambda x: np.exp(x) * np.cos(3 * x)
    p = OscProblem(f, IDENT, 0.3, 1.7, 40.0)
    ref = fcc_integrate_affine(f, 0.3, 1.7, 40.0, N)
    # the images d_j reproduce the nodes only to a few ulps, hence not bitwise
    assert abs(mfcc_panel(p, N) - ref) <= 1e-14 * abs(ref)


def test_panel_full_period():
    p = OscProblem(lambda x: np.ones_like(x), lambda x: 2 * x, 0, 1, math.pi)
    assert abs(mfcc_panel(p, 6)) <= 1e-12


def test_panel_table2_problem():
    # the same rule carried out in 40-digit arithmetic (Lagrange form,
    # exact moments); the rule itself is 1.4e-5 away from the integral
    rule_hp = complex("-0.00037106978412586354278545612+0.02812629104447717797007105024j")
    v = mfcc_panel(table2(), 16)
    assert abs(v - rule_hp) <= 1e-13
    assert abs(v - REF_TABLE2) <= 2e-5


def test_panel_decreasing_rejected():
    p = OscProblem(F2, lambda x: -x, 0, 1, 5.0)
    with pytest.raises(Exception):
        mfcc_panel(p, 4)


# ---- Method I ---------------------------------------------------------------

def test_method1_table1_examples():
    e = abs(method1_integrate(table1(), 16, 1).value - REF_TABLE1)
    assert e == pytest.approx(3.9820e-5, rel=1e-3)
    e = abs(method1_integrate(table1(), 256, 2).value - REF_TABLE1)
    assert e == pytest.approx(4.6807e-13, rel=2e-3)


@pytest.mark.parametrize("M,N", [(1, 4), (3, 8), (16, 2)])
def test_method1_linear_closed_form(M, N):
    k = 37.0
    exact = (np.exp(1j * k) - 1) / (1j * k)
    p = OscProblem(lambda x: np.ones_like(x), IDENT, 0, 1, k)
    assert abs(method1_integrate(p, M, N).value - exact) <= 1e-13


def test_method1_h_rates():
    for N in (1, 2, 3):
        errs = [abs(method1_integrate(table1(), M, N).value - REF_TABLE1)
                for M in (32, 64, 128, 256, 512)]
        rates = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(rates >= N - 0.5)


def test_method1_diagnostics():
    r = method1_integrate(table1(), 8, 4)
    assert r.panels_used == 8
    assert r.evals > 0
    assert 0 < r.lambda_max < 2
    assert r.fallbacks == []


def test_method1_decreasing_oscillator():
    g = lambda x: -G_SQRT(x)
    p = OscProblem(F2, g, 0, 1, 60.0)
    ref = oracle_integrate(F2, g, 0, 1, 60.0)
    assert abs(method1_integrate(p, 8, 8).value - ref) <= 1e-10


def test_method1_deterministic():
    a = method1_integrate(table2(), 32, 6).value
    b = method1_integrate(table2(), 32, 6).value
    assert a == b


# ---- Method II --------------------------------------------------------------

def test_method2_table2_examples():
    e = abs(method2_integrate(table2(), 8, 800, 2).value - REF_TABLE2)
    assert within_factor(e, 9.9097e-5, 1.05)
    e = abs(method2_integrate(table2(), 64, 6400, 4).value - REF_TABLE2)
    assert within_factor(e, 2.2446e-15, 5)


def test_method2_identity_degenerates():
    f = lambda x: np.exp(-x) * np.sin(x)
    for N in (4, 8, 12):
        p = OscProblem(f, IDENT, -1, 1, 25.0)
        with pytest.warns(UserWarning, match="below k"):
            v = method2_integrate(p, N, N, N, u_nodes="cc").value
        ref = fcc_integrate_affine(f, -1, 1, 25.0, N)
        assert abs(v - ref) <= 1e-14 * max(1, abs(ref))


def test_method2_parameter_checks():
    with pytest.raises(InvalidParameterError):
        method2_integrate(table2(), 8, 4, 6)
    with pytest.warns(UserWarning):
        method2_integrate(table2(), 8, 200, 3)


def test_method2_default_nprime():
    r = method2_integrate(table2(), 8)
    assert r.value == method2_integrate(table2(), 8, 800, 3).value
    assert r.lambda_max == pytest.approx(2 / 800, rel=0.6)


def test_method2_n_rates():
    errs = []
    for N in (8, 16, 32, 64):
        errs.append(abs(method2_integrate(table2(), N, 100 * N, 3).value - REF_TABLE2))
    assert errs[-1] <= 1e-8
    assert all(b <= 2 * a for a, b in zip(errs, errs[1:]))


# ---- graded mesh ------------------------------------------------------------

def test_graded_default_q():
    assert GradedParams(3, 4, 100).q == 21
    assert GradedParams(3, 8, 100).q == 37
    assert GradedParams(1, 4, 10).q == 11
    with pytest.raises(InvalidParameterError):
        GradedParams(3, 4, 100, q=20)


def test_graded_mesh_shape():
    x = graded_mesh(0.0, 2.0, 10, 3.0)
    assert x[0] == 0.0 and x[-1] == 2.0
    assert np.all(np.diff(x) > 0)
    assert x[1] == pytest.approx(2.0 * 1e-3)


def test_graded_table3_examples():
    e = abs(graded_integrate(table3(), GradedParams(3, 4, 100, q=21)).value - REF_TABLE3)
    assert within_factor(e, 3.2120e-5, 10)
    e = abs(graded_integrate(table3(), GradedParams(3, 8, 800)).value - REF_TABLE3)
    assert within_factor(e, 2.6714e-14, 10)


def test_graded_single_panel_is_zero():
    r = graded_integrate(table3(), GradedParams(3, 4, 1))
    assert r.value == 0
    assert FIRST_PANEL_ZERO in r.fallbacks
    assert r.evals == 0


def test_graded_small_ktilde_tag():
    r = graded_integrate(table3(), GradedParams(3, 8, 100))
    assert SMALL_KTILDE in r.fallbacks


def test_graded_order_mismatch_warns():
    with pytest.warns(UserWarning):
        graded_integrate(table3(), GradedParams(1, 4, 50))
    p = OscProblem(F2, lambda x: x + x**2, 0, 1, 100.0)
    with pytest.warns(UserWarning):
        graded_integrate(p, GradedParams(1, 4, 50))


def test_graded_right_endpoint_via_reflection():
    g = lambda x: -((1 - x) ** 2)
    p = OscProblem(F2, g, 0, 1, 300.0)
    ref = oracle_integrate(F2, g, 0, 1, 300.0)
    total = 0j
    for piece in split_at_stationary_points(p, [(1.0, 1)]):
        r = graded_integrate(piece.problem, GradedParams(piece.stat_order, 8, 200))
        total += apply_postprocess(r.value, piece.postprocess)
    assert abs(total - ref) <= 1e-9


# ---- splitting --------------------------------------------------------------

def test_split_none():
    p = table2()
    pieces = split_at_stationary_points(p, [])
    assert len(pieces) == 1
    assert pieces[0].problem is p and pieces[0].stat_order is None
    assert pieces[0].postprocess == "identity"


def test_split_parabola():
    p = OscProblem(F2, lambda x: x**2, -1, 1, 200.0)
    pieces = split_at_stationary_points(p, [(0.0, 1)])
    assert [(q.problem.a, q.problem.b) for q in pieces] == [(-1.0, 0.0), (0.0, 1.0)]
    # [-1, 0] is reflected: g becomes (x + 1)**2, increasing from -1
    assert pieces[0].problem.g(-1.0) == 0.0
    assert pieces[0].problem.g(0.0) == 1.0
    assert [q.postprocess for q in pieces] == ["identity", "identity"]
    assert all(q.stat_order == 1 for q in pieces)
    ref = oracle_integrate(F2, lambda x: x**2, -1, 1, 200.0)
    assert abs(integrate_split(p, [(0.0, 1)], 8, 100).value - ref) <= 1e-8


def test_split_quartic_offset():
    g = lambda x: (x - 0.3) ** 4
    p = OscProblem(F2, g, 0, 1, 200.0)
    pieces = split_at_stationary_points(p, [(0.3, 3)])
    assert [(q.problem.a, q.problem.b) for q in pieces] == [(0.0, 0.3), (0.3, 1.0)]
    ref = oracle_integrate(F2, g, 0, 1, 200.0)
    assert abs(integrate_split(p, [(0.3, 3)], 8, 400).value - ref) <= 1e-8


def test_split_midpoints_between_points():
    p = OscProblem(F2, lambda x: x**3 - x, -1, 1, 10.0)
    s = 1 / math.sqrt(3)
    pieces = split_at_stationary_points(p, [(-s, 1), (s, 1)])
    assert len(pieces) == 4
    # cuts at -s, 0 (the midpoint) and s
    los = sorted(min(q.problem.a, q.problem.b) for q in pieces)
    assert los == pytest.approx([-1.0, -s, 0.0, s], abs=1e-15)
    # the middle pieces have g decreasing and are conjugated
    assert sum(q.postprocess == CONJUGATE for q in pieces) == 2


def test_split_rejects_bad_points():
    p = table2()
    with pytest.raises(InvalidParameterError):
        split_at_stationary_points(p, [(0.2, 1), (0.2, 1)])
    with pytest.raises(InvalidParameterError):
        split_at_stationary_points(p, [(0.5, 1), (0.2, 1)])
    with pytest.raises(InvalidParameterError):
        split_at_stationary_points(p, [(3.0, 1)])
