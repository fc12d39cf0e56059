import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from renbo.binding import (
    PhysicalParams,
    binding_point,
    d2w_du2,
    dw_du,
    solve_w,
    w_asymptotic,
    xi_iterate,
)
from renbo.errors import ConvergenceError, DomainError
from renbo.specfun import EULER_GAMMA, EXP_GAMMA, bessel_k

separations = st.floats(min_value=1e-3, max_value=20.0)


@given(separations)
def test_residual(u):
    w = solve_w(u)
    assert w >= 1.0
    assert abs(math.log(w) - bessel_k(0, w * u)) < 1e-12


@settings(max_examples=50)
@given(separations, separations)
def test_w_decreasing(a, b):
    lo, hi = sorted((a, b))
    if hi > lo * (1 + 1e-6):
        assert solve_w(hi) < solve_w(lo)


def test_far_limit():
    assert abs(solve_w(20.0) - 1.0) < 1e-8
    assert solve_w(800.0) == 1.0  # K0 underflow branch


@pytest.mark.parametrize("u", [0.05, 0.3, 1.0, 4.0])
def test_derivatives_against_differences(u):
    h = 1e-5 * u
    p = binding_point(u)
    fd1 = (solve_w(u + h) - solve_w(u - h)) / (2 * h)
    h2 = 1e-4 * u
    fd2 = (solve_w(u + h2) - 2 * p.w + solve_w(u - h2)) / h2**2
    assert dw_du(p) == pytest.approx(fd1, rel=1e-7)
    assert d2w_du2(p) == pytest.approx(fd2, rel=1e-4)
    assert p.dw == dw_du(p) and p.d2w == d2w_du2(p)


def test_small_u_laws():
    p = binding_point(1e-4)
    assert p.u * p.dw / p.w == pytest.approx(-0.5, abs=1e-3)
    assert p.u**2 * p.d2w / p.w == pytest.approx(0.75, abs=1e-3)
    assert p.w**2 * p.u * EXP_GAMMA / 2 == pytest.approx(1.0, abs=2e-4)


def test_asymptotic_orders():
    u = 1e-3
    w2 = solve_w(u) ** 2
    e0 = abs(w_asymptotic(u, 0) / w2 - 1)
    e1 = abs(w_asymptotic(u, 1) / w2 - 1)
    assert e1 < e0 < 2e-3


def test_asymptotic_warns_outside_window():
    with pytest.warns(UserWarning):
        w_asymptotic(0.5)


def test_xi_iteration_fixed_point():
    x = 1e-3
    xi = xi_iterate(x, 50)
    rhs = -0.25 * math.exp(-EULER_GAMMA) * x * math.log(x)
    assert math.log(xi * EXP_GAMMA / 2) == pytest.approx(rhs * xi, abs=1e-14)
    for bad in (3.0, 0.0):
        with pytest.raises(DomainError):
            xi_iterate(bad, 5)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_domain(bad):
    with pytest.raises(DomainError):
        solve_w(bad)


def test_tolerance_domain():
    with pytest.raises(DomainError):
        solve_w(1.0, tol=1e-16)


def test_reduced_params():
    p = PhysicalParams.reduced(1000.0)
    assert p.m_star == pytest.approx(0.5, rel=1e-15)
    assert p.zeta0 == pytest.approx(1.0, rel=1e-15)
    assert p.g == pytest.approx(2 / 1001, rel=1e-14)
    assert p.lambda_ratio == pytest.approx(1001 / 2, rel=1e-14)
    # z0 = hbar^2 / (M alpha) = (e^gamma / 2) g zeta0
    assert p.z0_over_zeta0 == pytest.approx(EXP_GAMMA / 2 * p.g, rel=1e-14)


@given(st.floats(1.0, 1e6), st.floats(0.1, 10.0), st.floats(0.1, 10.0), st.floats(0.1, 10.0))
def test_dimensional_scales(ratio, m, hbar, eps):
    p = PhysicalParams(m=m, M=ratio * m, hbar=hbar, epsilon=eps)
    assert p.alpha == pytest.approx(2 * hbar * eps / (math.sqrt(2 * p.m_star) * EXP_GAMMA), rel=1e-14)
    assert p.z0 / p.zeta0 == pytest.approx(EXP_GAMMA / 2 * p.g, rel=1e-12)


def test_params_validation():
    with pytest.raises(DomainError):
        PhysicalParams(m=2.0, M=1.0)
    with pytest.raises(DomainError):
        PhysicalParams.reduced(0.5)
