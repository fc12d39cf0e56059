import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from renbo import heavy
from renbo.binding import PhysicalParams
from renbo.errors import ConvergenceError, DomainError
from renbo.specfun import EULER_GAMMA, EXP_GAMMA, trigamma

B2 = 5.0 / 12.0
P = PhysicalParams.reduced(1000.0)


def test_k_analytic_value():
    assert heavy.k_analytic(0, B2) == pytest.approx(1.1454972244, abs=1e-10)


@pytest.mark.parametrize("n", [0, 1])
def test_shooting_matches_rule(n):
    assert heavy.shoot_eigenvalue(n, B2) == pytest.approx(n + 0.5 + math.sqrt(B2), abs=1e-8)


def test_shooting_coulomb_limit():
    assert heavy.shoot_eigenvalue(0, 0.0) == pytest.approx(0.5, abs=1e-8)


def test_shooting_bracket_failure(monkeypatch):
    monkeypatch.setattr(heavy, "shooting_mismatch", lambda K, b2, n, rtol=1e-12: 1.0)
    with pytest.raises(ConvergenceError) as err:
        heavy.shoot_eigenvalue(0, B2)
    assert "window" in err.value.detail


def test_shooting_validation():
    with pytest.raises(DomainError):
        heavy.shoot_eigenvalue(-1, B2)
    with pytest.raises(DomainError):
        heavy.shoot_eigenvalue(0, B2, tol=1e-12)


def test_energy_levels():
    e = [heavy.energy_level(n, P, B2).energy_ratio for n in range(4)]
    assert all(b > a for a, b in zip(e, e[1:]))
    beta = math.sqrt(B2)
    assert e[0] / e[1] == pytest.approx((1.5 + beta) ** 2 / (0.5 + beta) ** 2, rel=1e-14)
    assert e[0] == pytest.approx(-P.lambda_ratio * math.exp(-2 * EULER_GAMMA) / (0.5 + beta) ** 2, rel=1e-14)


def test_ground_state_line_is_a_quarter():
    assert heavy.energy_level(0, P, B2).energy_ratio / heavy.ground_state_line(P, B2) == pytest.approx(4.0)


@given(st.floats(1.0, 1e6))
def test_energy_scaling_with_mass(ratio):
    p = PhysicalParams.reduced(ratio)
    assert heavy.energy_level(0, p, B2).energy_ratio * p.g == pytest.approx(
        -math.exp(-2 * EULER_GAMMA) / heavy.k_analytic(0, B2) ** 2, rel=1e-12
    )


def test_spectrum_result_discrepancy():
    r = heavy.energy_level(0, P, B2, shoot=True)
    assert r.discrepancy < 1e-6
    assert heavy.energy_level(0, P, B2).discrepancy is None


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_wavefunction_normalization_and_nodes(n):
    wave = heavy.radial_wavefunction(n, B2, P.z0)
    assert wave.interior_zeros() == n
    norm = heavy.density_moment(P, B2, lambda z: 1.0, n)
    assert norm == pytest.approx(1.0, abs=1e-10)


def test_ground_normalization_closed_form():
    beta = math.sqrt(B2)
    C = math.sqrt(2 / (math.pi * math.gamma(2 * beta + 2) * P.z0**2 * (1 + 2 * beta) ** 2))
    assert heavy.normalization_constant(0, B2, P.z0) == pytest.approx(C, rel=1e-13)


def test_regular_at_origin():
    wave = heavy.radial_wavefunction(1, B2)
    z = np.array([1e-8, 1e-7])
    ratio = wave(z) / z ** math.sqrt(B2)
    assert ratio[0] == pytest.approx(ratio[1], rel=1e-5)


def test_expect_z():
    ez = heavy.expect_z(P, B2)
    assert ez / P.z0 == pytest.approx(3.76982, abs=1e-5)
    assert heavy.density_moment(P, B2, lambda z: z) == pytest.approx(ez, rel=1e-10)


def test_expect_z_scales_with_g():
    vals = []
    for ratio in (1e2, 1e3, 1e4):
        p = PhysicalParams.reduced(ratio)
        vals.append(heavy.expect_z(p, B2) / p.zeta0 / p.g)
    assert max(vals) - min(vals) < 1e-12 * max(vals)


@pytest.mark.parametrize("c", [EXP_GAMMA / 2, 1.0, 37.0])
def test_log_moments(c):
    beta = math.sqrt(B2)
    lz = heavy.expect_log_z(P, B2, c)
    l2 = heavy.expect_log2_z(P, B2, c)
    assert lz == pytest.approx(heavy.density_moment(P, B2, lambda z: math.log(c * z)), abs=1e-10)
    assert l2 == pytest.approx(heavy.density_moment(P, B2, lambda z: math.log(c * z) ** 2), abs=1e-10)
    assert lz - heavy.expect_log_z(P, B2, 1.0) == pytest.approx(math.log(c), abs=1e-13)
    assert l2 - lz**2 == pytest.approx(trigamma(2 * beta + 2), abs=1e-12)


def test_inverse_moments():
    assert heavy.expect_inv_z(P, B2) == pytest.approx(
        heavy.density_moment(P, B2, lambda z: 1 / z), rel=1e-10
    )
    c = EXP_GAMMA / 2
    assert heavy.expect_log_over_z(P, B2, c) == pytest.approx(
        heavy.density_moment(P, B2, lambda z: math.log(c * z) / z), rel=1e-10
    )


@settings(max_examples=10, deadline=None)
@given(st.floats(0.05, 3.0))
def test_moments_any_beta(beta2):
    assert heavy.density_moment(P, beta2, lambda z: 1.0) == pytest.approx(1.0, abs=1e-10)
    assert heavy.density_moment(P, beta2, lambda z: z) == pytest.approx(heavy.expect_z(P, beta2), rel=1e-10)
