import math

import pytest

from renbo import heavy, pert
from renbo.binding import PhysicalParams
from renbo.specfun import EULER_GAMMA, EXP_GAMMA

B2 = 5.0 / 12.0
E2G = math.exp(2 * EULER_GAMMA)


def fixed_mstar(M, mstar=0.5):
    return PhysicalParams(m=1.0 / (1.0 / mstar - 1.0 / M), M=M)


@pytest.mark.parametrize("ratio", [1e2, 1e3, 1e4])
def test_closed_forms_match_quadrature(ratio):
    reps = pert.all_corrections(PhysicalParams.reduced(ratio), B2)
    assert [r.label for r in reps] == list(pert.LABELS)
    for r in reps:
        assert r.agrees, (r.label, r.discrepancy)


def test_a1_closed_value_independent_of_mass():
    vals = [pert.expect_a1(PhysicalParams.reduced(r), B2).closed for r in (10.0, 1e3, 1e5)]
    for v in vals:
        assert v == pytest.approx(pert.expect_a1_closed(B2), rel=1e-13)


def test_doubling_mass_shifts_log_term():
    a = pert.binding_log_correction(fixed_mstar(1e3), B2).closed
    b = pert.binding_log_correction(fixed_mstar(2e3), B2).closed
    assert b - a == pytest.approx(-math.log(2) / (2 * E2G), abs=1e-13)


def test_large_mass_limits():
    # the remainder relative to the leading log is a pure constant over ln(M/m*)
    devs = {"binding_log": [], "b": [], "mixed1": []}
    for ratio in (1e4, 1e8, 1e16):
        p = fixed_mstar(ratio * 0.5)
        lg = math.log(p.M / p.m_star)
        lead = 1.0 / (1 + 2 * math.sqrt(B2)) ** 2 / E2G
        devs["binding_log"].append(lg * (pert.binding_log_correction(p, B2).closed / (-lg / (2 * E2G)) - 1))
        devs["b"].append(lg * (pert.expect_b(p, B2).closed / (-4 * lead * lg) - 1))
        devs["mixed1"].append(lg * (pert.mixed_gradient_first(p, B2).closed / (2 * lead * lg) - 1))
    for key, d in devs.items():
        assert max(d) - min(d) < 1e-9, key


def test_b_leading_helper():
    p = fixed_mstar(1e16)
    assert pert.expect_b(p, B2).closed / pert.expect_b_leading(p, B2) == pytest.approx(1.0, abs=0.05)


def test_small_terms_shrink_with_mass():
    cs = [pert.expect_c(PhysicalParams.reduced(r), B2).closed for r in (1e2, 1e3, 1e4)]
    m2 = [pert.mixed_gradient_second(PhysicalParams.reduced(r), B2).closed for r in (1e2, 1e3, 1e4)]
    assert all(v > 0 for v in cs)
    assert cs[0] > cs[1] > cs[2]
    assert abs(m2[0]) > abs(m2[1]) > abs(m2[2])


def test_order_hierarchy():
    p = PhysicalParams.reduced(1e3)
    r = {x.label: abs(x.closed) for x in pert.all_corrections(p, B2)}
    e0 = abs(heavy.energy_level(0, p, B2).energy_ratio)
    assert r["c"] < r["a1"] < r["b"] < e0
    assert r["binding_log"] < e0


def test_anticommutator_shift():
    p = PhysicalParams.reduced(1e3)
    ref = p.g / (2 * EXP_GAMMA) * heavy.expect_inv_z(p, B2)
    assert pert.anticommutator_shift(p, B2) == pytest.approx(ref, rel=1e-10)


def test_scale_constant_reported():
    rep = pert.expect_b(PhysicalParams.reduced(1e3), B2, c=2.0)
    assert rep.scale_c == 2.0 and rep.agrees
