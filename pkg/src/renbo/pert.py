"""First-order corrections to the heavy ground-state energy.

Each correction is evaluated twice: from the closed-form ground-state
moments and by direct quadrature over the density 2 pi z R_0^2.  Values are
in eps^2 units with the reduced convention hbar = eps = 2m* = 1, where the
light-length scale zeta0 is 1 and ln(c z) with c = e^gamma / 2 is the
logarithm carried by K_0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import heavy
from .binding import PhysicalParams
from .specfun import EULER_GAMMA, EXP_GAMMA

SCALE_C = EXP_GAMMA / 2.0
E2G = math.exp(2.0 * EULER_GAMMA)

LABELS = ("binding_log", "a1", "b", "c", "mixed1", "mixed2")


@dataclass(frozen=True)
class CorrectionReport:
    label: str
    closed: float
    quadrature: float
    order_tag: str
    scale_c: float = SCALE_C

    @property
    def discrepancy(self):
        return abs(self.closed - self.quadrature)

    @property
    def agrees(self):
        return self.discrepancy <= 1e-9 * max(1.0, abs(self.closed))


def _log(c):
    return lambda z: math.log(c * z)


def binding_log_correction(params: PhysicalParams, beta2, c=SCALE_C):
    """<ln(c z)> / (2 e^{2 gamma}); grows like -ln(M/m*) / (2 e^{2 gamma})."""
    closed = heavy.expect_log_z(params, beta2, c) / (2.0 * E2G)
    quad = heavy.density_moment(params, beta2, _log(c)) / (2.0 * E2G)
    return CorrectionReport("binding_log", closed, quad, "ln(M/m*)", c)


def expect_a1(params: PhysicalParams, beta2, c=SCALE_C):
    """g <2 / (e^gamma z)>, which is 8 / (e^{2 gamma} (1 + 2 beta)^2) for any M."""
    g = params.g
    closed = g * 2.0 / EXP_GAMMA * heavy.expect_inv_z(params, beta2)
    quad = g * 2.0 / EXP_GAMMA * heavy.density_moment(params, beta2, lambda z: 1.0 / z)
    return CorrectionReport("a1", closed, quad, "1", c)


def expect_a1_closed(beta2):
    return 8.0 / (E2G * (1.0 + 2.0 * math.sqrt(beta2)) ** 2)


def expect_b(params: PhysicalParams, beta2, c=SCALE_C):
    """g <ln(c z) / z> / e^gamma."""
    g = params.g
    closed = g / EXP_GAMMA * heavy.expect_log_over_z(params, beta2, c)
    quad = g / EXP_GAMMA * heavy.density_moment(params, beta2, lambda z: math.log(c * z) / z)
    return CorrectionReport("b", closed, quad, "ln(M/m*)", c)


def expect_b_leading(params: PhysicalParams, beta2):
    """-4 ln(M/m*) / (e^{2 gamma} (1 + 2 beta)^2)."""
    return -4.0 * math.log(params.M / params.m_star) / (E2G * (1.0 + 2.0 * math.sqrt(beta2)) ** 2)


def expect_c(params: PhysicalParams, beta2, c=SCALE_C):
    """g <ln^2(c z)> / e^{2 gamma}."""
    g = params.g
    closed = g / E2G * heavy.expect_log2_z(params, beta2, c)
    quad = g / E2G * heavy.density_moment(params, beta2, lambda z: math.log(c * z) ** 2)
    return CorrectionReport("c", closed, quad, "(m*/M) ln^2(M/m*)", c)


def _d_density(params, beta2):
    """d/dz R_0(z)^2 in closed form: R_0^2 (2 beta / z - a)."""
    beta = math.sqrt(beta2)
    a = 2.0 / (params.z0 * (1.0 + 2.0 * beta))
    C = heavy.normalization_constant(0, beta2, params.z0)

    def dR2(z):
        if z == 0.0:
            return 0.0
        r = a * z
        return C * C * r ** (2.0 * beta) * math.exp(-r) * (2.0 * beta / z - a)

    return dR2


def _ground_scale(params, beta2):
    return params.z0 * (0.5 + math.sqrt(beta2))


def mixed_gradient_first(params: PhysicalParams, beta2, c=SCALE_C):
    """The mixed-gradient term g/(2 e^gamma) 2 pi int z (R_0^2)' ln(c z) dz.

    Integrating by parts turns it into -g/(2 e^gamma) (<1/z> + <ln(c z)/z>);
    the quadrature value uses the unintegrated form.
    """
    pref = params.g / (2.0 * EXP_GAMMA)
    closed = -pref * (heavy.expect_inv_z(params, beta2) + heavy.expect_log_over_z(params, beta2, c))
    dR2 = _d_density(params, beta2)
    quad = pref * heavy.radial_integral(
        lambda z: 2.0 * math.pi * z * dR2(z) * math.log(c * z) if z > 0.0 else 0.0,
        _ground_scale(params, beta2),
    )
    return CorrectionReport("mixed1", closed, quad, "ln(M/m*)", c)


def mixed_gradient_second(params: PhysicalParams, beta2, c=SCALE_C):
    """g/(4 e^{2 gamma}) (<ln(c z)> + <ln^2(c z)>).

    Checked against -g/(8 e^{2 gamma}) 2 pi int z^2 (R_0^2)' ln^2(c z) dz.
    """
    pref = params.g / (4.0 * E2G)
    closed = pref * (heavy.expect_log_z(params, beta2, c) + heavy.expect_log2_z(params, beta2, c))
    dR2 = _d_density(params, beta2)
    quad = -0.5 * pref * heavy.radial_integral(
        lambda z: 2.0 * math.pi * z * z * dR2(z) * math.log(c * z) ** 2 if z > 0.0 else 0.0,
        _ground_scale(params, beta2),
    )
    return CorrectionReport("mixed2", closed, quad, "(m*/M) ln^2(M/m*)", c)


def anticommutator_shift(params: PhysicalParams, beta2):
    """Change in the first mixed term if f d/dz is replaced by (f d/dz + d/dz f)/2.

    With f = (g/e^gamma) ln(c z) the shift is <f'>/2 = g <1/z> / (2 e^gamma);
    computed by quadrature only, as a diagnostic.
    """
    return params.g / (2.0 * EXP_GAMMA) * heavy.density_moment(params, beta2, lambda z: 1.0 / z)


def all_corrections(params: PhysicalParams, beta2, c=SCALE_C):
    return [
        binding_log_correction(params, beta2, c),
        expect_a1(params, beta2, c),
        expect_b(params, beta2, c),
        expect_c(params, beta2, c),
        mixed_gradient_first(params, beta2, c),
        mixed_gradient_second(params, beta2, c),
    ]
