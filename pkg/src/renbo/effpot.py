"""Terms of the averaged heavy-particle equation and their small-u coefficients.

Every term is an exact function of u built from the binding curve and the
light-state closed forms.  Energies are in units of g eps^2 with g = 2m*/M.
Small-u singular coefficients are extracted numerically by ``extract_coeff``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import lightfield as lf
from .binding import binding_point
from .errors import DomainError
from .specfun import EXP_GAMMA, bessel_k

CLAIMED_BETA2 = 5.0 / 12.0
CLAIMED_T1D = -1.0 / 12.0
STABILITY = 1e-3


@dataclass(frozen=True)
class TermBreakdown:
    u: float
    t1b: float
    t1c: float
    t1d: float
    t2: float
    t3a: float
    t3b: float
    cross_coeff: float

    @property
    def total(self):
        return math.fsum((self.t1b, self.t1c, self.t1d, self.t2, self.t3a, self.t3b))

    def as_dict(self):
        return {
            "u": self.u,
            "t1b": self.t1b,
            "t1c": self.t1c,
            "t1d": self.t1d,
            "t2": self.t2,
            "t3a": self.t3a,
            "t3b": self.t3b,
            "total": self.total,
            "cross_coeff": self.cross_coeff,
        }


@dataclass(frozen=True)
class CoeffFit:
    power: int
    include_log: bool
    value: float
    error: float
    window: tuple
    aux: dict = field(default_factory=dict)

    @property
    def stable(self):
        return self.error < STABILITY * max(abs(self.value), 1e-300)


def _setup(u):
    b = binding_point(u)
    return b, lf.light_state(b)


def term_1b(u):
    """-(A^2 overlap) w u dw; it is O(w^2), below the 1/u^2 terms."""
    b, s = _setup(u)
    return -s.A2 * lf.overlap_integral(s) * s.w * s.u * b.dw


def term_1c(u):
    b, s = _setup(u)
    return -0.5 * (b.dw / b.u + b.d2w) * lf.p1(s)


def term_1d_pieces(u):
    """The p2 piece and the gradient-overlap piece of term (1_d)."""
    b, s = _setup(u)
    dw2 = b.dw * b.dw
    return -0.5 * dw2 * lf.p2(s), dw2 * s.A2 * lf.grad_nu_integral(s)


def term_1d(u):
    return math.fsum(term_1d_pieces(u))


def term_2(u):
    b, s = _setup(u)
    return -lf.logA_laplacian(s, b)


def term_3a(u):
    b, s = _setup(u)
    return -lf.logA_first_derivative(s, b) * b.dw * lf.p1(s)


def term_3b(u):
    b, s = _setup(u)
    return 2.0 * lf.logA_first_derivative(s, b) * s.A2 * math.pi * s.u * bessel_k(0, s.w * s.u)


def cross_term_pieces(u):
    """The three brackets whose negated sum multiplies dPsi/du.

    The first two come from the normalization and the overlap of eta_pm
    with its own u-derivative, the last from the w-dependence of A.
    """
    b, s = _setup(u)
    return (
        2.0 * lf.logA_first_derivative(s, b),
        s.A2 * math.pi * (-2.0 * s.u * bessel_k(0, s.w * s.u)),
        b.dw * lf.p1(s),
    )


def cross_term_coefficient(u):
    return -math.fsum(cross_term_pieces(u))


def term_breakdown(u):
    b, s = _setup(u)
    dw, d2w = b.dw, b.d2w
    L1 = lf.logA_first_derivative(s, b)
    P1 = lf.p1(s)
    k0 = bessel_k(0, s.w * s.u)
    dw2 = dw * dw
    pieces = (2.0 * L1, -2.0 * math.pi * s.A2 * s.u * k0, dw * P1)
    return TermBreakdown(
        u=s.u,
        t1b=-s.A2 * lf.overlap_integral(s) * s.w * s.u * dw,
        t1c=-0.5 * (dw / s.u + d2w) * P1,
        t1d=math.fsum((-0.5 * dw2 * lf.p2(s), dw2 * s.A2 * lf.grad_nu_integral(s))),
        t2=-lf.logA_laplacian(s, b),
        t3a=-L1 * dw * P1,
        t3b=2.0 * L1 * s.A2 * math.pi * s.u * k0,
        cross_coeff=-math.fsum(pieces),
    )


def total_term(u):
    return term_breakdown(u).total


def _basis(us, power, include_log):
    cols = [us**-power]
    if power == 2:
        if include_log:
            cols.append(np.log(us) / us)
        cols.append(1.0 / us)
    elif include_log:
        cols.append(np.log(us))
    cols.append(np.ones_like(us))
    return np.column_stack(cols)


def _lsq(us, vals, power, include_log):
    basis = _basis(us, power, include_log)
    # scale rows by u^p so the singular column is O(1)
    scale = us**power
    coef, *_ = np.linalg.lstsq(basis * scale[:, None], vals * scale, rcond=None)
    return float(coef[0])


def extract_coeff(f, power=2, include_log=True, window=(1e-3, 1e-2), n=40):
    """Fit f(u) ~ c/u^p + lower terms on a log-spaced window and return c.

    For p = 2 the lower terms are ln(u)/u, 1/u and a constant; for p = 1
    they are ln u and a constant.  The error estimate is the change in c
    when the window is shrunk to its lower half (in log u).
    """
    if power not in (1, 2):
        raise DomainError(f"extract_coeff: power must be 1 or 2, got {power!r}")
    lo, hi = map(float, window)
    if not 0.0 < lo < hi <= 0.1:
        raise DomainError(f"extract_coeff: window must satisfy 0 < lo < hi <= 0.1, got {window}")
    us = np.geomspace(lo, hi, n)
    vals = np.array([f(u) for u in us], dtype=float)
    if not np.all(np.isfinite(vals)):
        raise DomainError("extract_coeff: evaluator returned non-finite values")
    c_full = _lsq(us, vals, power, include_log)
    half = us <= math.sqrt(lo * hi) * (1.0 + 1e-12)
    c_half = _lsq(us[half], vals[half], power, include_log)
    return CoeffFit(
        power=power,
        include_log=include_log,
        value=c_full,
        error=abs(c_full - c_half),
        window=(lo, hi),
        aux={"shrunk_value": c_half},
    )


def beta_squared(window=(1e-4, 1e-3), n=40):
    """Extracted 1/u^2 coefficient of the sum of all potential terms."""
    return extract_coeff(total_term, 2, True, window, n)


def v_eff(u, beta2=CLAIMED_BETA2, g=2.0 / 1001.0):
    """Leading effective potential in eps^2 units: Coulomb-like well plus centrifugal wall."""
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0.0):
        raise DomainError("v_eff: u must be > 0")
    out = -2.0 / (EXP_GAMMA * u) + g * beta2 / (u * u)
    return float(out) if out.ndim == 0 else out


def v_eff_minimum(beta2=CLAIMED_BETA2, g=2.0 / 1001.0):
    """Location of the minimum of v_eff: u = g beta^2 e^gamma."""
    return g * beta2 * EXP_GAMMA
