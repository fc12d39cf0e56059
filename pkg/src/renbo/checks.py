"""Invariant suite behind ``renbo verify`` and the acceptance tests.

Each check returns a ``Check`` with the measured value and the tolerance
it was held to.  Findings are reported numbers that are not pass/fail.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import effpot, heavy, lightfield, pert
from .binding import PhysicalParams, binding_point, d2w_du2, dw_du, solve_w
from .specfun import EXP_GAMMA, trigamma

FIT_WINDOWS = ((1e-4, 1e-3), (1e-3, 1e-2))
QUAD_US = (0.2, 0.5, 1.0, 2.0, 5.0)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float
    passed: bool
    criterion: int = 0

    def as_dict(self):
        return {
            "criterion": self.criterion,
            "name": self.name,
            "value": self.value,
            "tol": self.tol,
            "passed": self.passed,
        }


def _check(name, value, tol, criterion, override=None):
    if override is not None:
        tol = min(tol, override)
    value = float(value)
    return Check(name, value, tol, bool(math.isfinite(value) and value <= tol), criterion)


def _max_abs(xs):
    return max(abs(float(x)) for x in xs)


# 1 ------------------------------------------------------------------------


def binding_checks(tol=None):
    us = np.geomspace(1e-3, 20.0, 200)
    pts = [binding_point(u) for u in us]
    ws = np.array([p.w for p in pts])
    out = [
        _check("binding residual max |ln w - K0(wu)|", _max_abs(p.residual for p in pts), 1e-12, 1, tol),
        # w must strictly decrease: largest forward difference must be negative
        _check("binding monotone: max w[i+1]-w[i] (< 0)", max(0.0, np.max(np.diff(ws))), 0.0, 1, None),
        _check("binding w(20) - 1", abs(ws[-1] - 1.0), 1e-8, 1, tol),
        _check(
            "binding |w^2 u e^gamma / 2 - 1| at u=1e-3",
            abs(ws[0] ** 2 * 1e-3 * EXP_GAMMA / 2.0 - 1.0),
            0.02,
            1,
            tol,
        ),
    ]
    return out


# 2 ------------------------------------------------------------------------


def fd_first(u, h=1e-5):
    hh = h * u
    return (solve_w(u + hh) - solve_w(u - hh)) / (2.0 * hh)


def fd_second(u, h=1e-4):
    hh = h * u
    return (solve_w(u + hh) - 2.0 * solve_w(u) + solve_w(u - hh)) / (hh * hh)


def derivative_checks(tol=None):
    us = np.geomspace(0.05, 5.0, 12)
    e1 = e2 = 0.0
    for u in us:
        p = binding_point(u)
        e1 = max(e1, abs(dw_du(p) - fd_first(u)) / abs(fd_first(u)))
        e2 = max(e2, abs(d2w_du2(p) - fd_second(u)) / abs(fd_second(u)))
    p = binding_point(1e-3)
    return [
        _check("dw/du vs central difference (rel)", e1, 1e-6, 2, tol),
        _check("d2w/du2 vs second difference (rel)", e2, 1e-4, 2, tol),
        _check("u dw / w + 1/2 at u=1e-3", abs(p.u * p.dw / p.w + 0.5), 1e-2, 2, tol),
        _check("u^2 d2w / w - 3/4 at u=1e-3", abs(p.u**2 * p.d2w / p.w - 0.75), 1e-2, 2, tol),
    ]


# 3 ------------------------------------------------------------------------


def quadrature_checks(tol=None, us=QUAD_US):
    ov = gr = nm = dx = du = 0.0
    for u in us:
        b = binding_point(u)
        s = lightfield.light_state(b)
        spec = lightfield.QuadSpec.for_state(s, tol=1e-10)
        q = lambda f: lightfield.quad2d(f, u, spec).value  # noqa: E731
        ov = max(ov, abs(q(lightfield.overlap_integrand(s)) - lightfield.overlap_integral(s)))
        gr = max(gr, abs(q(lightfield.grad_nu_integrand(s)) - lightfield.grad_nu_integral(s)))
        nm = max(nm, abs(q(lightfield.density_integrand(s)) - 1.0))
        dx = max(dx, abs(q(lightfield.phi_dx_phi_integrand(s, 0))))
        du = max(du, abs(q(lightfield.phi_du_phi_integrand(s, b))))
    return [
        _check("overlap closed form vs quad2d (abs)", ov, 1e-7, 3, tol),
        _check("grad_nu closed form vs quad2d (abs)", gr, 1e-7, 3, tol),
        _check("normalization |int phi^2 - 1|", nm, 1e-8, 3, tol),
        _check("int phi d_x phi (exact differential)", dx, 1e-9, 3, tol),
        _check("int phi d_u phi (exact differential)", du, 1e-9, 3, tol),
    ]


# 4, 5 ---------------------------------------------------------------------

ANCHORED = (
    ("(1_c)", effpot.term_1c, 0.25),
    ("(2)", effpot.term_2, -0.25),
    ("(3_a)", effpot.term_3a, 0.5),
)


def fit_over_windows(f, windows=FIT_WINDOWS):
    return [effpot.extract_coeff(f, 2, True, w) for w in windows]


def spread(fits):
    vals = [f.value for f in fits]
    return max(max(vals) - min(vals), max(f.error for f in fits))


def coefficient_checks(tol=None):
    out = []
    for label, f, target in ANCHORED:
        fits = fit_over_windows(f)
        worst = max(abs(fit.value - target) for fit in fits)
        out.append(_check(f"{label} 1/u^2 coefficient vs {target:+.3f}", worst, 1e-3, 4, tol))
    return out


def adjudication(windows=FIT_WINDOWS):
    """Fits for (1_d), its two pieces and the total; reported, not asserted."""
    fits = {
        "(1_d)": fit_over_windows(effpot.term_1d, windows),
        "(1_d) p2 piece": fit_over_windows(lambda u: effpot.term_1d_pieces(u)[0], windows),
        "(1_d) gradient piece": fit_over_windows(lambda u: effpot.term_1d_pieces(u)[1], windows),
        "total": fit_over_windows(effpot.total_term, windows),
    }
    return fits


def adjudication_checks(fits, tol=None):
    return [
        _check("(1_d) coefficient stable across windows", spread(fits["(1_d)"]), 1e-3, 5, tol),
        _check("total coefficient stable across windows", spread(fits["total"]), 1e-3, 5, tol),
    ]


def adjudication_findings(fits):
    d = fits["(1_d)"][0].value
    tot = fits["total"][0].value
    gp = fits["(1_d) gradient piece"][0].value
    return [
        {
            "topic": "(1_d) coefficient",
            "extracted": d,
            "claimed": effpot.CLAIMED_T1D,
            "gradient_piece_extracted": gp,
            "gradient_piece_claimed": 2.0 / 3.0,
            "note": "gradient piece tends to 1/3 because D -> 2 and x^3 K3 -> 8; claimed 2/3",
        },
        {
            "topic": "centrifugal coefficient beta^2",
            "extracted": tot,
            "claimed": effpot.CLAIMED_BETA2,
            "note": "spectrum defaults to the claimed value; --beta2 extracted substitutes the fit",
        },
    ]


# 6 ------------------------------------------------------------------------


def spectrum_checks(tol=None, levels=4):
    worst = 0.0
    for beta2 in (1.0 / 12.0, 5.0 / 12.0, 0.0):
        for n in range(levels):
            worst = max(worst, abs(heavy.shoot_eigenvalue(n, beta2) - heavy.k_analytic(n, beta2)))
    p = PhysicalParams.reduced(1000.0)
    lv = heavy.energy_level(0, p, 5.0 / 12.0)
    # dimensional route: -alpha^2 M / (4 hbar^2 K^2) in units of eps^2
    dimensional = -(p.alpha**2) * p.M / (4.0 * p.hbar**2 * lv.K_analytic**2) / p.energy_unit
    return [
        _check("shooting K vs n + 1/2 + beta (n<=3, beta^2 in {0,1/12,5/12})", worst, 1e-6, 6, tol),
        _check(
            "E_0 ratio vs -alpha^2 M / (4 hbar^2 K^2) (rel)",
            abs(lv.energy_ratio - dimensional) / abs(dimensional),
            1e-13,
            6,
            tol,
        ),
    ]


def energy_finding(params, beta2):
    e0 = heavy.energy_level(0, params, beta2).energy_ratio
    eg = heavy.ground_state_line(params, beta2)
    return {
        "topic": "ground-state energy line",
        "E0_from_level_formula": e0,
        "E_g_line": eg,
        "ratio": e0 / eg,
        "note": "the (1+2 beta)^2 ground-state line is a quarter of E_0; E_0 is the shooting-validated value",
    }


def z0_finding(params):
    return {
        "topic": "heavy length z0",
        "z0_over_zeta0": params.z0_over_zeta0,
        "g": params.g,
        "ratio_to_g": params.z0_over_zeta0 / params.g,
        "note": "z0 = hbar^2/(M alpha) gives (e^gamma/2) g zeta0, not g zeta0",
    }


# 7 ------------------------------------------------------------------------


def expectation_checks(tol=None):
    beta2 = 5.0 / 12.0
    p = PhysicalParams.reduced(1000.0)
    closed = heavy.expect_z(p, beta2)
    numeric = heavy.density_moment(p, beta2, lambda z: z)
    ratios = []
    for mr in (1e2, 1e3, 1e4):
        q = PhysicalParams.reduced(mr)
        ratios.append(heavy.expect_z(q, beta2) / q.zeta0 / q.g)
    return [
        _check("<z> closed form vs quadrature (rel)", abs(closed - numeric) / closed, 1e-10, 7, tol),
        _check("<z>/z0 - 3.7698", abs(closed / p.z0 - 3.7698), 1e-3, 7, tol),
        _check("<z>/zeta0 / g spread over M/m", (max(ratios) - min(ratios)) / max(ratios), 1e-12, 7, tol),
    ]


# 8 ------------------------------------------------------------------------


def correction_checks(tol=None):
    beta2 = 5.0 / 12.0
    p = PhysicalParams.reduced(1000.0)
    reps = {r.label: r for r in pert.all_corrections(p, beta2)}
    worst = max(r.discrepancy / max(1.0, abs(r.closed)) for r in reps.values())
    e0 = abs(heavy.energy_level(0, p, beta2).energy_ratio)
    chain = (
        abs(reps["c"].closed) < abs(reps["a1"].closed) < abs(reps["b"].closed) < e0
        and abs(reps["binding_log"].closed) < e0
    )
    var = heavy.expect_log2_z(p, beta2) - heavy.expect_log_z(p, beta2) ** 2
    var_q = heavy.density_moment(p, beta2, lambda z: math.log(pert.SCALE_C * z) ** 2) - (
        heavy.density_moment(p, beta2, lambda z: math.log(pert.SCALE_C * z)) ** 2
    )
    z2 = trigamma(2.0 * math.sqrt(beta2) + 2.0)
    return [
        _check("corrections closed vs quadrature (max)", worst, 1e-9, 8, tol),
        _check("order hierarchy |c|<|a1|<|b|<|E0|, |log|<|E0| (0 = holds)", 0.0 if chain else 1.0, 0.0, 8, None),
        _check("<ln^2> - <ln>^2 - zeta(2, 2beta+2) (quadrature)", abs(var_q - z2), 1e-10, 8, tol),
        _check("<ln^2> - <ln>^2 - zeta(2, 2beta+2) (closed)", abs(var - z2), 1e-10, 8, tol),
    ]


# 9 ------------------------------------------------------------------------

CROSS_US = (1e-1, 1e-2, 1e-3)


def cross_checks(tol=None):
    """The brackets cancel identically, so u*coefficient must sit at roundoff
    relative to the size of the individual brackets, and must not grow."""
    vals, scales = [], []
    for u in CROSS_US:
        pieces = effpot.cross_term_pieces(u)
        vals.append(abs(u * effpot.cross_term_coefficient(u)))
        scales.append(u * max(abs(x) for x in pieces))
    rel = max(v / s for v, s in zip(vals, scales))
    growth = max(0.0, *(vals[i + 1] - vals[i] - 1e-15 * scales[i + 1] for i in range(2)))
    return [
        _check("u * cross coefficient relative to its brackets", rel, 1e-13, 9, tol),
        _check("u * cross coefficient non-increasing as u -> 0 (excess)", growth, 0.0, 9, None),
    ]


def run_all(tol=None):
    fits = adjudication()
    checks = (
        binding_checks(tol)
        + derivative_checks(tol)
        + quadrature_checks(tol)
        + coefficient_checks(tol)
        + adjudication_checks(fits, tol)
        + spectrum_checks(tol)
        + expectation_checks(tol)
        + correction_checks(tol)
        + cross_checks(tol)
    )
    return checks, fits
