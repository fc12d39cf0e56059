"""Radial problem for the heavy separation with a Coulomb-like well and a 1/z^2 wall.

In the scaled variable r = z / (z0 K) the equation is

    R'' + R'/r - beta^2/r^2 R + K/r R - R/4 = 0,

whose normalizable solutions need K = n + 1/2 + beta.  ``shoot_eigenvalue``
finds K without using that rule.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad, solve_ivp
from scipy.optimize import brentq

from .binding import PhysicalParams
from .errors import ConvergenceError, DomainError
from .specfun import EULER_GAMMA, EXP_GAMMA, digamma, laguerre, log_gamma, trigamma

R0 = 1e-6
SCAN_STEP = 0.25
_FROB_TERMS = 12


@dataclass(frozen=True)
class SpectrumResult:
    n: int
    beta: float
    K_analytic: float
    energy_ratio: float
    K_shooting: float | None = None

    @property
    def discrepancy(self):
        if self.K_shooting is None:
            return None
        return abs(self.K_shooting - self.K_analytic)


@dataclass(frozen=True)
class RadialWave:
    n: int
    beta: float
    K: float
    z0: float
    C: float
    z: np.ndarray
    R: np.ndarray

    @property
    def scale(self):
        """Inverse length a with r = a z."""
        return 1.0 / (self.z0 * self.K)

    def __call__(self, z):
        return _radial(np.asarray(z, dtype=float), self.n, self.beta, self.K, self.z0, self.C)

    def interior_zeros(self):
        s = np.sign(self.R[self.R != 0.0])
        return int(np.count_nonzero(s[1:] != s[:-1]))


def _beta(beta2):
    if not (math.isfinite(beta2) and beta2 >= 0.0):
        raise DomainError(f"beta2 must be finite and >= 0, got {beta2!r}")
    return math.sqrt(beta2)


def _check_n(n):
    if int(n) != n or n < 0:
        raise DomainError(f"level index must be a non-negative integer, got {n!r}")
    return int(n)


def k_analytic(n, beta2):
    return _check_n(n) + 0.5 + _beta(beta2)


def energy_level(n, params: PhysicalParams, beta2, shoot=False, tol=1e-10):
    """delta E_n / eps^2 = -(M / 2m*) e^{-2 gamma} / K^2."""
    if beta2 <= 0.0:
        raise DomainError(f"energy_level: beta2 must be > 0, got {beta2!r}")
    K = k_analytic(n, beta2)
    ratio = -params.lambda_ratio * math.exp(-2.0 * EULER_GAMMA) / (K * K)
    Ks = shoot_eigenvalue(n, beta2, tol) if shoot else None
    return SpectrumResult(n=int(n), beta=math.sqrt(beta2), K_analytic=K, energy_ratio=ratio, K_shooting=Ks)


def ground_state_line(params: PhysicalParams, beta2):
    """The alternative ground-state expression with (1+2 beta)^2 in the denominator.

    It is a quarter of ``energy_level(0, ...)``; kept only so the two can be
    reported side by side.
    """
    return -params.lambda_ratio * math.exp(-2.0 * EULER_GAMMA) / (1.0 + 2.0 * _beta(beta2)) ** 2


# ---------------------------------------------------------------------------
# shooting


def _rhs(t, y, beta2, K):
    r = math.exp(t)
    return (y[1], (beta2 - K * r + 0.25 * r * r) * y[0])


def _frobenius(r, beta, K):
    """(R, dR/dlnr) of the regular solution divided by r^beta."""
    c = [1.0]
    for k in range(1, _FROB_TERMS):
        prev2 = c[k - 2] if k >= 2 else 0.0
        c.append((0.25 * prev2 - K * c[k - 1]) / (k * (k + 2.0 * beta)))
    R = sum(ck * r**k for k, ck in enumerate(c))
    P = sum(ck * (beta + k) * r**k for k, ck in enumerate(c))
    return R, P


def _legs(K, beta2, n, rtol, dense=False):
    beta = math.sqrt(beta2)
    rmax = 40.0 + 10.0 * n
    rm = 2.0 * (n + 1)
    kw = dict(args=(beta2, K), method="DOP853", rtol=rtol, atol=1e-300, dense_output=dense)
    out = solve_ivp(_rhs, (math.log(R0), math.log(rm)), _frobenius(R0, beta, K), **kw)
    # decaying branch r^{K-1/2} e^{-r/2} at the far end
    inn = solve_ivp(_rhs, (math.log(rmax), math.log(rm)), (1.0, (K - 0.5) - 0.5 * rmax), **kw)
    if out.status != 0 or inn.status != 0:
        raise ConvergenceError("shooting integration failed", K=K, message=out.message + inn.message)
    return out, inn


def shooting_mismatch(K, beta2, n, rtol=1e-12):
    """Sine of the angle between the outward and inward (R, R') at the match point."""
    out, inn = _legs(K, beta2, n, rtol)
    a = out.y[:, -1]
    b = inn.y[:, -1]
    return (a[1] * b[0] - a[0] * b[1]) / (math.hypot(*a) * math.hypot(*b))


def _count_nodes(K, beta2, n, rtol):
    out, inn = _legs(K, beta2, n, rtol, dense=True)
    nodes = 0
    for sol, (t0, t1) in ((out, out.t[[0, -1]]), (inn, inn.t[[-1, 0]])):
        ts = np.linspace(t0, t1, 4000)[1:-1]
        s = np.sign(sol.sol(ts)[0])
        nodes += int(np.count_nonzero(s[1:] != s[:-1]))
    return nodes


def shoot_eigenvalue(n, beta2, tol=1e-10):
    """Eigenvalue K of level n from two-sided shooting, without the quantization rule.

    K is scanned upward from near zero; every sign change of the mismatch is
    an eigenvalue, the n-th one is refined by Brent's method and its node
    count is checked.
    """
    n = _check_n(n)
    _beta(beta2)
    if tol < 1e-10:
        raise DomainError(f"shoot_eigenvalue: tol must be >= 1e-10, got {tol!r}")
    rtol = min(1e-12, tol * 1e-2)
    grid = np.arange(0.02, n + 2.5, SCAN_STEP)
    found = []
    prev_k, prev_m = grid[0], shooting_mismatch(grid[0], beta2, n, rtol)
    for k in grid[1:]:
        m = shooting_mismatch(k, beta2, n, rtol)
        if prev_m * m < 0.0:
            found.append((prev_k, k))
            if len(found) > n:
                break
        prev_k, prev_m = k, m
    if len(found) <= n:
        raise ConvergenceError(
            f"shoot_eigenvalue: only {len(found)} sign changes in K window",
            window=(float(grid[0]), float(grid[-1])),
        )
    lo, hi = found[n]
    K = brentq(shooting_mismatch, lo, hi, args=(beta2, n, rtol), xtol=tol * 1e-3, rtol=1e-15)
    nodes = _count_nodes(K, beta2, n, rtol)
    if nodes != n:
        raise ConvergenceError(f"shoot_eigenvalue: level {n} root has {nodes} nodes", K=K)
    return K


# ---------------------------------------------------------------------------
# wavefunctions and moments


def normalization_constant(n, beta2, z0):
    """C with int 2 pi z R^2 dz = 1 for R = C r^beta e^{-r/2} L_n^{2 beta}(r), r = z/(z0 K)."""
    n = _check_n(n)
    beta = _beta(beta2)
    K = n + 0.5 + beta
    log_c2 = (
        log_gamma(n + 1.0)
        - log_gamma(n + 2.0 * beta + 1.0)
        - math.log(2.0 * math.pi * (2.0 * n + 2.0 * beta + 1.0))
        - 2.0 * math.log(z0 * K)
    )
    return math.exp(0.5 * log_c2)


def _radial(z, n, beta, K, z0, C):
    r = z / (z0 * K)
    return C * r**beta * np.exp(-0.5 * r) * laguerre(n, 2.0 * beta, r)


def radial_wavefunction(n, beta2, z0=1.0, npts=400):
    """Sample R_n on a grid that is logarithmic near zero and linear beyond."""
    n = _check_n(n)
    beta = _beta(beta2)
    K = n + 0.5 + beta
    C = normalization_constant(n, beta2, z0)
    scale = z0 * K
    zmax = scale * (40.0 + 10.0 * n)
    z = np.unique(
        np.concatenate((np.geomspace(1e-8 * scale, scale, npts // 4), np.linspace(scale, zmax, npts)))
    )
    return RadialWave(n=n, beta=beta, K=K, z0=z0, C=C, z=z, R=_radial(z, n, beta, K, z0, C))


def _ground(params, beta2):
    beta = _beta(beta2)
    return beta, 2.0 / (params.z0 * (1.0 + 2.0 * beta))


def expect_z(params: PhysicalParams, beta2):
    """<z> in zeta0 units for the ground state: (beta + 1)(1 + 2 beta) z0."""
    beta, _ = _ground(params, beta2)
    return (beta + 1.0) * (1.0 + 2.0 * beta) * params.z0


def expect_inv_z(params: PhysicalParams, beta2):
    beta, a = _ground(params, beta2)
    return a / (2.0 * beta + 1.0)


def expect_log_z(params: PhysicalParams, beta2, c=EXP_GAMMA / 2.0):
    """<ln(c z)>; the default c turns c z into the argument of K_0's log."""
    beta, a = _ground(params, beta2)
    return digamma(2.0 * beta + 2.0) - math.log(a) + math.log(c)


def expect_log2_z(params: PhysicalParams, beta2, c=EXP_GAMMA / 2.0):
    beta, _ = _ground(params, beta2)
    return expect_log_z(params, beta2, c) ** 2 + trigamma(2.0 * beta + 2.0)


def expect_log_over_z(params: PhysicalParams, beta2, c=EXP_GAMMA / 2.0):
    """<ln(c z) / z>; the 1/z weight moves the digamma index down by one."""
    beta, a = _ground(params, beta2)
    return a / (2.0 * beta + 1.0) * (digamma(2.0 * beta + 1.0) - math.log(a) + math.log(c))


def ground_density(params: PhysicalParams, beta2):
    """z -> 2 pi z R_0(z)^2, the ground-state radial density."""
    beta = _beta(beta2)
    K = 0.5 + beta
    C = normalization_constant(0, beta2, params.z0)

    def rho(z):
        return 2.0 * math.pi * z * float(_radial(np.asarray(z), 0, beta, K, params.z0, C)) ** 2

    return rho


def radial_integral(f, scale, tail=200.0, with_error=False):
    """int_0^inf f(z) dz for integrands decaying on the length ``scale``.

    Tolerances are set near roundoff on purpose; quadpack's roundoff warning
    is silenced and its error bound returned on request instead.
    """
    edges = scale * np.array([0.0, 0.5, 2.0, 6.0, 15.0, 30.0, 60.0, 120.0, tail])
    vals, errs = [], []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        for lo, hi in zip(edges[:-1], edges[1:]):
            v, e = quad(f, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)
            vals.append(v)
            errs.append(e)
    total = math.fsum(vals)
    return (total, math.fsum(errs)) if with_error else total


def density_moment(params: PhysicalParams, beta2, weight, n=0):
    """int 2 pi z R_n^2 weight(z) dz by adaptive quadrature."""
    beta = _beta(beta2)
    K = n + 0.5 + beta
    C = normalization_constant(n, beta2, params.z0)

    def f(z):
        if z == 0.0:
            return 0.0
        R = float(_radial(np.asarray(z), n, beta, K, params.z0, C))
        return 2.0 * math.pi * z * R * R * weight(z)

    return radial_integral(f, params.z0 * K, 200.0 + 20.0 * n)
