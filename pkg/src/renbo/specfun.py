"""Special functions: K_0..K_3, log-gamma, digamma, trigamma, Laguerre.

Everything is plain float64.  The Bessel routines accept scalars or numpy
arrays and return the same shape; the gamma-family routines are scalar.

K_0 and K_1 use the ascending series for x < 2 and Steed's continued
fraction (Temme's CF2) for x >= 2.  Higher orders come from the upward
recurrence K_{n+1} = K_{n-1} + (2n/x) K_n, which is stable for K.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

EULER_GAMMA = 0.57721566490153286060651209008240243
EXP_GAMMA = math.exp(EULER_GAMMA)

SERIES_CUTOFF = 2.0
_SERIES_TERMS = 30
_CF_MAXIT = 10_000
_EPS = 1e-16

# B_2k for k = 1..10
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)


@dataclass(frozen=True)
class AccuracyReport:
    name: str
    max_rel_error: float
    points: int


def _as_positive_array(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError(f"{name}: argument must be finite and > 0, got {x!r}")
    return arr


def _k01_series(x):
    """K_0, K_1 from the ascending series; x < 2."""
    q = 0.25 * x * x
    lg = np.log(0.5 * x)
    i0 = np.zeros_like(x)
    i1s = np.zeros_like(x)
    s0 = np.zeros_like(x)
    s1 = np.zeros_like(x)
    term0 = np.ones_like(x)  # q^k / (k!)^2
    term1 = np.ones_like(x)  # q^k / (k! (k+1)!)
    harmonic = 0.0
    psi_k1 = -EULER_GAMMA  # psi(k+1)
    for k in range(_SERIES_TERMS):
        if k > 0:
            term0 = term0 * q / (k * k)
            term1 = term1 * q / (k * (k + 1))
            harmonic += 1.0 / k
            psi_k1 = -EULER_GAMMA + harmonic
        psi_k2 = psi_k1 + 1.0 / (k + 1)
        i0 = i0 + term0
        i1s = i1s + term1
        s0 = s0 + psi_k1 * term0
        s1 = s1 + (psi_k1 + psi_k2) * term1
    k0 = -lg * i0 + s0
    k1 = 1.0 / x + lg * (0.5 * x * i1s) - 0.25 * x * s1
    return k0, k1


def _k01_cf2(x):
    """K_0, K_1 from Steed's continued fraction; x >= 2."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(x)
    q2 = np.ones_like(x)
    a1 = 0.25
    q = np.full_like(x, a1)
    c = np.full_like(x, a1)
    a = -a1
    s = 1.0 + q * delh
    done = np.zeros(x.shape, dtype=bool)
    for i in range(2, _CF_MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = h + delh
        dels = q * delh
        s = np.where(done, s, s + dels)
        done |= np.abs(dels / s) < _EPS
        if done.all():
            break
    else:
        raise ConvergenceError("K_0/K_1 continued fraction did not converge")
    h = a1 * h
    k0 = np.sqrt(np.pi / (2.0 * x)) * np.exp(-x) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def _k01(x):
    k0 = np.empty_like(x)
    k1 = np.empty_like(x)
    small = x < SERIES_CUTOFF
    if small.any():
        k0[small], k1[small] = _k01_series(x[small])
    if (~small).any():
        k0[~small], k1[~small] = _k01_cf2(x[~small])
    return k0, k1


def bessel_k(order, x):
    """Modified Bessel function of the second kind K_order(x), order 0..3."""
    if order not in (0, 1, 2, 3):
        raise DomainError(f"bessel_k: order must be 0..3, got {order!r}")
    arr = _as_positive_array(x, "bessel_k")
    flat = np.atleast_1d(arr).ravel()
    km, k = _k01(flat)
    if order == 0:
        out = km
    else:
        for n in range(1, order):
            km, k = k, km + (2.0 * n / flat) * k
        out = k
    out = out.reshape(np.shape(arr))
    return float(out) if np.ndim(arr) == 0 else out


def bessel_k_all(x):
    """(K_0, K_1, K_2, K_3) evaluated together; cheaper than four calls."""
    arr = _as_positive_array(x, "bessel_k_all")
    flat = np.atleast_1d(arr).ravel()
    k0, k1 = _k01(flat)
    k2 = k0 + (2.0 / flat) * k1
    k3 = k1 + (4.0 / flat) * k2
    shape = np.shape(arr)
    out = tuple(k.reshape(shape) for k in (k0, k1, k2, k3))
    if np.ndim(arr) == 0:
        return tuple(float(k) for k in out)
    return out


def bessel_k_small_x(order, x):
    """Leading plus first-correction small-argument form of K_order.

    Only for cross-checking expansions; valid for 0 < x < 0.5.
    """
    if order not in (0, 1, 2, 3):
        raise DomainError(f"bessel_k_small_x: order must be 0..3, got {order!r}")
    arr = _as_positive_array(x, "bessel_k_small_x")
    if np.any(arr >= 0.5):
        raise DomainError("bessel_k_small_x: valid only for x < 0.5")
    lg = np.log(0.5 * arr)
    if order == 0:
        out = -(lg + EULER_GAMMA) + 0.25 * arr**2 * (1.0 - EULER_GAMMA - lg)
    elif order == 1:
        out = 1.0 / arr + 0.5 * arr * lg
    else:
        # 1/2 (n-1)! (2/x)^n - 1/2 (n-2)! (2/x)^(n-2)
        out = 0.5 * math.factorial(order - 1) * (2.0 / arr) ** order - 0.5 * math.factorial(
            order - 2
        ) * (2.0 / arr) ** (order - 2)
    return float(out) if np.ndim(arr) == 0 else out


def _check_scalar(x, name):
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name}: argument must be finite and > 0, got {x!r}")
    return x


def log_gamma(x):
    """ln Gamma(x) for x > 0 (shift to x >= 15, then Stirling)."""
    x = _check_scalar(x, "log_gamma")
    shift = 0.0
    while x < 15.0:
        shift += math.log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv
    for k, b in enumerate(_BERNOULLI[:8], start=1):
        series += b / (2 * k * (2 * k - 1)) * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + 0.5 * math.log(2.0 * math.pi) + series - shift


def digamma(x):
    """psi(x) = d/dx ln Gamma(x) for x > 0."""
    x = _check_scalar(x, "digamma")
    acc = 0.0
    while x < 15.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for k, b in enumerate(_BERNOULLI[:8], start=1):
        series += b / (2 * k) * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


def trigamma(x):
    """psi'(x) = zeta(2, x) = sum_k 1/(x+k)^2 for x > 0."""
    x = _check_scalar(x, "trigamma")
    acc = 0.0
    while x < 15.0:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv * inv2
    for b in _BERNOULLI[:8]:
        series += b * power
        power *= inv2
    return acc + inv + 0.5 * inv2 + series


def hurwitz_zeta2(x):
    """zeta(2, x); alias kept for readability at call sites."""
    return trigamma(x)


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^alpha(x) via three-term recurrence."""
    if int(n) != n or n < 0:
        raise DomainError(f"laguerre: n must be a non-negative integer, got {n!r}")
    n = int(n)
    if alpha <= -1.0:
        raise DomainError(f"laguerre: alpha must exceed -1, got {alpha!r}")
    xa = np.asarray(x, dtype=float)
    prev = np.ones_like(xa)
    if n == 0:
        out = prev
    else:
        cur = 1.0 + alpha - xa
        for k in range(1, n):
            prev, cur = cur, ((2 * k + 1 + alpha - xa) * cur - (k + alpha) * prev) / (k + 1)
        out = cur
    return float(out) if np.ndim(xa) == 0 else out


def accuracy_report(name, fn, oracle, points):
    """Compare ``fn`` with ``oracle`` on ``points``; used by verify."""
    worst = 0.0
    for p in points:
        ref = oracle(p)
        got = fn(p)
        worst = max(worst, abs(got - ref) / max(abs(ref), 1e-300))
    return AccuracyReport(name, worst, len(points))
