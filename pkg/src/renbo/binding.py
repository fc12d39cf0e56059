"""Two-center binding curve in reduced units.

Lengths are measured in zeta_0 = hbar / (sqrt(2 m*) eps) and the square
root of the binding energy in units of eps, so the curve is w(u) with

    ln w = K_0(w u).

``PhysicalParams`` converts to and from dimensional quantities.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError
from .specfun import EULER_GAMMA, EXP_GAMMA, bessel_k_all

MAX_ITER = 200


@dataclass(frozen=True)
class PhysicalParams:
    """Masses, hbar and the one-center scale eps (eps**2 is the binding energy)."""

    m: float
    M: float
    hbar: float = 1.0
    epsilon: float = 1.0

    def __post_init__(self):
        for name in ("m", "M", "hbar", "epsilon"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"PhysicalParams.{name} must be positive, got {v!r}")
        if self.M < self.m:
            raise DomainError("PhysicalParams: heavy mass M must be >= light mass m")

    @classmethod
    def reduced(cls, mass_ratio):
        """hbar = eps = 2 m* = 1 with the given M/m."""
        if not mass_ratio >= 1.0:
            raise DomainError(f"mass ratio M/m must be >= 1, got {mass_ratio!r}")
        m = (1.0 + mass_ratio) / (2.0 * mass_ratio)
        return cls(m=m, M=mass_ratio * m)

    @property
    def m_star(self):
        return 1.0 / (1.0 / self.m + 1.0 / self.M)

    @property
    def zeta0(self):
        return self.hbar / (math.sqrt(2.0 * self.m_star) * self.epsilon)

    @property
    def alpha(self):
        return 2.0 * self.hbar * self.epsilon / (math.sqrt(2.0 * self.m_star) * EXP_GAMMA)

    @property
    def z0(self):
        return self.hbar**2 / (self.M * self.alpha)

    @property
    def lambda_ratio(self):
        """M / (2 m*)."""
        return self.M / (2.0 * self.m_star)

    @property
    def g(self):
        """2 m* / M, the small parameter multiplying every derivative term."""
        return 2.0 * self.m_star / self.M

    @property
    def z0_over_zeta0(self):
        return self.z0 / self.zeta0

    @property
    def energy_unit(self):
        return self.epsilon**2


@dataclass(frozen=True)
class BindingPoint:
    u: float
    w: float
    dw: float
    d2w: float

    @property
    def residual(self):
        return math.log(self.w) - bessel_k_all(self.w * self.u)[0]


def _check_u(u):
    u = float(u)
    if not (math.isfinite(u) and u > 0.0):
        raise DomainError(f"separation u must be finite and > 0, got {u!r}")
    return u


def solve_w(u, tol=1e-14):
    """Root w > 1 of ln w = K_0(w u).

    The residual is increasing in w, so a doubling bracket followed by
    safeguarded Newton steps is enough.
    """
    u = _check_u(u)
    if tol < 1e-14:
        raise DomainError(f"solve_w: tol must be >= 1e-14, got {tol!r}")

    def resid(w):
        k0, k1, _, _ = bessel_k_all(w * u)
        return math.log(w) - k0, 1.0 / w + u * k1

    lo = 1.0
    flo, _ = resid(lo)
    if flo >= 0.0:  # K_0(u) underflowed
        return 1.0
    hi = 2.0
    while resid(hi)[0] < 0.0:
        lo, hi = hi, 2.0 * hi
        if hi > 1e300:
            raise ConvergenceError("solve_w: no bracket found", bracket=(lo, hi))

    # Small-u starting guess from w^2 u e^gamma / 2 ~ 1; else K_0(u) for u large.
    if u < 0.5:
        w = math.sqrt(2.0 / (u * EXP_GAMMA))
    else:
        w = 1.0 + bessel_k_all(u)[0]
    if not lo < w < hi:
        w = 0.5 * (lo + hi)
    for _ in range(MAX_ITER):
        f, fp = resid(w)
        if abs(f) < tol:
            return w
        if f < 0.0:
            lo = w
        else:
            hi = w
        step = w - f / fp
        w = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4e-16 * hi:
            f, _ = resid(w)
            if abs(f) < tol:
                return w
            break
    raise ConvergenceError(
        f"solve_w: no convergence at u={u}", bracket=(lo, hi), residual=resid(w)[0]
    )


def _dw_raw(u, w, k1):
    x = w * u
    return -w * w * k1 / (1.0 + x * k1)


def _d2w_raw(u, w, dw, k0, k1):
    x = w * u
    D = 1.0 + x * k1
    return (
        -w * dw * k1 / D
        - dw / u
        + w * w * (u * dw + w) * k0 / D * (1.0 - x * k1 / D)
    )


def dw_du(point):
    """dw/du = -w^2 K_1(wu) / (1 + wu K_1(wu))."""
    k1 = bessel_k_all(point.w * point.u)[1]
    return _dw_raw(point.u, point.w, k1)


def d2w_du2(point):
    k0, k1, _, _ = bessel_k_all(point.w * point.u)
    dw = _dw_raw(point.u, point.w, k1)
    return _d2w_raw(point.u, point.w, dw, k0, k1)


def binding_point(u, tol=1e-14):
    """Solve w(u) and both derivatives in one pass."""
    w = solve_w(u, tol)
    k0, k1, _, _ = bessel_k_all(w * u)
    dw = _dw_raw(u, w, k1)
    return BindingPoint(u=float(u), w=w, dw=dw, d2w=_d2w_raw(u, w, dw, k0, k1))


def w_asymptotic(u, order=0):
    """Small-u approximation to w^2 (order 0 or 1)."""
    u = _check_u(u)
    if order not in (0, 1):
        raise DomainError(f"w_asymptotic: order must be 0 or 1, got {order!r}")
    if u >= 0.2:
        warnings.warn(f"w_asymptotic used outside its validity window (u={u})", stacklevel=2)
    w2 = 2.0 / (u * EXP_GAMMA)
    if order == 1:
        w2 *= 1.0 - 0.25 * math.exp(-EULER_GAMMA) * u * math.log(u)
    return w2


def xi_iterate(x, iters):
    """Fixed-point solution of ln(xi e^gamma / 2) = -1/4 xi e^-gamma x ln x."""
    x = float(x)
    if not x > 0.0 or x * abs(math.log(x)) >= 1.0:
        raise DomainError(f"xi_iterate: need x > 0 and x|ln x| < 1, got {x!r}")
    xi = 2.0 / EXP_GAMMA
    rhs = -0.25 * math.exp(-EULER_GAMMA) * x * math.log(x)
    last_step = math.inf
    for _ in range(int(iters)):
        new = 2.0 / EXP_GAMMA * math.exp(rhs * xi)
        step = abs(new - xi)
        if step > last_step and step > 1e-15:
            raise ConvergenceError("xi_iterate: iteration is not contracting", xi=new)
        last_step = step
        xi = new
    return xi
