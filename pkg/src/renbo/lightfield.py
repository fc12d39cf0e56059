"""Light-particle ground state for two clamped centers.

Reduced units as in :mod:`renbo.binding`.  The centers sit at (+u/2, 0) and
(-u/2, 0) and the orbitals are eta_pm = K_0(w |x - c_pm|).  With
D = 1 + wu K_1(wu) the normalization is A^2 = w^2 / (2 pi D).

The closed-form integrals here are checked against :func:`quad2d`, an
independent polar quadrature that never uses any of them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .binding import BindingPoint, binding_point
from .errors import DomainError, QuadratureError
from .specfun import bessel_k, bessel_k_all


@dataclass(frozen=True)
class LightState:
    u: float
    w: float
    D: float
    A2: float

    @property
    def centers(self):
        return np.array([[0.5 * self.u, 0.0], [-0.5 * self.u, 0.0]])


def light_state(point):
    """Build the light state from a solved binding point (or a bare u)."""
    if not isinstance(point, BindingPoint):
        point = binding_point(point)
    x = point.w * point.u
    D = 1.0 + x * bessel_k(1, x)
    return LightState(u=point.u, w=point.w, D=D, A2=point.w**2 / (2.0 * math.pi * D))


def _radii(xy, u):
    xy = np.asarray(xy, dtype=float)
    dx = xy[..., 0]
    dy = xy[..., 1]
    rp = np.hypot(dx - 0.5 * u, dy)
    rm = np.hypot(dx + 0.5 * u, dy)
    return rp, rm


def phi(xy, state):
    """Normalized light wavefunction at points xy (shape (..., 2))."""
    rp, rm = _radii(xy, state.u)
    if np.any(rp == 0.0) or np.any(rm == 0.0):
        raise DomainError("phi is logarithmically singular at the centers")
    return math.sqrt(state.A2) * (bessel_k(0, state.w * rp) + bessel_k(0, state.w * rm))


def overlap_integral(state):
    """Integral of eta_+ eta_- over the plane: pi (u/w) K_1(wu)."""
    return math.pi * state.u / state.w * bessel_k(1, state.w * state.u)


def grad_nu_integral(state):
    """Integral of (d/dw (eta_+ + eta_-))^2 over the plane."""
    x = state.w * state.u
    return 4.0 * math.pi / (3.0 * state.w**4) * (2.0 + 0.25 * x**3 * bessel_k(3, x))


def normalization_identity(state):
    """2 A^2 (pi / w^2) D, which is 1 by construction."""
    return 2.0 * state.A2 * math.pi / state.w**2 * state.D


def p1(state):
    """A^2 d/dw (A^-2) at fixed u."""
    u, w, D = state.u, state.w, state.D
    return -2.0 / w - w * u * u * bessel_k(0, w * u) / D


def p2(state):
    """A^2 d^2/dw^2 (A^-2) at fixed u."""
    u, w, D = state.u, state.w, state.D
    k0, k1, _, _ = bessel_k_all(w * u)
    return 6.0 / w**2 + 3.0 * u * u * k0 / D + w * u**3 * k1 / D


def logA_first_derivative(state, binding):
    """(1/A) dA/du along the binding curve."""
    _same_u(state, binding)
    u, w, D, dw = state.u, state.w, state.D, binding.dw
    return dw / w + 0.5 * w * u * (u * dw + w) * bessel_k(0, w * u) / D


def logA_second_summands(state, binding):
    """The five pieces whose sum is (1/A) d^2A/du^2.

    Kept separate so each can be checked on its own; the third one has no
    K_0 factor because dx/du = w/D has been used to cancel it.
    """
    _same_u(state, binding)
    u, w, D = state.u, state.w, state.D
    dw, d2w = binding.dw, binding.d2w
    k0 = bessel_k(0, w * u)
    slope = u * dw + w  # d(wu)/du
    return (
        d2w / w,
        0.5 * dw * u * slope * k0 / D,
        0.5 * dw * u * slope / D,
        0.5 * k0 * (2.0 * u * u * dw * dw + 5.0 * w * u * dw + w * u * u * d2w + w * w) / D,
        0.75 * (w * w * u * u * slope * slope / (D * D)) * k0 * k0,
    )


def logA_second_derivative(state, binding):
    return math.fsum(logA_second_summands(state, binding))


def logA_laplacian(state, binding):
    """(1/A) times the radial Laplacian of A in the separation."""
    return logA_second_derivative(state, binding) + logA_first_derivative(state, binding) / state.u


def _same_u(state, binding):
    if abs(state.u - binding.u) > 1e-14 * max(1.0, abs(state.u)):
        raise DomainError(f"state (u={state.u}) and binding (u={binding.u}) disagree")


# ---------------------------------------------------------------------------
# quadrature oracle


@dataclass(frozen=True)
class QuadSpec:
    cutoff: float
    tol: float = 1e-10
    max_level: int = 4
    panel_length: float = 0.5

    def __post_init__(self):
        if self.tol < 1e-12:
            raise DomainError("QuadSpec.tol must be >= 1e-12")
        if not self.cutoff > 0:
            raise DomainError("QuadSpec.cutoff must be positive")
        if not 1 <= self.max_level < len(_LEVELS):
            raise DomainError(f"QuadSpec.max_level must be in 1..{len(_LEVELS) - 1}")

    @classmethod
    def for_state(cls, state, tol=1e-10, max_level=4):
        # integrands decay like poly(r) e^{-2 w r}; pad the log for the prefactor
        reach = (math.log(1.0 / tol) + 25.0) / (2.0 * state.w)
        return cls(
            cutoff=0.5 * state.u + reach,
            tol=tol,
            max_level=max_level,
            panel_length=2.0 / state.w,
        )


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    level: int

    def __float__(self):
        return self.value


def _gauss_panels(breaks, npts):
    x, wts = np.polynomial.legendre.leggauss(npts)
    breaks = np.asarray(breaks, dtype=float)
    a = breaks[:-1, None]
    half = 0.5 * (breaks[1:, None] - a)
    return (a + half * (x + 1.0)).ravel(), (half * wts).ravel()


# (Gauss points per panel, angular panels per quarter) by refinement level
_LEVELS = ((8, 2), (12, 3), (16, 4), (24, 6), (32, 8))


def _radial_breaks(half_u, R, far_step):
    """Geometric toward the center, then panels growing up to far_step."""
    br = [half_u * 2.0**-k for k in range(24, 0, -1)]
    r, step = half_u, half_u
    while r < R:
        br.append(r)
        step = min(1.5 * step, far_step)
        r += step
    br.append(R)
    return np.array([0.0] + br)


def _half_plane(f, u, spec, level):
    """Integral of f over x > 0 in polar coordinates about (u/2, 0).

    A ray at angle theta runs to the cutoff or to the line x = 0,
    whichever is nearer.  Radial panels are geometric toward the center
    (log singularity) and no longer than the analyticity radius beyond.
    """
    R = spec.cutoff
    half_u = 0.5 * u
    npts, npanel = _LEVELS[level]
    fixed = _radial_breaks(half_u, R, spec.panel_length)

    theta1 = math.acos(-half_u / R)  # ray reaches x = 0 exactly at the cutoff
    theta2 = 2.0 * math.pi - theta1
    # where a ray is cut by x = 0, break the angle wherever the cut point
    # crosses a radial break; that grades the panels toward theta = pi/2
    cut = fixed[(fixed > half_u) & (fixed < R)]
    upper = np.union1d(np.linspace(theta1, math.pi, npanel + 1), np.arccos(-half_u / cut))
    th_breaks = np.concatenate(
        (
            np.linspace(theta2 - 2.0 * math.pi, theta1, 2 * npanel + 1),
            upper[1:],
            (2.0 * math.pi - upper[::-1])[1:],
        )
    )
    thetas, th_w = _gauss_panels(th_breaks, npts)

    xs, ys, wts = [], [], []
    for th, tw in zip(thetas, th_w):
        c, sn = math.cos(th), math.sin(th)
        rmax = R if c >= 0.0 else min(R, half_u / -c)
        r, wr = _gauss_panels(np.append(fixed[fixed < rmax], rmax), npts)
        xs.append(half_u + r * c)
        ys.append(r * sn)
        wts.append(tw * r * wr)
    vals = f(np.concatenate(xs), np.concatenate(ys))
    return math.fsum(vals * np.concatenate(wts))


def _quad_level(f, u, spec, level):
    def mirrored(xs, ys):
        return f(-xs, ys)

    return _half_plane(f, u, spec, level) + _half_plane(mirrored, u, spec, level)


def quad2d(f, u, spec):
    """Integrate f(x, y) over the plane with log singularities at (+-u/2, 0).

    Each half plane is done in polar coordinates about its own center, so
    the r Jacobian removes the logarithm; the angular and radial rules are
    refined together until two successive levels agree within spec.tol.
    """
    prev = _quad_level(f, u, spec, 0)
    for level in range(1, spec.max_level + 1):
        cur = _quad_level(f, u, spec, level)
        err = abs(cur - prev)
        if err < spec.tol:
            return QuadResult(cur, max(err, 1e-15 * abs(cur)), level)
        prev = cur
    raise QuadratureError(
        f"quad2d: no convergence after {spec.max_level} refinements",
        estimate=cur,
        error=err,
    )


# integrands --------------------------------------------------------------


def density_integrand(state):
    def f(xs, ys):
        return phi(np.stack((xs, ys), axis=-1), state) ** 2

    return f


def overlap_integrand(state):
    def f(xs, ys):
        rp, rm = _radii(np.stack((xs, ys), axis=-1), state.u)
        return bessel_k(0, state.w * rp) * bessel_k(0, state.w * rm)

    return f


def grad_nu_integrand(state):
    # d/dw K_0(w r) = -r K_1(w r)
    def f(xs, ys):
        rp, rm = _radii(np.stack((xs, ys), axis=-1), state.u)
        return (rp * bessel_k(1, state.w * rp) + rm * bessel_k(1, state.w * rm)) ** 2

    return f


def phi_dx_phi_integrand(state, axis=0):
    """phi * d(phi)/dx_axis; integrates to zero (exact differential)."""

    def f(xs, ys):
        w, u = state.w, state.u
        rp, rm = _radii(np.stack((xs, ys), axis=-1), u)
        k0p, k1p, _, _ = bessel_k_all(w * rp)
        k0m, k1m, _, _ = bessel_k_all(w * rm)
        if axis == 0:
            dp, dm = (xs - 0.5 * u) / rp, (xs + 0.5 * u) / rm
        else:
            dp, dm = ys / rp, ys / rm
        grad = -w * (k1p * dp + k1m * dm)
        return state.A2 * (k0p + k0m) * grad

    return f


def phi_du_phi_integrand(state, binding):
    """phi times the total u-derivative of phi along the binding curve."""
    _same_u(state, binding)

    def f(xs, ys):
        w, u = state.w, state.u
        rp, rm = _radii(np.stack((xs, ys), axis=-1), u)
        k0p, k1p, _, _ = bessel_k_all(w * rp)
        k0m, k1m, _, _ = bessel_k_all(w * rm)
        # d r_pm / du at fixed x is -+(x -+ u/2) / (2 r_pm)
        du_fixed = w * k1p * (xs - 0.5 * u) / (2.0 * rp) - w * k1m * (xs + 0.5 * u) / (2.0 * rm)
        dw_part = -(rp * k1p + rm * k1m) * binding.dw
        eta = k0p + k0m
        A = math.sqrt(state.A2)
        dA = A * logA_first_derivative(state, binding)
        return A * eta * (dA * eta + A * (du_fixed + dw_part))

    return f
