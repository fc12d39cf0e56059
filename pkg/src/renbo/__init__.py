"""Two heavy particles bound by one light particle through 2D contact interactions.

Modules: specfun (Bessel K and gamma family), binding (w(u) curve),
lightfield (light state and a 2D quadrature oracle), effpot (terms of the
heavy equation), heavy (radial spectrum), pert (first-order corrections),
cli (command line).
"""
from .binding import PhysicalParams, binding_point, solve_w
from .errors import ConvergenceError, DomainError, QuadratureError

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "PhysicalParams",
    "QuadratureError",
    "binding_point",
    "solve_w",
]
