"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the region where a function is defined or valid."""


class ConvergenceError(RuntimeError):
    """An iterative method failed to reach its tolerance.

    ``detail`` carries whatever the method had at the point of failure
    (last bracket, best estimate, error bound).
    """

    def __init__(self, message, **detail):
        super().__init__(message)
        self.detail = detail


class QuadratureError(ConvergenceError):
    """Quadrature did not converge within the subdivision limit."""

    @property
    def estimate(self):
        return self.detail.get("estimate")

    @property
    def error(self):
        return self.detail.get("error")
