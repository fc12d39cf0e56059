"""Compare the light-state closed forms with direct 2D quadrature."""
import argparse
import time

from renbo import lightfield as lf
from renbo.binding import binding_point


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--u", type=float, nargs="*", default=[0.02, 0.2, 0.5, 1.0, 2.0, 5.0])
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()
    print(f"{'u':>6} {'quantity':>10} {'closed':>20} {'quad2d':>20} {'diff':>9} {'bound':>9} {'sec':>5}")
    for u in args.u:
        b = binding_point(u)
        s = lf.light_state(b)
        spec = lf.QuadSpec.for_state(s, tol=args.tol)
        for name, integrand, closed in (
            ("norm", lf.density_integrand(s), 1.0),
            ("overlap", lf.overlap_integrand(s), lf.overlap_integral(s)),
            ("grad_nu", lf.grad_nu_integrand(s), lf.grad_nu_integral(s)),
        ):
            t = time.perf_counter()
            q = lf.quad2d(integrand, u, spec)
            dt = time.perf_counter() - t
            print(f"{u:6.2f} {name:>10} {closed:20.14g} {q.value:20.14g} {abs(q.value - closed):9.1e} "
                  f"{q.error:9.1e} {dt:5.1f}")


if __name__ == "__main__":
    main()
