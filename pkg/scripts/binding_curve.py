"""Tabulate w(u), its derivatives and the small-u law on a log grid."""
import argparse
import numpy as np

from renbo.binding import binding_point
from renbo.specfun import EXP_GAMMA


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--umin", type=float, default=1e-4)
    ap.add_argument("--umax", type=float, default=20.0)
    ap.add_argument("--n", type=int, default=25)
    args = ap.parse_args()
    print(f"{'u':>10} {'w':>14} {'dw':>14} {'d2w':>14} {'w^2 u e^g/2':>12} {'residual':>10}")
    for u in np.geomspace(args.umin, args.umax, args.n):
        p = binding_point(u)
        law = p.w**2 * u * EXP_GAMMA / 2
        print(f"{u:10.3e} {p.w:14.8g} {p.dw:14.8g} {p.d2w:14.8g} {law:12.6f} {p.residual:10.1e}")


if __name__ == "__main__":
    main()
