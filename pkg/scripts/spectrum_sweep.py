"""Shooting eigenvalues against n + 1/2 + beta over a range of beta^2."""
import argparse

import numpy as np

from renbo import heavy


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=4)
    ap.add_argument("--beta2", type=float, nargs="*", default=list(np.round(np.linspace(0.0, 1.0, 6), 4)))
    args = ap.parse_args()
    print(f"{'beta2':>8} {'n':>3} {'K_shoot':>18} {'K_rule':>18} {'diff':>9}")
    for b2 in args.beta2:
        for n in range(args.levels):
            ks = heavy.shoot_eigenvalue(n, b2)
            ka = heavy.k_analytic(n, b2)
            print(f"{b2:8.4f} {n:3d} {ks:18.14f} {ka:18.14f} {abs(ks - ka):9.1e}")


if __name__ == "__main__":
    main()
