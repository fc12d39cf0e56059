"""Extract the 1/u^2 coefficient of every potential term over several fit windows."""
import argparse

from renbo import effpot

TERMS = {
    "(1_b)": effpot.term_1b,
    "(1_c)": effpot.term_1c,
    "(1_d)": effpot.term_1d,
    "(1_d) p2": lambda u: effpot.term_1d_pieces(u)[0],
    "(1_d) grad": lambda u: effpot.term_1d_pieces(u)[1],
    "(2)": effpot.term_2,
    "(3_a)": effpot.term_3a,
    "(3_b)": effpot.term_3b,
    "total": effpot.total_term,
}

WINDOWS = ((1e-5, 1e-4), (1e-4, 1e-3), (1e-3, 1e-2))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=40)
    args = ap.parse_args()
    head = "".join(f"{f'[{lo:g},{hi:g}]':>22}" for lo, hi in WINDOWS)
    print(f"{'term':<12}{head}")
    for name, f in TERMS.items():
        fits = [effpot.extract_coeff(f, 2, True, w, args.points) for w in WINDOWS]
        print(f"{name:<12}" + "".join(f"{x.value:14.8f} ({x.error:.0e})" for x in fits))
    print(f"# claimed total {effpot.CLAIMED_BETA2:.6f}, claimed (1_d) {effpot.CLAIMED_T1D:.6f}")


if __name__ == "__main__":
    main()
