"""First-order corrections and the ground energy as the mass ratio grows."""
import argparse

import numpy as np

from renbo import effpot, heavy, pert
from renbo.binding import PhysicalParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta2", type=float, default=effpot.CLAIMED_BETA2)
    args = ap.parse_args()
    labels = pert.LABELS
    print(f"{'M/m':>8} {'E0':>12}" + "".join(f"{l:>13}" for l in labels) + f"{'b/lead':>8}")
    for ratio in np.geomspace(1e2, 1e8, 7):
        p = PhysicalParams.reduced(ratio)
        e0 = heavy.energy_level(0, p, args.beta2).energy_ratio
        reps = pert.all_corrections(p, args.beta2)
        lead = pert.expect_b_leading(p, args.beta2)
        b = next(r.closed for r in reps if r.label == "b")
        print(f"{ratio:8.0e} {e0:12.5g}" + "".join(f"{r.closed:13.5g}" for r in reps) + f"{b / lead:8.3f}")


if __name__ == "__main__":
    main()
