"""Print the equilibrium interpretation variables (y2, z3, z1) over a range of h.

    python3 scripts/analytic_curves.py [--h-lo 0.5] [--h-hi 2.5] [--step 0.1]

For the full thirteen-column CSV use ``cvm2d analytic``.
"""

import argparse

import numpy as np

from cvm2d.analytic import interpretation_triple


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h-lo", type=float, default=0.5)
    ap.add_argument("--h-hi", type=float, default=2.5)
    ap.add_argument("--step", type=float, default=0.1)
    args = ap.parse_args()

    print(f"{'h':>6s} {'y2':>9s} {'z3':>9s} {'z1':>9s}")
    for h in np.arange(args.h_lo, args.h_hi + args.step / 2, args.step):
        y2, z3, z1 = interpretation_triple(float(h))
        print(f"{h:6.2f} {y2:9.5f} {z3:9.5f} {z1:9.5f}")


if __name__ == "__main__":
    main()
