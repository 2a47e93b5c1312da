"""Minimize random lattices at a known h*, then check that a sweep recovers it.

    python3 scripts/self_consistency.py [--h-star 1.3] [--n 5]
"""

import argparse

from cvm2d.grid import random_equiprobable
from cvm2d.minimizer import MinimizeConfig, minimize
from cvm2d.sweep import SweepSpec, run_sweep
from cvm2d.thermo import EnthalpyParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h-star", type=float, default=1.3)
    ap.add_argument("--n", type=int, default=5, help="number of random starting lattices")
    ap.add_argument("--h-lo", type=float, default=1.0)
    ap.add_argument("--h-hi", type=float, default=2.0)
    args = ap.parse_args()

    params = EnthalpyParams.from_h(args.h_star)
    for s in range(args.n):
        fixture = minimize(random_equiprobable(16, 16, s), params, MinimizeConfig(100, seed=99)).lattice
        best = run_sweep(fixture, SweepSpec(args.h_lo, args.h_hi)).best
        print(f"lattice seed {s}: best h = {best.h:.2f} (D = {best.divergence:.3g})")


if __name__ == "__main__":
    main()
