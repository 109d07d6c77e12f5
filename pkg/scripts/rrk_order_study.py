#!/usr/bin/env python3
"""How the RRK ground-state estimate depends on the Krylov order K and the
working precision.  Prints one row per (species, K) with the distance to
the converged RRHO value."""

import argparse
from fractions import Fraction

from x2y2.moments import moments
from x2y2.rrho import solve_block
from x2y2.rrk import rrk_spectrum


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--species", nargs="+", default=["A1", "Ex", "B1", "B2", "A2"])
    ap.add_argument("--orders", type=int, nargs="+", default=[10, 15, 20, 25, 30, 35])
    ap.add_argument("--digits", type=int, nargs="+", default=[30, 60])
    ap.add_argument("--a", default="1")
    ap.add_argument("--nmax", type=int, default=88)
    args = ap.parse_args()
    a = Fraction(args.a)

    print(f"{'species':>7} {'digits':>6} {'K':>4} {'usable':>6} {'E_RRK':>22} {'E_RRK - E_RRHO':>14}")
    for species in args.species:
        exact = solve_block(species, args.nmax, k=1, want_vectors=False).eigenvalues[0]
        table = moments(species, a, 2 * max(args.orders))
        for digits in args.digits:
            for K in args.orders:
                res = rrk_spectrum(species, a, K, digits, table=table)
                e = float(res.eigenvalues[0])
                print(f"{species:>7} {digits:>6} {K:>4} {res.dimension:>6} {e:>22.15f} {e - exact:>14.3e}")


if __name__ == "__main__":
    main()
