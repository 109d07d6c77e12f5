#!/usr/bin/env python3
"""RRHO eigenvalues versus basis truncation for each species, with the
number of settled digits between successive sizes."""

import argparse

from x2y2.rrho import DEFAULT_GRID, convergence_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--species", nargs="+", default=["A1", "A2", "B1", "B2", "Ex"])
    ap.add_argument("--nmax", type=int, nargs="+", default=list(DEFAULT_GRID))
    ap.add_argument("--states", type=int, default=3)
    args = ap.parse_args()

    for species in args.species:
        table = convergence_scan(species, args.nmax, args.states, want_vectors=False)
        print(f"# {species}  monotone={table.all_monotone}")
        for res in table.results:
            vals = "  ".join(f"{e:.13f}" for e in res.eigenvalues)
            digits = " ".join(f"{d:2d}" for d in res.settled_digits) if res.settled_digits else ""
            print(f"{res.size_param:4d} {res.dimension:5d}  {vals}  [{digits}]")


if __name__ == "__main__":
    main()
