#!/usr/bin/env python3
"""Recompute the low-lying x^2 y^2 spectrum with all three methods and
write it next to the published reference values."""

import argparse
import json
import sys

from x2y2.cli import main as cli_main


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=88)
    ap.add_argument("--rrk-order", type=int, default=30)
    ap.add_argument("--cmx-order", type=int, default=16)
    ap.add_argument("--jobs", type=int, default=4)
    ap.add_argument("--out", default="-", help="JSON destination ('-' for stdout)")
    return ap.parse_args()


if __name__ == "__main__":
    args = parse_args()
    argv = ["compare", "--nmax", str(args.nmax), "--rrk-order", str(args.rrk_order),
            "--cmx-order", str(args.cmx_order), "--jobs", str(args.jobs), "--format", "json"]
    if args.out != "-":
        argv += ["--out", args.out]
    sys.exit(cli_main(argv))
