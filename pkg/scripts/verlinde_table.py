"""Print Verlinde dimensions (t = 0 specialization) for a range of genera and levels.

Usage: python scripts/verlinde_table.py [--type A] [--rank 1] [--genus 0 3] [--levels 1 6]

For A1 each entry is cross-checked against the fusion-rule count.
"""
from __future__ import annotations

import argparse

from kverlinde.characters import trivial_character
from kverlinde.engine import IndexJob, index_pairing
from kverlinde.lie import build_root_datum
from kverlinde.oracles import fusion_verlinde
from kverlinde.scalars import cyclo_rationalize


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", default="A")
    ap.add_argument("--rank", type=int, default=1)
    ap.add_argument("--genus", type=int, nargs=2, default=(0, 3), metavar=("MIN", "MAX"))
    ap.add_argument("--levels", type=int, nargs=2, default=(1, 6), metavar=("MIN", "MAX"))
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    d = build_root_datum(args.type, args.rank)
    levels = range(args.levels[0], args.levels[1] + 1)
    print("g \\ k " + "".join(f"{k:>12d}" for k in levels))
    mismatches = 0
    for g in range(args.genus[0], args.genus[1] + 1):
        cells = []
        for k in levels:
            val = cyclo_rationalize(index_pairing(IndexJob(d, g, k, trivial_character(d), 0), threads=args.threads).total[0])
            if d.label == "A1" and val != fusion_verlinde(k, g):
                mismatches += 1
                cells.append(f"{str(val) + '!':>12s}")
            else:
                cells.append(f"{str(val):>12s}")
        print(f"{g:5d} " + "".join(cells))
    if d.label == "A1":
        print(f"fusion cross-check: {mismatches} mismatches")


if __name__ == "__main__":
    main()
