"""Compare both signs of the Hessian endomorphism against the disk lattice sum.

Usage: python scripts/sign_convention.py [--order N]

For each rank-1 or rank-2 case, the genus-0 index with one boundary character
is computed with HESSIAN_SIGN = -1 and +1 and checked against the brute-force
disk pairing. Only one sign can agree with the oracle.
"""
from __future__ import annotations

import argparse

from kverlinde import engine
from kverlinde.characters import weight_multiplicities
from kverlinde.engine import IndexJob, index_pairing
from kverlinde.lie import build_root_datum
from kverlinde.oracles import disk_pairing

CASES = {
    ("A", 1): ([(1,), (2,)], [(0,), (1,), (2,), (3,), (4,)], (1, 2, 3)),
    ("A", 2): ([(1, 0), (1, 1)], [(0, 0), (1, 0), (0, 1), (1, 1)], (1, 2)),
    ("C", 2): ([(1, 0), (0, 1)], [(0, 0), (1, 0), (0, 1)], (1, 2)),
    ("G", 2): ([(1, 0)], [(0, 0), (1, 0), (0, 1)], (1, 2)),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=2)
    args = ap.parse_args()
    for typ, (defs, duals, levels) in CASES.items():
        d = build_root_datum(*typ)
        tally = {-1: 0, 1: 0}
        total = 0
        for v in defs:
            vc = weight_multiplicities(d, v)
            for mu in duals:
                f = weight_multiplicities(d, mu).dual()
                for k in levels:
                    total += 1
                    want = disk_pairing(d, vc, k, f, args.order)
                    for sign in tally:
                        engine.HESSIAN_SIGN = sign
                        tally[sign] += index_pairing(IndexJob(d, 0, k, vc, args.order, [f])).total == want
        engine.HESSIAN_SIGN = -1
        print(f"{d.label:3s} order {args.order}: sign -1 matches {tally[-1]}/{total}, sign +1 matches {tally[1]}/{total}")


if __name__ == "__main__":
    main()
