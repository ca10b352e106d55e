"""Fit intersection numbers on a symplectic quotient as a quasi-polynomial in k.

Usage: python scripts/quasi_poly_demo.py [--genus 1] [--weight 1/2] [--period 4] [--max-level 24]

Computes the t^1 coefficient of the multiplicity series for SU(2) with one
boundary weight a, at every admissible level up to --max-level, then fits
the smallest-degree quasi-polynomial and reports the held-out residuals.
Without --period, multiples of the weight's denominator are tried in turn.
"""
from __future__ import annotations

import argparse
from fractions import Fraction

from kverlinde.characters import weight_multiplicities
from kverlinde.lie import build_root_datum
from kverlinde.pairings import (
    InsufficientSamples,
    PairingRequest,
    ValidationMismatch,
    fit_minimal_degree,
    intersection_number,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--genus", type=int, default=1)
    ap.add_argument("--weight", type=Fraction, default=Fraction(1, 2))
    ap.add_argument("--deformation", type=int, default=1, help="highest weight of the deforming representation")
    ap.add_argument("--period", type=int, default=None, help="default: denominator of the weight")
    ap.add_argument("--max-level", type=int, default=24)
    ap.add_argument("--max-degree", type=int, default=4)
    args = ap.parse_args()
    d = build_root_datum("A", 1)
    step = args.weight.denominator
    levels = [k for k in range(1, args.max_level + 1) if k % step == 0]
    req = PairingRequest(d, args.genus, [(args.weight,)], levels, weight_multiplicities(d, (args.deformation,)), order=1)
    samples = [(k, intersection_number(req, k)) for k in levels]
    for k, v in samples:
        print(f"k = {k:3d}   t^1 coefficient = {v}")
    held = samples[-2:]
    qp = None
    for period in [args.period] if args.period else [step * m for m in range(1, 5)]:
        try:
            qp = fit_minimal_degree(samples[:-2], period, args.max_degree, held, req.admissible_residues(period))
            break
        except (InsufficientSamples, ValidationMismatch) as exc:
            print(f"period {period}: no fit ({exc})")
    if qp is None:
        raise SystemExit("no quasi-polynomial fit; try more levels or a larger --max-degree")
    print(f"period {qp.period}, degree {qp.degree}")
    for r, cs in sorted(qp.polys.items()):
        print(f"  k = {r} mod {qp.period}: coefficients (ascending) {[str(c) for c in cs]}")
    print("held-out:", ", ".join(f"k={k}: fit {qp(k)} vs {v}" for k, v in held))


if __name__ == "__main__":
    main()
