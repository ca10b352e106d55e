"""Exact evaluation of deformed Verlinde sums over the finite subgroups T_l.

The main entry points are :func:`index_pairing` (fixed-point sums with a
t-deformation), the oracles in :mod:`kverlinde.oracles`, and the pairing
extraction helpers in :mod:`kverlinde.pairings`.
"""
from __future__ import annotations

from .characters import (
    Character,
    TwistData,
    adams,
    char_eval,
    derivative_data,
    lambda_twist_series,
    trivial_character,
    weight_multiplicities,
)
from .engine import IndexJob, IndexValue, index_pairing, insertion_factor, orbit_summand
from .lie import RootDatum, TorusPoint, basic_pairing, build_root_datum, torus_points_Tl, weyl_denominator
from .oracles import affine_shift_check, disk_pairing, fusion_verlinde
from .pairings import PairingRequest, QuasiPoly, intersection_number, multiplicity_series, quasi_poly_fit
from .scalars import CycloNum, cyclo_rationalize, cyclo_root_of_unity, cyclo_to_float
from .series import Jet, TSeries, series_det, series_exp, series_log, solve_jet

__version__ = "0.1.0"

__all__ = [
    "Character",
    "TwistData",
    "adams",
    "char_eval",
    "derivative_data",
    "lambda_twist_series",
    "trivial_character",
    "weight_multiplicities",
    "IndexJob",
    "IndexValue",
    "index_pairing",
    "insertion_factor",
    "orbit_summand",
    "RootDatum",
    "TorusPoint",
    "basic_pairing",
    "build_root_datum",
    "torus_points_Tl",
    "weyl_denominator",
    "affine_shift_check",
    "disk_pairing",
    "fusion_verlinde",
    "PairingRequest",
    "QuasiPoly",
    "intersection_number",
    "multiplicity_series",
    "quasi_poly_fit",
    "CycloNum",
    "cyclo_rationalize",
    "cyclo_root_of_unity",
    "cyclo_to_float",
    "Jet",
    "TSeries",
    "series_det",
    "series_exp",
    "series_log",
    "solve_jet",
]
