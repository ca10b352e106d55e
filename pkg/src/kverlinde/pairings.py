"""Intersection pairings on symplectic quotients from multiplicity series.

For boundary weights a = (a_1, ..., a_b) in the alcove and a level k with
k a_j integral, the multiplicity series is the index pairing against the
characters of the duals of V_{k a_j}. Its t^1 coefficient is the intersection
number; values across k are fitted exactly by a quasi-polynomial.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import Character, trivial_character, weight_multiplicities
from .engine import IndexJob, index_pairing
from .lie import RootDatum
from .scalars import CycloNum, NotRational, cyclo_rationalize, cyclo_to_float
from .series import TSeries

__all__ = [
    "NotInLattice",
    "SeriesTooShort",
    "InsufficientSamples",
    "ValidationMismatch",
    "PairingRequest",
    "QuasiPoly",
    "multiplicity_series",
    "intersection_number",
    "quasi_poly_fit",
    "fit_minimal_degree",
    "PairingRow",
    "pairing_table",
    "rows_to_csv",
]


class NotInLattice(ValueError):
    pass


class SeriesTooShort(ValueError):
    pass


class InsufficientSamples(ValueError):
    pass


class ValidationMismatch(ValueError):
    pass


@dataclass
class PairingRequest:
    datum: RootDatum
    genus: int
    weights: list[tuple[Fraction, ...]]
    levels: list[int]
    deformation: Character
    order: int = 1
    mode: str = "multiplicity"
    period: int | None = None

    def __post_init__(self):
        self.weights = [tuple(Fraction(x) for x in a) for a in self.weights] or [tuple([Fraction(0)] * self.datum.rank)]
        for a in self.weights:
            if len(a) != self.datum.rank:
                raise ValueError(f"weight {a} has wrong length for {self.datum.label}")
        if self.mode not in ("multiplicity", "derivative"):
            raise ValueError(f"unknown extraction mode {self.mode!r}")
        for k in self.levels:
            self.check_level(k)

    @property
    def default_period(self) -> int:
        p = 1
        for a in self.weights:
            for x in a:
                p = math.lcm(p, x.denominator)
        return p

    def admissible_residues(self, period: int) -> list[int]:
        """Residues r mod ``period`` containing some k with k * a_j integral for all j."""
        step = math.gcd(period, self.default_period)
        return [r for r in range(period) if r % step == 0]

    def check_level(self, k: int) -> None:
        for a in self.weights:
            if any((k * x).denominator != 1 for x in a):
                raise NotInLattice(f"k * a = {tuple(str(k * x) for x in a)} is not an integral weight (k = {k})")

    def boundary_characters(self, k: int) -> list[Character]:
        self.check_level(k)
        out = []
        for a in self.weights:
            hw = tuple(int(k * x) for x in a)
            if all(x == 0 for x in hw):
                out.append(trivial_character(self.datum))
            else:
                out.append(weight_multiplicities(self.datum, hw).dual())
        return out

    def job(self, k: int) -> IndexJob:
        return IndexJob(self.datum, self.genus, k, self.deformation, self.order, self.boundary_characters(k))


def multiplicity_series(req: PairingRequest, k: int, backend: str = "exact", threads: int = 1) -> TSeries:
    return index_pairing(req.job(k), backend, threads).total


def intersection_number(req: PairingRequest, k: int, threads: int = 1, series: TSeries | None = None) -> Fraction:
    """t^1 coefficient of the multiplicity series (its derivative at t = 0), as a rational."""
    if req.order < 1:
        raise SeriesTooShort("the derivative at t = 0 needs truncation order >= 1")
    s = series if series is not None else multiplicity_series(req, k, threads=threads)
    return cyclo_rationalize(s[1])


@dataclass
class QuasiPoly:
    """A function of k that is a polynomial on each residue class modulo ``period``."""

    period: int
    degree: int
    polys: dict[int, list[Fraction]] = field(default_factory=dict)  # ascending coefficients

    def __call__(self, k: int) -> Fraction:
        cs = self.polys.get(k % self.period)
        if cs is None:
            raise ValueError(f"no polynomial fitted for k = {k} (residue {k % self.period} mod {self.period})")
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * k + c
        return acc

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "polys": {str(r): [str(c) for c in cs] for r, cs in sorted(self.polys.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> QuasiPoly:
        return cls(obj["period"], obj["degree"], {int(r): [Fraction(c) for c in cs] for r, cs in obj["polys"].items()})


def _interpolate(points: list[tuple[int, Fraction]]) -> list[Fraction]:
    """Monomial coefficients of the interpolating polynomial (Newton form, exact)."""
    xs = [Fraction(x) for x, _ in points]
    dd = [Fraction(y) for _, y in points]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - xs[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[i]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def quasi_poly_fit(
    samples: list[tuple[int, Fraction]],
    period: int,
    degree: int,
    validation: list[tuple[int, Fraction]] = (),
    residues: list[int] | None = None,
) -> QuasiPoly:
    """Fit exactly on the first degree+1 samples of each residue class; all others must match.

    ``validation`` samples are held-out points that are checked but never fitted.
    ``residues`` lists the classes to fit (default: every class mod ``period``);
    samples outside them are rejected.
    """
    if period < 1 or degree < 0:
        raise ValueError("period must be >= 1 and degree >= 0")
    classes: dict[int, list[tuple[int, Fraction]]] = {}
    for k, v in sorted(samples, key=lambda s: s[0]):
        classes.setdefault(k % period, []).append((k, Fraction(v)))
    checks: dict[int, list[tuple[int, Fraction]]] = {}
    for k, v in validation:
        checks.setdefault(k % period, []).append((k, Fraction(v)))
    wanted = sorted(set(range(period) if residues is None else (r % period for r in residues)))
    stray = sorted(k for k, _ in list(samples) + list(validation) if k % period not in wanted)
    if stray:
        raise ValueError(f"samples at k = {stray} fall outside the residue classes {wanted} mod {period}")
    polys = {}
    for r in wanted:
        pts = classes.get(r, [])
        extra = checks.get(r, [])
        if len(pts) < degree + 1 or len(pts) + len(extra) < degree + 2:
            raise InsufficientSamples(
                f"residue class {r} mod {period} has {len(pts)} fitting and {len(extra)} validation samples;"
                f" degree {degree} needs {degree + 1} to fit and one more to validate"
            )
        polys[r] = _interpolate(pts[: degree + 1])
    qp = QuasiPoly(period, degree, polys)
    for r in wanted:
        for k, v in classes.get(r, [])[degree + 1:] + checks.get(r, []):
            if qp(k) != v:
                raise ValidationMismatch(f"k = {k}: fitted value {qp(k)} != sample {v}")
    return qp


def fit_minimal_degree(
    samples: list[tuple[int, Fraction]], period: int, max_degree: int, validation=(), residues=None
) -> QuasiPoly:
    """Smallest degree whose fit passes validation."""
    last: Exception | None = None
    for deg in range(max_degree + 1):
        try:
            return quasi_poly_fit(samples, period, deg, validation, residues)
        except ValidationMismatch as exc:
            last = exc
    raise ValidationMismatch(f"no degree <= {max_degree} fits: {last}")


@dataclass
class PairingRow:
    k: int
    t_order: int
    exact: CycloNum | None
    approx: complex | None

    def rational(self) -> str:
        if self.exact is None:
            return ""
        try:
            return str(cyclo_rationalize(self.exact))
        except NotRational:
            return repr(self.exact)


def pairing_table(
    req: PairingRequest, backend: str = "exact", threads: int = 1
) -> tuple[list[PairingRow], dict[int, TSeries]]:
    """Rows (k, j, coefficient of t^j) for every scheduled level, in increasing k."""
    rows = []
    exact_series: dict[int, TSeries] = {}
    for k in sorted(req.levels):
        ex = fl = None
        if backend in ("exact", "both"):
            ex = multiplicity_series(req, k, "exact", threads)
            exact_series[k] = ex
        if backend in ("float", "both"):
            fl = multiplicity_series(req, k, "float", threads)
        for j in range(req.order + 1):
            rows.append(
                PairingRow(
                    k,
                    j,
                    ex[j] if ex is not None else None,
                    fl[j] if fl is not None else (cyclo_to_float(ex[j]) if ex is not None else None),
                )
            )
    return rows, exact_series


def rows_to_csv(rows: list[PairingRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "t_order", "value_rational", "value_float_re", "value_float_im"])
    for r in rows:
        re_, im_ = ("", "") if r.approx is None else (repr(r.approx.real), repr(r.approx.imag))
        w.writerow([r.k, r.t_order, r.rational(), re_, im_])
    return buf.getvalue()
