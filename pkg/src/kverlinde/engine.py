"""Fixed-point sums over the regular orbits of T_l.

For a regular representative g the summand is

    ((-1)^|R+| J(g_t)^2 / (|T_l| det(1 - t/l H(g_t))))^(1 - genus) * prod_j f_j(g_t) * insertion

where g_t is the jet solving g_t exp(t/l v(g_t)) = g and H is the Hessian
endomorphism of the deformation character. Totals are summed in the canonical
order of the alcove representatives, so results do not depend on worker count.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import Character, TwistData, char_eval, derivative_data, trivial_character
from .lie import RootDatum, TorusPoint, torus_points_Tl, weyl_denominator
from .scalars import ExactField, FloatField
from .series import Jet, TSeries, series_det, series_matrix_inverse, solve_jet

__all__ = [
    "NonIntegralLevel",
    "NonRegularPoint",
    "HESSIAN_SIGN",
    "IndexJob",
    "IndexValue",
    "hessian_endomorphism",
    "determinant_factor",
    "insertion_factor",
    "orbit_summand",
    "index_pairing",
]

# The Hessian endomorphism entering det(1 - t/l H) is HESSIAN_SIGN * M G with
# M_pq = sum n_lambda lambda_p lambda_q u^lambda and G the Gram matrix. The sign
# is the one for which the genus-0 sum agrees with the brute-force disk series.
HESSIAN_SIGN = -1


class NonIntegralLevel(ValueError):
    pass


class NonRegularPoint(ValueError):
    pass


@dataclass
class IndexJob:
    datum: RootDatum
    genus: int
    level: int
    deformation: Character
    order: int = 0
    boundary: list[Character] = field(default_factory=list)
    point_insertion: Character | None = None
    curve_pair: tuple[Character, Character, int] | None = None

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.order < 0:
            raise ValueError("truncation order must be non-negative")
        if self.level + self.datum.dual_coxeter < 1:
            raise NonIntegralLevel(
                f"level must exceed -h^vee = {-self.datum.dual_coxeter} (got k = {self.level})"
            )
        if not self.boundary:
            self.boundary = [trivial_character(self.datum)]
        if self.curve_pair is not None:
            if len(self.curve_pair) != 3 or not isinstance(self.curve_pair[2], int):
                raise ValueError("curve pair needs two characters and an integer intersection number")

    @property
    def ell(self) -> int:
        return self.level + self.datum.dual_coxeter

    @property
    def b(self) -> int:
        return len(self.boundary)


@dataclass
class IndexValue:
    total: TSeries
    breakdown: list[tuple[tuple[int, ...], TSeries]]
    tl_order: int

    def to_json(self, include_breakdown: bool = True) -> dict:
        out = {"total": self.total.to_json(), "tl_order": self.tl_order}
        if include_breakdown:
            out["breakdown"] = [{"representative": list(lam), "summand": s.to_json()} for lam, s in self.breakdown]
        return out


def _field_for(job: IndexJob, backend: str):
    n = job.ell * job.datum.pairing_denominator
    if backend == "float":
        return FloatField(n)
    if backend != "exact":
        raise ValueError(f"unknown backend {backend!r}")
    return ExactField(n)


def hessian_endomorphism(twist: TwistData, jet: Jet) -> list[list[TSeries]]:
    """HESSIAN_SIGN * M(g_t) G as a matrix in fundamental-weight coordinates."""
    d = twist.datum
    m = twist.hessian_at(jet)
    r = d.rank
    out = []
    for p in range(r):
        row = []
        for q in range(r):
            acc = TSeries.zero(jet.order, jet.field)
            for s in range(r):
                if d.gram[s][q]:
                    acc = acc + m[p][s] * d.gram[s][q]
            row.append(acc * HESSIAN_SIGN)
        out.append(row)
    return out


def determinant_factor(twist: TwistData, jet: Jet, ell: int) -> TSeries:
    """det(1 - t/l H(g_t))."""
    r = twist.datum.rank
    one = TSeries.one(jet.order, jet.field)
    if twist.is_trivial():
        return one
    h = hessian_endomorphism(twist, jet)
    ts = TSeries.t(jet.order, jet.field) * Fraction(1, ell)
    mat = [[(one if p == q else TSeries.zero(jet.order, jet.field)) - ts * h[p][q] for q in range(r)] for p in range(r)]
    return series_det(mat)


def insertion_factor(job: IndexJob, jet: Jet, twist: TwistData | None = None) -> TSeries:
    """m * Tr_U0(g_t) * alpha(g_t), alpha = -<d1, A^-1 d2> with A = l - t H(g_t).

    d_i is the gradient vector sum n_lambda lambda u^lambda of U_i at the jet.
    """
    d = job.datum
    out = TSeries.one(jet.order, jet.field)
    if job.point_insertion is not None:
        out = char_eval(job.point_insertion, jet)
    if job.curve_pair is None:
        return out
    u1, u2, m = job.curve_pair
    if m == 0:
        return TSeries.zero(jet.order, jet.field)
    twist = twist or derivative_data(job.deformation, d)
    r = d.rank
    d1 = derivative_data(u1, d).gradient_at(jet)
    d2 = derivative_data(u2, d).gradient_at(jet)
    tser = TSeries.t(jet.order, jet.field)
    zero = TSeries.zero(jet.order, jet.field)
    if twist.is_trivial():
        h = [[zero] * r for _ in range(r)]
    else:
        h = hessian_endomorphism(twist, jet)
    a = [[(TSeries.constant(job.ell, jet.order, jet.field) if p == q else zero) - tser * h[p][q] for q in range(r)] for p in range(r)]
    ainv = series_matrix_inverse(a)
    # A^-1 d2, then pair with d1 through the Gram matrix
    v = [sum((ainv[p][q] * d2[q] for q in range(r)), zero) for p in range(r)]
    alpha = zero
    for p in range(r):
        for q in range(r):
            if d.gram[p][q]:
                alpha = alpha + d1[p] * v[q] * d.gram[p][q]
    return out * (-alpha) * m


def _is_regular(d: RootDatum, g: TorusPoint) -> bool:
    return all(d.pairing(g.lam, a) % g.ell != 0 for a in d.positive_roots)


def orbit_summand(
    job: IndexJob,
    g: TorusPoint,
    backend: str = "exact",
    tl_order: int | None = None,
    twist: TwistData | None = None,
) -> TSeries:
    d = job.datum
    if g.ell != job.ell:
        raise ValueError("torus point level does not match the job")
    if not _is_regular(d, g):
        raise NonRegularPoint(f"{g.lam}/{g.ell} is not a regular point")
    fld = _field_for(job, backend)
    twist = twist or derivative_data(job.deformation, d)
    if tl_order is None:
        tl_order = torus_points_Tl(d, job.ell, full=False).order
    jet = solve_jet(d, g, job.ell, twist, job.order, fld)

    out = TSeries.one(job.order, fld)
    for c in job.boundary:
        out = out * char_eval(c, jet)
    out = out * insertion_factor(job, jet, twist)
    e = 1 - job.genus
    if e == 0:
        return out
    j = weyl_denominator(d, jet)
    sign = -1 if len(d.positive_roots) % 2 else 1
    ratio = j * j * Fraction(sign, tl_order) / determinant_factor(twist, jet, job.ell)
    return out * ratio ** e


def index_pairing(job: IndexJob, backend: str = "exact", threads: int = 1) -> IndexValue:
    """Pairing of the deformed index with the boundary characters, summed over regular orbits."""
    d = job.datum
    tl = torus_points_Tl(d, job.ell, full=False)
    reps = tl.representatives
    twist = derivative_data(job.deformation, d)
    fld = _field_for(job, backend)

    def run(g: TorusPoint) -> TSeries:
        return orbit_summand(job, g, backend, tl.order, twist)

    if threads > 1 and len(reps) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, reps))
    else:
        parts = [run(g) for g in reps]
    total = TSeries.zero(job.order, fld)
    for s in parts:
        total = total + s
    return IndexValue(total, [(g.lam, s) for g, s in zip(reps, parts)], tl.order)
