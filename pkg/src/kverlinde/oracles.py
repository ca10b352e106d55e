"""Independent oracles for the engine.

* The disk lattice sum J * sum_eta e^{l eta} exp(t D_eta), D_eta = sum n_lambda <lambda, eta> e^lambda,
  expanded by brute force in the group ring and paired against characters.
* SU(2) fusion rules, giving Verlinde dimensions as (H^g prod N_label)_00.

Neither path uses jets, torus points or cyclotomic arithmetic.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .characters import Character
from .lie import RootDatum
from .scalars import ExactField
from .series import TSeries

__all__ = [
    "LabelOutOfRange",
    "GroupRingSeries",
    "disk_term",
    "disk_pairing",
    "disk_window",
    "affine_shift_check",
    "fusion_matrices",
    "fusion_verlinde",
]

Weight = tuple[int, ...]


class LabelOutOfRange(ValueError):
    pass


# ---------------------------------------------------------------------------
# group ring arithmetic with rational coefficients


def _gr_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def _gr_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            w = tuple(p + q for p, q in zip(u, v))
            out[w] = out.get(w, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _gr_shift(a: dict, by: Weight) -> dict:
    return {tuple(p + q for p, q in zip(k, by)): v for k, v in a.items()}


class GroupRingSeries:
    """A truncated series in t whose coefficients are finite sums of weights."""

    def __init__(self, coeffs: list[dict], order: int):
        self.order = order
        self.coeffs = [dict(c) for c in coeffs[: order + 1]] + [dict() for _ in range(order + 1 - len(coeffs))]

    def __mul__(self, other: GroupRingSeries) -> GroupRingSeries:
        out = [dict() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            for j in range(self.order + 1 - i):
                out[i + j] = _gr_add(out[i + j], _gr_mul(a, other.coeffs[j]))
        return GroupRingSeries(out, self.order)

    def shift(self, by: Weight) -> GroupRingSeries:
        return GroupRingSeries([_gr_shift(c, by) for c in self.coeffs], self.order)

    def __eq__(self, other):
        return isinstance(other, GroupRingSeries) and self.order == other.order and all(
            {k: v for k, v in a.items() if v} == {k: v for k, v in b.items() if v}
            for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    @classmethod
    def exp_t(cls, x: dict, order: int) -> GroupRingSeries:
        """exp(t x) = sum_j t^j x^j / j!, by repeated multiplication."""
        out = [{tuple([0] * len(next(iter(x), ()))): Fraction(1)} if x else {}]
        power = None
        for j in range(1, order + 1):
            power = dict(x) if power is None else _gr_mul(power, x)
            out.append({k: Fraction(v) / math.factorial(j) for k, v in power.items()})
        return cls(out, order)


def _gradient_along(d: RootDatum, v: Character, eta: Weight) -> dict:
    """D_eta = sum n_lambda <lambda, eta> e^lambda."""
    out = {}
    for lam, n in v.items():
        c = d.pairing(lam, eta)
        assert c.denominator == 1
        if c:
            out[lam] = n * int(c)
    return out


def disk_term(d: RootDatum, v: Character, k: int, eta: Weight, order: int) -> GroupRingSeries:
    """Contribution e^{l eta} exp(t D_eta) of one coroot-lattice point (without the J factor)."""
    ell = k + d.dual_coxeter
    grad = _gradient_along(d, v, eta)
    if grad:
        s = GroupRingSeries.exp_t(grad, order)
    else:
        s = GroupRingSeries([{tuple([0] * d.rank): Fraction(1)}], order)
    return s.shift(tuple(ell * x for x in eta))


def _weyl_numerators(d: RootDatum) -> tuple[dict, dict]:
    j = {}
    jstar = {}
    for i in range(d.weyl_order):
        w = d.act(i, d.rho)
        j[w] = j.get(w, 0) + d.weyl_sign(i)
        jstar[tuple(-x for x in w)] = jstar.get(tuple(-x for x in w), 0) + d.weyl_sign(i)
    return j, jstar


def _minkowski(a: set, b: set) -> set:
    return {tuple(x + y for x, y in zip(u, v)) for u in a for v in b}


def disk_window(d: RootDatum, v: Character, k: int, f: Character, order: int) -> list[Weight]:
    """All eta in the coroot lattice whose term can meet the support of f at t-order <= order."""
    ell = k + d.dual_coxeter
    j, jstar = _weyl_numerators(d)
    base = set(_gr_mul(_gr_mul(j, jstar), dict(f.weights)))
    reach = set(base)
    supp_v = set(v.weights)
    layer = set(base)
    for _ in range(order):
        layer = _minkowski(layer, supp_v)
        reach |= layer
    out = set()
    for z in reach:
        if all(x % ell == 0 for x in z):
            eta = tuple(-x // ell for x in z)
            if d.in_coroot_lattice(eta):
                out.add(eta)
    return sorted(out)


def disk_pairing(d: RootDatum, v: Character, k: int, f: Character, order: int) -> TSeries:
    """(1/|W|) * constant term of (J sum_eta e^{l eta} exp(t D_eta)) * f * J^*, per power of t.

    J^* = sum_w (-1)^l(w) e^{-w rho}; pairing with J^* f/|W| extracts the
    multiplicity of the representation dual to f.
    """
    ell = k + d.dual_coxeter
    j, jstar = _weyl_numerators(d)
    partner = _gr_mul(_gr_mul(j, jstar), dict(f.weights))
    totals = [Fraction(0)] * (order + 1)
    for eta in disk_window(d, v, k, f, order):
        term = disk_term(d, v, k, eta, order)
        for i, c in enumerate(term.coeffs):
            for lam, x in c.items():
                y = partner.get(tuple(-a for a in lam))
                if y:
                    totals[i] += x * y
    fld = ExactField(ell * d.pairing_denominator)
    return TSeries([fld.scalar(x / d.weyl_order) for x in totals], order, fld)


def affine_shift_check(
    d: RootDatum, v: Character, k: int, eta: Weight, order: int, base_points: list[Weight] | None = None
) -> dict:
    """Check c(eta' + eta) = e^{l eta} c(eta') exp(t D_eta) and D_{eta'+eta} = D_eta' + D_eta.

    ``c(eta)`` is the brute-force lattice-sum term at eta. The identity is checked
    for every eta' in ``base_points`` (default: 0 and the +-simple coroots).
    """
    ell = k + d.dual_coxeter
    eta = tuple(eta)
    if not d.in_coroot_lattice(eta):
        raise ValueError(f"{eta} is not in the coroot lattice")
    if base_points is None:
        gens = [tuple(int(x) for x in c) for c in d.simple_coroots]
        base_points = [tuple([0] * d.rank)] + gens + [tuple(-x for x in g) for g in gens]
    grad = _gradient_along(d, v, eta)
    shift_series = GroupRingSeries.exp_t(grad, order) if grad else GroupRingSeries(
        [{tuple([0] * d.rank): Fraction(1)}], order
    )
    cases = []
    ok = True
    for base in base_points:
        moved = tuple(a + b for a, b in zip(base, eta))
        lhs = disk_term(d, v, k, moved, order)
        rhs = (disk_term(d, v, k, base, order) * shift_series).shift(tuple(ell * x for x in eta))
        additive = _gradient_along(d, v, moved) == _gr_add(_gradient_along(d, v, base), grad)
        passed = lhs == rhs and additive
        ok = ok and passed
        cases.append({"base": list(base), "passed": passed})
    return {"eta": list(eta), "level": k, "order": order, "passed": ok, "cases": cases}


# ---------------------------------------------------------------------------
# SU(2)_k fusion rules


def fusion_matrices(k: int) -> list[list[list[int]]]:
    """N_i[j][m] = 1 iff |i-j| <= m <= min(i+j, 2k-i-j) and i+j+m is even."""
    if k < 0:
        raise ValueError("level must be non-negative")
    n = k + 1
    mats = []
    for i in range(n):
        mats.append(
            [
                [int(abs(i - j) <= m <= min(i + j, 2 * k - i - j) and (i + j + m) % 2 == 0) for m in range(n)]
                for j in range(n)
            ]
        )
    return mats


def _imatmul(a, b):
    n = len(a)
    return [[sum(a[i][s] * b[s][j] for s in range(n)) for j in range(n)] for i in range(n)]


def fusion_verlinde(k: int, genus: int, labels: list[int] | tuple = ()) -> int:
    """Dimension (H^g prod_j N_{label_j})_00 of SU(2) level-k conformal blocks."""
    for lab in labels:
        if not (0 <= lab <= k):
            raise LabelOutOfRange(f"label {lab} outside 0..{k}")
    mats = fusion_matrices(k)
    n = k + 1
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    h = [[0] * n for _ in range(n)]
    for m in mats:
        mt = [list(r) for r in zip(*m)]
        p = _imatmul(m, mt)
        h = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(h, p)]
    out = ident
    for _ in range(genus):
        out = _imatmul(out, h)
    for lab in labels:
        out = _imatmul(out, mats[lab])
    return out[0][0]
