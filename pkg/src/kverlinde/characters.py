"""Characters of representations, their gradient/Hessian data and Adams twists.

A character is a finitely supported map from weights (fundamental-weight
coordinates) to integer multiplicities. Gradient data D_p = sum n_lambda lambda_p e^lambda
and Hessian data H_pq = sum n_lambda lambda_p lambda_q e^lambda are kept sparse, so
they can be evaluated at torus points (exactly or in floating point) or at jets.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

from .lie import RootDatum
from .scalars import ExactField
from .series import Jet, TSeries

__all__ = [
    "NonDominant",
    "Character",
    "TwistData",
    "LambdaTwistData",
    "weight_multiplicities",
    "irreducible",
    "trivial_character",
    "char_eval",
    "derivative_data",
    "adams",
    "lambda_twist_series",
    "adjoint_lambda_twist_closed_form",
]

Weight = tuple[int, ...]


class NonDominant(ValueError):
    pass


@dataclass(eq=False)
class Character:
    datum: RootDatum
    weights: MappingProxyType
    highest: Weight | None = None
    adams_power: int = 1

    def __post_init__(self):
        clean = {tuple(int(x) for x in k): int(v) for k, v in dict(self.weights).items() if v}
        self.weights = MappingProxyType(dict(sorted(clean.items())))

    @property
    def dimension(self) -> int:
        return sum(self.weights.values())

    def items(self):
        return self.weights.items()

    def __eq__(self, other):
        return isinstance(other, Character) and self.datum is other.datum and dict(self.weights) == dict(other.weights)

    __hash__ = None

    def __mul__(self, other: Character) -> Character:
        out: dict = {}
        for a, m in self.items():
            for b, n in other.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + m * n
        return Character(self.datum, out)

    def __add__(self, other: Character) -> Character:
        out = dict(self.weights)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return Character(self.datum, out)

    def dual(self) -> Character:
        hw = self.datum.dual_weight(self.highest) if self.highest is not None else None
        return Character(self.datum, {tuple(-x for x in k): v for k, v in self.items()}, hw, self.adams_power)

    def weyl_transform(self, w: int) -> Character:
        d = self.datum
        return Character(d, {d.act(w, k): v for k, v in self.items()}, self.highest, self.adams_power)

    def to_json(self) -> list[dict]:
        return [{"weight": list(k), "mult": v} for k, v in self.items()]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def trivial_character(d: RootDatum) -> Character:
    return Character(d, {tuple([0] * d.rank): 1}, tuple([0] * d.rank))


def _dominant_weights_below(d: RootDatum, lam: Weight) -> list[Weight]:
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in d.positive_roots:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in seen and d.is_dominant(nu):
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return list(seen)


def _height(d: RootDatum, lam: Weight, mu: Weight) -> Fraction:
    return sum(d.to_root_coords(tuple(x - y for x, y in zip(lam, mu))))


@lru_cache(maxsize=None)
def _freudenthal(d: RootDatum, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    dom = sorted(_dominant_weights_below(d, lam), key=lambda mu: (_height(d, lam, mu), mu))
    lr = tuple(a + b for a, b in zip(lam, d.rho))
    norm_lr = d.pairing(lr, lr)
    mult: dict[Weight, int] = {lam: 1}

    def m_of(nu: Weight) -> int:
        return mult.get(d.dominant_conjugate(nu)[0], 0)

    # alpha-strings through a weight are unbroken, so stop at the first zero
    for mu in dom[1:]:
        acc = Fraction(0)
        for a in d.positive_roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                m = m_of(nu)
                if not m:
                    break
                acc += m * d.pairing(nu, a)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, d.rho))
        val = 2 * acc / (norm_lr - d.pairing(mr, mr))
        assert val.denominator == 1 and val >= 0
        mult[mu] = int(val)
    full: dict[Weight, int] = {}
    for mu, m in mult.items():
        if m:
            for i in range(d.weyl_order):
                full[d.act(i, mu)] = m
    return tuple(sorted(full.items()))


def weight_multiplicities(d: RootDatum, highest) -> Character:
    """Weight system of the irreducible representation of the given highest weight (Freudenthal)."""
    lam = tuple(int(x) for x in highest)
    if len(lam) != d.rank or any(x != y for x, y in zip(lam, highest)) or not d.is_dominant(lam):
        raise NonDominant(f"highest weight {tuple(highest)} is not dominant integral for {d.label}")
    return Character(d, dict(_freudenthal(d, lam)), lam)


irreducible = weight_multiplicities


def _eval_weight(g, mu, datum: RootDatum, field):
    if isinstance(g, Jet):
        return g.value(mu)
    return field.root(g.exponent(datum, mu))


def _zero_like(g, field):
    if isinstance(g, Jet):
        return TSeries.zero(g.order, g.field)
    return field.zero()


def _sparse_eval(data, g, datum: RootDatum, field):
    if not isinstance(g, Jet):
        return field.combine((g.exponent(datum, mu), c) for mu, c in data.items())
    acc = _zero_like(g, field)
    for mu, c in data.items():
        acc = acc + _eval_weight(g, mu, datum, field) * c
    return acc


def char_eval(c: Character, g, field=None):
    """sum n_lambda e^lambda(g) at a torus point (exact or float field) or at a jet."""
    if not isinstance(g, Jet):
        field = field or ExactField(g.conductor(c.datum))
    else:
        field = g.field
    return _sparse_eval(c.weights, g, c.datum, field)


@dataclass(eq=False)
class TwistData:
    """Gradient and Hessian data of a character in fundamental-weight coordinates."""

    datum: RootDatum
    gradient: tuple          # gradient[p] = {lambda: n_lambda lambda_p}
    hessian: tuple           # hessian[p][q] = {lambda: n_lambda lambda_p lambda_q}
    character: Character | None = field(default=None, repr=False)

    def is_trivial(self) -> bool:
        return not any(self.gradient)

    def directional(self, mu) -> dict:
        """Sparse data of D_mu = sum n_lambda <mu, lambda> e^lambda."""
        out: dict = {}
        d = self.datum
        for p in range(d.rank):
            coef = sum((Fraction(mu[q]) * d.gram[q][p] for q in range(d.rank)), Fraction(0))
            if coef:
                for lam, v in self.gradient[p].items():
                    out[lam] = out.get(lam, 0) + coef * v
        return {k: v for k, v in out.items() if v}

    def gradient_at(self, g, field=None) -> list:
        if not isinstance(g, Jet):
            field = field or ExactField(g.conductor(self.datum))
        return [_sparse_eval(self.gradient[p], g, self.datum, field) for p in range(self.datum.rank)]

    def hessian_at(self, g, field=None) -> list[list]:
        if not isinstance(g, Jet):
            field = field or ExactField(g.conductor(self.datum))
        r = self.datum.rank
        return [[_sparse_eval(self.hessian[p][q], g, self.datum, field) for q in range(r)] for p in range(r)]


def derivative_data(c: Character, d: RootDatum | None = None) -> TwistData:
    d = d or c.datum
    r = d.rank
    grad = tuple({lam: n * lam[p] for lam, n in c.items() if lam[p]} for p in range(r))
    hess = tuple(
        tuple({lam: n * lam[p] * lam[q] for lam, n in c.items() if lam[p] * lam[q]} for q in range(r)) for p in range(r)
    )
    return TwistData(d, grad, hess, c)


def adams(c: Character, j: int) -> Character:
    if j < 1:
        raise ValueError("Adams power must be a positive integer")
    return Character(
        c.datum, {tuple(j * x for x in k): v for k, v in c.items()}, c.highest, c.adams_power * j
    )


@dataclass(eq=False)
class LambdaTwistData:
    """Gradient data of the lambda-operation twist, one sparse map per power of t.

    ``terms[j][p]`` maps weights to the rational coefficient of t^j e^lambda in
    the p-th coordinate. The t^0 term coincides with :func:`derivative_data`.
    """

    datum: RootDatum
    order: int
    terms: tuple

    def __eq__(self, other):
        return (
            isinstance(other, LambdaTwistData)
            and self.order == other.order
            and [[dict(x) for x in row] for row in self.terms] == [[dict(x) for x in row] for row in other.terms]
        )

    __hash__ = None

    def gradient_at(self, g, field=None) -> list[TSeries]:
        """Each coordinate as a TSeries in t with coefficients evaluated at the torus point g."""
        field = field or ExactField(g.conductor(self.datum))
        out = []
        for p in range(self.datum.rank):
            cs = [_sparse_eval(self.terms[j][p], g, self.datum, field) for j in range(self.order + 1)]
            out.append(TSeries(cs, self.order, field))
        return out


def _clean(m: dict) -> dict:
    return dict(sorted((k, v) for k, v in m.items() if v))


def lambda_twist_series(c: Character, d: RootDatum | None = None, order: int = 0) -> LambdaTwistData:
    """sum_{j>=1} ((-t)^(j-1)/j^2) * gradient of psi^j(c), truncated at t^order."""
    d = d or c.datum
    terms = []
    for j in range(1, order + 2):
        grad = derivative_data(adams(c, j), d).gradient
        coef = Fraction((-1) ** (j - 1), j * j)
        terms.append(tuple(_clean({lam: coef * v for lam, v in grad[p].items()}) for p in range(d.rank)))
    return LambdaTwistData(d, order, tuple(terms))


# group-ring valued series: list over powers of t of {weight: Fraction}
def _gr_mul(a: list[dict], b: list[dict], order: int) -> list[dict]:
    out = [dict() for _ in range(order + 1)]
    for i, x in enumerate(a):
        for j in range(order + 1 - i):
            for u, cu in x.items():
                for v, cv in b[j].items():
                    w = tuple(p + q for p, q in zip(u, v))
                    out[i + j][w] = out[i + j].get(w, 0) + cu * cv
    return [_clean(o) for o in out]


def _gr_log1p(y: list[dict], order: int) -> list[dict]:
    """log(1 + y) for y without constant term, via (1 + y) L' = y'."""
    L: list[dict] = [dict()]
    for k in range(1, order + 1):
        acc = {w: k * Fraction(c) for w, c in y[k].items()}
        for j in range(1, k):
            for w, c in _gr_mul([L[j]], [y[k - j]], 0)[0].items():
                acc[w] = acc.get(w, 0) - j * c
        L.append(_clean({w: c / k for w, c in acc.items()}))
    return L


def adjoint_lambda_twist_closed_form(d: RootDatum, order: int) -> LambdaTwistData:
    """Closed form of the lambda twist for the adjoint representation.

    Equals (1/t) * sum_{alpha>0} [log(1 + t e^alpha) - log(1 + t e^-alpha)] * alpha,
    computed with group-ring valued logarithms rather than Adams operations.
    """
    r = d.rank
    acc = [[dict() for _ in range(r)] for _ in range(order + 2)]
    for a in d.positive_roots:
        for sign in (1, -1):
            w = tuple(sign * x for x in a)
            y = [dict() for _ in range(order + 2)]
            y[1] = {w: Fraction(1)}
            log = _gr_log1p(y, order + 1)
            for j in range(order + 2):
                for lam, c in log[j].items():
                    for p in range(r):
                        if a[p]:
                            acc[j][p][lam] = acc[j][p].get(lam, 0) + sign * c * a[p]
    assert not any(_clean(x) for x in acc[0])
    terms = tuple(tuple(_clean(acc[j + 1][p]) for p in range(r)) for j in range(order + 1))
    return LambdaTwistData(d, order, terms)
