"""Truncated power series in t, small series matrices, and torus jets.

A :class:`TSeries` is generic over its coefficient domain: exact cyclotomic
numbers (:class:`~kverlinde.scalars.ExactField`) or complex doubles
(:class:`~kverlinde.scalars.FloatField`). The same code therefore drives both
the exact engine and its floating-point shadow.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .scalars import CycloNum, ExactField, FloatField, cyclo_to_float

__all__ = [
    "NonzeroConstantTerm",
    "TSeries",
    "series_exp",
    "series_log",
    "series_det",
    "series_matrix_inverse",
    "Jet",
    "solve_jet",
]


class NonzeroConstantTerm(ValueError):
    pass


class TSeries:
    """c_0 + c_1 t + ... + c_n t^n, exact modulo t^(n+1)."""

    __slots__ = ("order", "coeffs", "field")

    def __init__(self, coeffs, order: int, field):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = list(coeffs)[: order + 1]
        cs += [field.zero()] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = cs
        self.field = field

    # -- construction -----------------------------------------------------
    @classmethod
    def constant(cls, c, order: int, field) -> TSeries:
        if not isinstance(c, (CycloNum, complex)):
            c = field.scalar(c)
        return cls([c], order, field)

    @classmethod
    def zero(cls, order: int, field) -> TSeries:
        return cls([], order, field)

    @classmethod
    def one(cls, order: int, field) -> TSeries:
        return cls([field.one()], order, field)

    @classmethod
    def t(cls, order: int, field) -> TSeries:
        return cls([field.zero(), field.one()], order, field)

    # -- access -----------------------------------------------------------
    def __getitem__(self, i: int):
        return self.coeffs[i]

    @property
    def constant_term(self):
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(self.field.is_zero(c) for c in self.coeffs)

    def truncate(self, order: int) -> TSeries:
        return TSeries(self.coeffs, order, self.field)

    def __repr__(self):
        return f"TSeries(order={self.order}, coeffs={self.coeffs!r})"

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other) -> TSeries | None:
        if isinstance(other, TSeries):
            if other.order != self.order:
                raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction, CycloNum, complex, float)):
            return TSeries.constant(other, self.order, self.field)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TSeries([a + b for a, b in zip(self.coeffs, o.coeffs)], self.order, self.field)

    __radd__ = __add__

    def __neg__(self):
        return TSeries([-a for a in self.coeffs], self.order, self.field)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TSeries([a - b for a, b in zip(self.coeffs, o.coeffs)], self.order, self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum, complex, float)):
            if isinstance(other, float):
                other = complex(other)
            return TSeries([a * other for a in self.coeffs], self.order, self.field)
        if not isinstance(other, TSeries):
            return NotImplemented
        o = self._lift(other)
        n = self.order
        out = [self.field.zero()] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if self.field.is_zero(a):
                continue
            for j in range(n + 1 - i):
                b = o.coeffs[j]
                if not self.field.is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return TSeries(out, n, self.field)

    __rmul__ = __mul__

    def inverse(self) -> TSeries:
        a = self.coeffs
        if self.field.is_zero(a[0]):
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = self.field.one() / a[0]
        b = [inv0]
        for k in range(1, self.order + 1):
            s = self.field.zero()
            for j in range(1, k + 1):
                s = s + a[j] * b[k - j]
            b.append(-(s * inv0))
        return TSeries(b, self.order, self.field)

    def __truediv__(self, other):
        if isinstance(other, TSeries):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, (CycloNum, complex)):
            return self * (self.field.one() / other)
        return NotImplemented

    def __rtruediv__(self, other):
        return TSeries.constant(other, self.order, self.field) * self.inverse()

    def __pow__(self, e: int) -> TSeries:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = TSeries.one(self.order, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TSeries):
            return self.order == other.order and all(
                (a - b) == 0 if self.field.exact else abs(a - b) < 1e-12 for a, b in zip(self.coeffs, other.coeffs)
            )
        o = self._lift(other)
        return o is not None and self == o

    __hash__ = None

    def derivative(self) -> TSeries:
        """d/dt; the top coefficient becomes zero (its source is truncated away)."""
        return TSeries([self.coeffs[k] * k for k in range(1, self.order + 1)], self.order, self.field)

    def exp(self) -> TSeries:
        return series_exp(self)

    def log(self) -> TSeries:
        return series_log(self)

    # -- conversion -------------------------------------------------------
    def to_float(self) -> TSeries:
        if not self.field.exact:
            return self
        return TSeries([cyclo_to_float(c) for c in self.coeffs], self.order, FloatField(self.field.conductor))

    def to_json(self) -> dict:
        if self.field.exact:
            return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}
        return {"order": self.order, "coeffs": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> TSeries:
        cs = obj["coeffs"]
        if cs and isinstance(cs[0], dict):
            vals = [CycloNum.from_json(c) for c in cs]
            conductor = max([c.conductor for c in vals] + [1])
            return cls([c.embed(conductor) for c in vals], obj["order"], ExactField(conductor))
        return cls([complex(re, im) for re, im in cs], obj["order"], FloatField(1))


def series_exp(s: TSeries) -> TSeries:
    if not s.field.is_zero(s.coeffs[0]):
        raise NonzeroConstantTerm("exp needs a series with zero constant term")
    # E' = s' E
    e = [s.field.one()]
    for k in range(1, s.order + 1):
        acc = s.field.zero()
        for j in range(1, k + 1):
            acc = acc + s.coeffs[j] * e[k - j] * j
        e.append(acc * Fraction(1, k))
    return TSeries(e, s.order, s.field)


def series_log(s: TSeries) -> TSeries:
    """Logarithm of a series with constant term 1."""
    one = s.field.one()
    c0 = s.coeffs[0]
    if not s.field.is_zero(c0 - one):
        raise NonzeroConstantTerm("log needs a series with constant term 1")
    # s L' = s'
    L = [s.field.zero()]
    for k in range(1, s.order + 1):
        acc = s.coeffs[k] * k
        for j in range(1, k):
            acc = acc - L[j] * s.coeffs[k - j] * j
        L.append(acc * Fraction(1, k))
    return TSeries(L, s.order, s.field)


def series_det(m: list[list[TSeries]]) -> TSeries:
    """Determinant by cofactor expansion along the first row."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * series_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return TSeries.zero(m[0][0].order, m[0][0].field)
    return total


def series_matrix_inverse(m: list[list[TSeries]]) -> list[list[TSeries]]:
    """Adjugate over determinant; the determinant must have an invertible constant term."""
    n = len(m)
    det_inv = series_det(m).inverse()
    if n == 1:
        return [[det_inv]]
    out = [[None] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
        c = series_det(minor) * det_inv
        out[j][i] = -c if (i + j) % 2 else c
    return out


class Jet:
    """A C[[t]]-point g_t of the complex torus based at a point of T_l.

    ``sigma[p]`` are the logarithmic coordinates of g_t / g in the basis dual to
    the fundamental weights, so that e^mu(g_t) = e^mu(g) * exp(sum_p mu_p sigma_p).
    """

    def __init__(self, datum, base, sigma: list[TSeries], order: int, field):
        self.datum = datum
        self.base = base
        self.sigma = sigma
        self.order = order
        self.field = field
        self._pos = [series_exp(s) for s in sigma]
        self._neg = [series_exp(-s) for s in sigma]
        self._cache: dict = {}

    def base_value(self, mu):
        return self.field.root(self.base.exponent(self.datum, mu))

    def value(self, mu) -> TSeries:
        mu = tuple(mu)
        hit = self._cache.get(mu)
        if hit is not None:
            return hit
        s = TSeries.constant(self.base_value(mu), self.order, self.field)
        for p, c in enumerate(mu):
            if c > 0:
                s = s * self._pos[p] ** c
            elif c < 0:
                s = s * self._neg[p] ** (-c)
        self._cache[mu] = s
        return s

    def act(self, w: int) -> Jet:
        """The jet w * g_t; its log coordinates transform by the inverse transpose of w."""
        d = self.datum
        winv = d.weyl[d.weyl_inverse(w)]
        # e^mu(w g_t) = e^{w^-1 mu}(g_t)  =>  sigma'_q = sum_p (w^-1)_{pq} sigma_p
        sig = []
        for q in range(d.rank):
            acc = TSeries.zero(self.order, self.field)
            for p in range(d.rank):
                if winv[p][q]:
                    acc = acc + self.sigma[p] * winv[p][q]
            sig.append(acc)
        return Jet(d, self.base.act(d, w), sig, self.order, self.field)

    def is_trivial(self) -> bool:
        return all(s.is_zero() for s in self.sigma)


def solve_jet(datum, g, ell: int, twist, order: int, field=None) -> Jet:
    """Solve g_t exp(t l^-1 v(g_t)) = g to order ``order`` by contraction.

    Convention: e^mu(g_t) * exp(t/l * D_mu(g_t)) = e^mu(g) with
    D_mu(u) = sum_lambda n_lambda <mu, lambda> u^lambda. Each iteration gains one
    order in t, so ``order`` iterations suffice.
    """
    field = field or ExactField(g.conductor(datum))
    r = datum.rank
    zero = [TSeries.zero(order, field) for _ in range(r)]
    jet = Jet(datum, g, zero, order, field)
    if order == 0 or twist.is_trivial():
        return jet
    gram = datum.gram
    scale = Fraction(-1, ell)
    tser = TSeries.t(order, field)
    for _ in range(order):
        dvec = twist.gradient_at(jet)
        sig = []
        for p in range(r):
            acc = TSeries.zero(order, field)
            for q in range(r):
                if gram[p][q]:
                    acc = acc + dvec[q] * gram[p][q]
            sig.append(acc * tser * scale)
        jet = Jet(datum, g, sig, order, field)
    return jet
