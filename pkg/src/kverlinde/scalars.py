"""Exact arithmetic in cyclotomic fields Q(zeta_N), plus a double-precision shadow.

A :class:`CycloNum` stores its value in the power basis ``1, x, ..., x^(phi(N)-1)``
modulo the N-th cyclotomic polynomial, with integer numerators over one common
positive denominator. That form is canonical, so equality at a fixed conductor is
tuple comparison. Mixed-conductor operations embed both sides into Q(zeta_lcm).
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

__all__ = [
    "CycloNum",
    "NotRational",
    "cyclo_root_of_unity",
    "cyclo_to_float",
    "cyclo_rationalize",
    "cyclotomic_poly",
    "ExactField",
    "FloatField",
]


class NotRational(ValueError):
    """Raised when a cyclotomic number has a non-rational component."""


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # den is monic with integer coefficients; division is exact by construction
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _polydiv_exact(p, list(cyclotomic_poly(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """x^j mod Phi_n for j = 0 .. 2n, as dense length-phi integer tuples."""
    phi = _phi(n)
    cp = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(2 * n + 1):
        rows.append(tuple(cur))
        # multiply by x, then fold the x^phi term back using the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cp[j]
    return tuple(rows)


def _reduce(coeffs: list[int], n: int) -> list[int]:
    """Reduce an integer polynomial of degree < 2n+1 modulo Phi_n."""
    phi = _phi(n)
    out = list(coeffs[:phi]) + [0] * max(0, phi - len(coeffs))
    if len(coeffs) > phi:
        table = _power_table(n)
        for j in range(phi, len(coeffs)):
            c = coeffs[j]
            if c:
                row = table[j]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
    return out


def _reduce_cyclic(vec: list[int], n: int) -> list[int]:
    """Reduce a polynomial in x of any degree, using x^n = 1 first."""
    if len(vec) > n:
        folded = [0] * n
        for j, c in enumerate(vec):
            folded[j % n] += c
        vec = folded
    return _reduce(vec, n)


class CycloNum:
    """An element of Q(zeta_N).

    ``nums[j] / den`` is the coefficient of ``zeta_N**j`` in the canonical power
    basis of length ``phi(N)``. Instances are immutable.
    """

    __slots__ = ("conductor", "nums", "den")

    def __init__(self, conductor: int, nums, den: int = 1, _canonical: bool = False):
        if conductor < 1:
            raise ValueError("conductor must be a positive integer")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            nums = _reduce_cyclic([int(c) for c in nums], conductor)
            if den < 0:
                nums = [-c for c in nums]
                den = -den
            g = den
            for c in nums:
                if g == 1:
                    break
                g = math.gcd(g, c)
            if g > 1:
                nums = [c // g for c in nums]
                den //= g
            nums = tuple(nums)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    # -- construction -----------------------------------------------------
    @classmethod
    def from_rational(cls, q, conductor: int = 1) -> CycloNum:
        q = Fraction(q)
        nums = [0] * _phi(conductor)
        nums[0] = q.numerator
        return cls(conductor, tuple(nums), q.denominator, _canonical=True)

    @classmethod
    def from_coeffs(cls, conductor: int, coeffs) -> CycloNum:
        """Build from rational coefficients of ``1, zeta, zeta^2, ...`` (any length)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return cls(conductor, [int(c * den) for c in fr], den)

    @classmethod
    def zero(cls, conductor: int = 1) -> CycloNum:
        return cls.from_rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> CycloNum:
        return cls.from_rational(1, conductor)

    # -- views ------------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def embed(self, conductor: int) -> CycloNum:
        """Image under Q(zeta_M) -> Q(zeta_N), zeta_M -> zeta_N^(N/M)."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"cannot embed conductor {self.conductor} into {conductor}")
        step = conductor // self.conductor
        vec = [0] * (step * (len(self.nums) - 1) + 1)
        for j, c in enumerate(self.nums):
            vec[j * step] = c
        return CycloNum(conductor, vec, self.den)

    def galois(self, a: int) -> CycloNum:
        """Apply the automorphism zeta -> zeta^a (a coprime to the conductor)."""
        n = self.conductor
        if math.gcd(a, n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        vec = [0] * n
        for j, c in enumerate(self.nums):
            if c:
                vec[(j * a) % n] += c
        return CycloNum(n, vec, self.den)

    def conjugate(self) -> CycloNum:
        return self.galois(-1)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> tuple[CycloNum, CycloNum]:
        if isinstance(other, CycloNum):
            if other.conductor == self.conductor:
                return self, other
            n = math.lcm(self.conductor, other.conductor)
            return self.embed(n), other.embed(n)
        if isinstance(other, (int, _RationalABC)):
            return self, CycloNum.from_rational(other, self.conductor)
        return NotImplemented, NotImplemented

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if a.den == b.den:
            return CycloNum(a.conductor, [x + y for x, y in zip(a.nums, b.nums)], a.den)
        return CycloNum(
            a.conductor, [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.conductor, tuple(-c for c in self.nums), self.den, _canonical=True)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, CycloNum):
            q = Fraction(other)
            return CycloNum(self.conductor, [c * q.numerator for c in self.nums], self.den * q.denominator)
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        an = [(i, c) for i, c in enumerate(a.nums) if c]
        bn = [(i, c) for i, c in enumerate(b.nums) if c]
        if not an or not bn:
            return CycloNum.zero(a.conductor)
        prod = [0] * (an[-1][0] + bn[-1][0] + 1)
        for i, x in an:
            for j, y in bn:
                prod[i + j] += x * y
        return CycloNum(a.conductor, _reduce(prod, a.conductor), a.den * b.den)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm down to Q: product of all Galois conjugates."""
        n = self.conductor
        acc = self
        for a in range(2, n):
            if math.gcd(a, n) == 1:
                acc = acc * self.galois(a)
        return cyclo_rationalize(acc)

    def inverse(self) -> CycloNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        if self.is_rational():
            return CycloNum.from_rational(1 / Fraction(self.nums[0], self.den), self.conductor)
        n = self.conductor
        others = CycloNum.one(n)
        for a in range(2, n):
            if math.gcd(a, n) == 1:
                others = others * self.galois(a)
        nrm = cyclo_rationalize(self * others)
        return others * (1 / nrm)

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, CycloNum):
            return self * (1 / Fraction(other))
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNum.one(self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, CycloNum):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        a, b = self._coerce(other)
        return a.den == b.den and a.nums == b.nums

    __hash__ = None  # equality spans conductors; no cheap canonical hash

    def __complex__(self):
        return cyclo_to_float(self)

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"({c})*z{self.conductor}^{j}")
        return "CycloNum(" + (" + ".join(terms) or "0") + ")"

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> CycloNum:
        coeffs = [Fraction(int(num), int(den)) for num, den in obj["coeffs"]]
        return cls.from_coeffs(int(obj["conductor"]), coeffs)


def cyclo_root_of_unity(numerator: int, n: int) -> CycloNum:
    """zeta_n ** numerator in canonical form."""
    if n < 1:
        raise ValueError("root of unity needs N >= 1")
    j = numerator % n
    return CycloNum(n, _power_table(n)[j], 1, _canonical=True)


@lru_cache(maxsize=None)
def _unit_circle(n: int) -> tuple[tuple[float, float], ...]:
    return tuple((math.cos(2 * math.pi * j / n), math.sin(2 * math.pi * j / n)) for j in range(_phi(n)))


def cyclo_to_float(x: CycloNum) -> complex:
    pts = _unit_circle(x.conductor)
    re = math.fsum(c * p[0] for c, p in zip(x.nums, pts) if c)
    im = math.fsum(c * p[1] for c, p in zip(x.nums, pts) if c)
    return complex(re / x.den, im / x.den)


def cyclo_rationalize(x: CycloNum) -> Fraction:
    if not x.is_rational():
        raise NotRational(f"{x!r} is not rational")
    return Fraction(x.nums[0], x.den)


class ExactField:
    """Scalar factory for one cyclotomic field; ``root(a)`` is zeta_N**a."""

    exact = True

    def __init__(self, conductor: int):
        self.conductor = conductor

    def root(self, a: int) -> CycloNum:
        return cyclo_root_of_unity(a, self.conductor)

    def scalar(self, q) -> CycloNum:
        return CycloNum.from_rational(q, self.conductor)

    def zero(self) -> CycloNum:
        return CycloNum.zero(self.conductor)

    def one(self) -> CycloNum:
        return CycloNum.one(self.conductor)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def combine(self, terms) -> CycloNum:
        """sum c * zeta_N**e over (e, c) pairs with rational c, reduced once."""
        n = self.conductor
        terms = [(e % n, Fraction(c)) for e, c in terms if c]
        den = 1
        for _, c in terms:
            den = den * c.denominator // math.gcd(den, c.denominator)
        vec = [0] * n
        for e, c in terms:
            vec[e] += c.numerator * (den // c.denominator)
        return CycloNum(n, vec, den)


class FloatField:
    """Double-precision shadow of :class:`ExactField`; never a source of truth."""

    exact = False

    def __init__(self, conductor: int):
        self.conductor = conductor

    def root(self, a: int) -> complex:
        return cmath.exp(2j * math.pi * (a % self.conductor) / self.conductor)

    def scalar(self, q) -> complex:
        return complex(float(Fraction(q)))

    def zero(self) -> complex:
        return 0j

    def one(self) -> complex:
        return 1 + 0j

    def is_zero(self, x) -> bool:
        return abs(x) < 1e-12

    def combine(self, terms) -> complex:
        return sum((self.root(e) * float(c) for e, c in terms), 0j)
