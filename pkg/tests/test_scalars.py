from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kverlinde.scalars import (
    CycloNum,
    NotRational,
    cyclo_rationalize,
    cyclo_root_of_unity,
    cyclo_to_float,
    cyclotomic_poly,
)


def reference_float(conductor: int, coeffs) -> complex:
    return sum(float(c) * cmath.exp(2j * math.pi * k / conductor) for k, c in enumerate(coeffs))


small_q = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclonums(draw, conductors=st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15])):
    n = draw(conductors)
    # arbitrary coefficients on the full set of n-th roots; reduction does the rest
    coeffs = draw(st.lists(small_q, min_size=n, max_size=n))
    x = CycloNum.zero(n)
    for k, c in enumerate(coeffs):
        x = x + cyclo_root_of_unity(k, n) * c
    return x, reference_float(n, coeffs)


def close(a: complex, b: complex, tol: float = 1e-9) -> bool:
    return abs(a - b) <= tol * (1 + abs(b))


def test_root_of_unity_examples():
    assert cyclo_root_of_unity(0, 7) == 1
    assert cyclo_root_of_unity(3, 6) == -1
    assert cyclo_root_of_unity(1, 3) + cyclo_root_of_unity(2, 3) == -1


def test_root_of_unity_rejects_zero_conductor():
    with pytest.raises(ValueError):
        cyclo_root_of_unity(1, 0)


@pytest.mark.parametrize("a,n", [(1, 12), (4, 12), (6, 12), (5, 9), (3, 9), (2, 10)])
def test_multiplicative_order(a, n):
    z = cyclo_root_of_unity(a, n)
    order = n // math.gcd(a, n)
    assert z ** order == 1
    assert all(z ** m != 1 for m in range(1, order))


def test_cyclotomic_polynomials_match_known_values():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_to_float_examples():
    assert cyclo_to_float(CycloNum.one(5)) == complex(1.0, 0.0)
    assert close(cyclo_to_float(cyclo_root_of_unity(1, 4)), 1j, 1e-15)
    assert close(cyclo_to_float(cyclo_root_of_unity(1, 3)), complex(-0.5, math.sqrt(3) / 2), 1e-15)


def test_rationalize_examples():
    assert cyclo_rationalize(CycloNum.from_rational(-1, 5)) == -1
    z = cyclo_root_of_unity(1, 3)
    assert cyclo_rationalize(z + z * z + 1) == 0
    with pytest.raises(NotRational):
        cyclo_rationalize(z)


def test_rationalize_galois_invariant_sum():
    # 2 cos(2 pi / 5) summed with its conjugate is -1
    z = cyclo_root_of_unity(1, 5)
    assert cyclo_rationalize(z + z.inverse() + z ** 2 + z ** 3) == -1


@given(cyclonums())
def test_float_matches_reference(xr):
    x, ref = xr
    assert abs(cyclo_to_float(x) - ref) <= 2 ** -40 * (1 + abs(ref)) * 64


@given(cyclonums(), cyclonums(), cyclonums())
def test_field_axioms(a, b, c):
    a, b, c = a[0], b[0], c[0]
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(cyclonums(), cyclonums())
def test_float_of_product(a, b):
    x, y = a[0], b[0]
    fx, fy = cyclo_to_float(x), cyclo_to_float(y)
    assert abs(cyclo_to_float(x * y) - fx * fy) <= 2 ** -30 * (1 + abs(fx * fy))


@given(cyclonums(st.sampled_from([2, 3, 4, 5, 6])), st.sampled_from([2, 3, 4, 5]))
def test_embedding_coherent(xr, m):
    x = xr[0]
    big = x.embed(x.conductor * m)
    assert big == x
    assert close(cyclo_to_float(big), cyclo_to_float(x))
    assert big * big == (x * x).embed(x.conductor * m)


@given(cyclonums())
def test_json_round_trip(xr):
    x = xr[0]
    assert CycloNum.from_json(x.to_json()) == x


def test_galois_conjugation():
    z = cyclo_root_of_unity(1, 8)
    assert z.conjugate() == z ** 7
    assert z.galois(3) == z ** 3
    assert cyclo_rationalize(z * z.conjugate()) == 1


def test_mixed_rational_arithmetic():
    z = cyclo_root_of_unity(1, 6)
    assert z * Fraction(1, 2) + Fraction(1, 2) * z == z
    assert (z - z) == 0
    assert 3 - z == -(z - 3)
