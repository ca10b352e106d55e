from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kverlinde.characters import trivial_character, weight_multiplicities
from kverlinde.lie import build_root_datum
from kverlinde.oracles import disk_pairing, fusion_verlinde
from kverlinde.pairings import (
    InsufficientSamples,
    NotInLattice,
    PairingRequest,
    QuasiPoly,
    SeriesTooShort,
    ValidationMismatch,
    fit_minimal_degree,
    intersection_number,
    multiplicity_series,
    pairing_table,
    quasi_poly_fit,
    rows_to_csv,
)
from kverlinde.scalars import cyclo_rationalize

A1 = build_root_datum("A", 1)


def test_fit_constant():
    qp = quasi_poly_fit([(k, 5) for k in range(1, 5)], 1, 0)
    assert qp.polys == {0: [5]}


def test_fit_square():
    qp = quasi_poly_fit([(k, k * k) for k in range(1, 5)], 1, 2)
    assert qp.polys == {0: [0, 0, 1]}
    assert qp(10) == 100


def test_fit_errors():
    with pytest.raises(InsufficientSamples):
        quasi_poly_fit([(1, 1), (2, 4), (3, 9)], 1, 2)
    with pytest.raises(ValidationMismatch):
        quasi_poly_fit([(k, k ** 3) for k in range(1, 6)], 1, 2)
    with pytest.raises(InsufficientSamples):
        quasi_poly_fit([(k, k) for k in range(1, 7)], 4, 1)


def test_fit_with_period():
    # k/2 on even k, (k+1)/2 on odd k
    samples = [(k, Fraction((k + k % 2), 2)) for k in range(1, 11)]
    qp = quasi_poly_fit(samples, 2, 1)
    assert all(qp(k) == v for k, v in samples)
    assert qp(101) == 51


def test_fit_restricted_residues():
    # only even k sampled; odd classes are not required
    samples = [(k, Fraction(k * k, 4)) for k in range(2, 12, 2)]
    with pytest.raises(InsufficientSamples):
        quasi_poly_fit(samples, 2, 2)
    qp = quasi_poly_fit(samples, 2, 2, residues=[0])
    assert qp(20) == 100
    with pytest.raises(ValueError):
        qp(3)
    with pytest.raises(ValueError):
        quasi_poly_fit(samples + [(3, Fraction(1))], 2, 2, residues=[0])


def test_admissible_residues():
    req = PairingRequest(A1, 1, [(Fraction(1, 2),)], [2, 4], trivial_character(A1))
    assert req.admissible_residues(2) == [0]
    assert req.admissible_residues(4) == [0, 2]
    assert req.admissible_residues(3) == [0, 1, 2]
    assert PairingRequest(A1, 1, [], [1], trivial_character(A1)).admissible_residues(2) == [0, 1]


@given(
    st.integers(1, 3),
    st.integers(0, 3),
    st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=12, max_size=12),
)
def test_fit_reproduces_samples(period, degree, coeffs):
    def f(k):
        cs = coeffs[(k % period) * 4:(k % period) * 4 + degree + 1]
        return sum((c * k ** i for i, c in enumerate(cs)), Fraction(0))

    samples = [(k, f(k)) for k in range(1, period * (degree + 3) + 1)]
    qp = quasi_poly_fit(samples, period, degree)
    assert all(qp(k) == v for k, v in samples)
    assert QuasiPoly.from_json(qp.to_json()).polys == qp.polys


def test_minimal_degree():
    samples = [(k, fusion_verlinde(k, 2)) for k in range(1, 9)]
    qp = fit_minimal_degree(samples, 1, 5)
    assert qp.degree == 3


def test_request_validation():
    with pytest.raises(NotInLattice):
        PairingRequest(A1, 1, [(Fraction(1, 2),)], [1, 2], trivial_character(A1))
    req = PairingRequest(A1, 1, [(Fraction(1, 2),)], [2, 4], trivial_character(A1))
    assert req.default_period == 2


def test_zero_weights_give_closed_surface():
    for g in (0, 1, 2):
        req = PairingRequest(A1, g, [], [1, 2, 3], trivial_character(A1), order=0)
        for k in req.levels:
            assert multiplicity_series(req, k) == fusion_verlinde(k, g)


def test_one_marked_point():
    # a = omega at k = 2 gives the label 2 (the representation of highest weight 2 omega)
    req = PairingRequest(A1, 1, [(1,)], [2], trivial_character(A1), order=0)
    assert multiplicity_series(req, 2) == fusion_verlinde(2, 1, [2])
    req = PairingRequest(A1, 1, [(Fraction(1, 2),)], [2, 4], trivial_character(A1), order=0)
    for k in (2, 4):
        assert multiplicity_series(req, k) == fusion_verlinde(k, 1, [k // 2])


def test_trivial_deformation_constant():
    req = PairingRequest(A1, 2, [], [1, 2], trivial_character(A1), order=2)
    for k in req.levels:
        s = multiplicity_series(req, k)
        assert all(c.is_zero() for c in s.coeffs[1:])
        assert intersection_number(req, k) == 0


def test_intersection_number_needs_order_one():
    req = PairingRequest(A1, 2, [], [1], weight_multiplicities(A1, (1,)), order=0)
    with pytest.raises(SeriesTooShort):
        intersection_number(req, 1)


def test_genus_zero_intersection_matches_disk():
    fund = weight_multiplicities(A1, (1,))
    for a in [(0,), (Fraction(1, 2),), (1,)]:
        for k in (2, 4):
            req = PairingRequest(A1, 0, [a], [k], fund, order=1)
            hw = (int(k * a[0]),)
            f = weight_multiplicities(A1, hw).dual()
            disk = disk_pairing(A1, fund, k, f, 1)
            assert intersection_number(req, k) == cyclo_rationalize(disk[1])


def test_table_and_csv():
    req = PairingRequest(A1, 1, [], [1, 2], weight_multiplicities(A1, (2,)), order=1)
    rows, series = pairing_table(req, "both")
    assert [(r.k, r.t_order) for r in rows] == [(1, 0), (1, 1), (2, 0), (2, 1)]
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == "k,t_order,value_rational,value_float_re,value_float_im"
    assert set(series) == {1, 2}
