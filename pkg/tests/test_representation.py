from math import comb

import numpy as np
import pytest

from sracah.algebra import L, casimir_values, relation_residuals
from sracah.representation import (GenericFamily, Quintuplet, ValidationError, basis, build_rep,
                                   canonical_shifts, check_irreducible, dimension, generic_coeffs,
                                   position, symmetric_coeffs, validate)

J1 = (1, 1, 2, 1, 1)
J2 = (2, 2, 4, 2, 2)
JH = (1.5, 1, 3, 1, 1.5)


@pytest.mark.parametrize("j,n,d", [(J1, 2, 6), (J2, 4, 15), (JH, 2, 6)])
def test_validate_and_dimension(j, n, d):
    assert validate(j) == n
    assert dimension(n) == comb(n + 2, 2) == d


def test_lower_bound_rejection():
    with pytest.raises(ValidationError, match="lower bound j1\\+j2\\+j0-j4=4"):
        validate((2, 2, 3, 2, 2))


def test_zero_quintuplet_rejected():
    with pytest.raises(ValidationError, match="N=0 is not positive"):
        validate((0, 0, 0, 0, 0))


def test_all_violations_listed():
    with pytest.raises(ValidationError) as exc:
        validate((0.5, 1, 0.2, 2, 1))
    text = str(exc.value)
    assert "j1 >= j2" in text and "j2 >= j4" in text and "not an integer" in text


def test_parse():
    assert Quintuplet.parse("3/2,1,3,1,3/2") == Quintuplet(1.5, 1, 3, 1, 1.5)
    with pytest.raises(ValidationError):
        Quintuplet.parse("1,2,3")


def test_basis_order():
    b = basis(2)
    assert b == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert [position(n, p, 2) for n, p in b] == list(range(6))
    with pytest.raises(IndexError):
        position(2, 1, 2)


def test_psi00_two_forms():
    fam = GenericFamily(J1, -3, -3)
    assert abs(fam.psi00(1, 0) - fam.psi00_mu(1, 0)) < 1e-12
    c = generic_coeffs(J1, -3, -3, 1, 0)
    assert abs(c.psi00 - c.psi00_mu) < 1e-12


def test_psi_product_vanishes_at_bottom():
    a12, a123 = canonical_shifts(J2)
    assert a12 == -5
    assert generic_coeffs(J2, a12, a123, 0, 1).psi_prod == 0.0


def test_ratio_identity():
    fam = GenericFamily(J2, *canonical_shifts(J2))
    lhs, rhs = fam.ratio_identity(1, 1)
    assert abs(lhs - rhs) < 1e-10


def test_psi_squared_matches_product():
    cb = symmetric_coeffs(J1)
    fam = GenericFamily(J1, *canonical_shifts(J1))
    for n, p in basis(cb.big_n):
        if n >= 1:
            assert abs(cb.psi(n, p) ** 2 - fam.psi_prod(n, p)) < 1e-12
        if p >= 1:
            assert abs(cb.rho(n, p) ** 2 - fam.rho_prod(n, p)) < 1e-12


def test_phi00_closed_forms_agree():
    cb = symmetric_coeffs(J2)
    for n, p in basis(cb.big_n):
        assert abs(cb.phi00_via_rho(n, p) - cb.phi00_via_psi(n, p)) < 1e-10


def test_corner_entries_match_ratio_forms():
    cb = symmetric_coeffs(J2)
    for n, p in basis(cb.big_n):
        if n >= 1 and p >= 1:
            assert abs(cb.phiD(n, p) - cb.phiD_ratio_form(n, p)) < 1e-10
        if n >= 1 and p >= 1 and n + p <= cb.big_n:
            assert abs(cb.phiA(n, p) - cb.phiA_ratio_form(n, p)) < 1e-10


def test_phiD_outside_triangle():
    cb = symmetric_coeffs(J1)
    assert cb.phiD(1, 2) == 0.0
    assert cb.phiD(2, 1) == 0.0


@pytest.mark.parametrize("j", [J1, J2, JH])
def test_matrices_symmetric(j):
    rep = build_rep(j)
    for lab, m in rep.mats.items():
        assert np.max(np.abs(m - m.T)) < 1e-12, lab


def test_diagonal_spectra():
    rep = build_rep(J1)
    c12 = np.diag(rep.mats[L(12)])
    c123 = np.diag(rep.mats[L(123)])
    for k, (n, p) in enumerate(basis(2)):
        assert c12[k] == (n - 3) * (n - 2)
        assert c123[k] == (p - 3) * (p - 2)
    assert np.array_equal(rep.mats[L(12)] @ rep.mats[L(123)], rep.mats[L(123)] @ rep.mats[L(12)])


def test_tridiagonal_structure():
    rep = build_rep(J2)
    c23 = rep.mats[L(23)]
    for a, (n, p) in enumerate(basis(4)):
        for b, (m, q) in enumerate(basis(4)):
            if c23[a, b] != 0.0:
                assert p == q and abs(n - m) <= 1


@pytest.mark.parametrize("j", [J1, J2, JH])
def test_theorem_rep_is_representation(j):
    rep = build_rep(j)
    assert relation_residuals(rep).all_pass(1e-10)
    assert casimir_values(rep).all_pass(1e-8)


def test_irreducible():
    assert check_irreducible(build_rep(J1))
    assert check_irreducible(build_rep(J2))
    rep = build_rep(J1)
    assert not check_irreducible(rep.replace(123, np.zeros((6, 6))))
