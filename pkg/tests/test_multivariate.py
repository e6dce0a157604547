import math

import numpy as np
import pytest

from sracah._common import DomainError
from sracah.algebra import L, reconstruct
from sracah.representation import basis, build_rep, symmetric_coeffs, validate
from sracah.symmetry import IDENT, R, T, act_on_quintuplet
from sracah.transitions import sign_aligned_diff, word_matrix
import sracah.multivariate as mv

J1 = (1, 1, 2, 1, 1)
J2 = (2, 2, 4, 2, 2)
JH = (1.5, 1, 3, 1, 1.5)


@pytest.fixture(scope="module")
def trat_reports():
    return {j: mv.tratnik_identities(j) for j in (J1, J2, JH)}


@pytest.fixture(scope="module")
def griff_reports():
    return {j: mv.griffiths_identities(j) for j in (J1, J2, JH)}


def test_tratnik_origin_is_prefactor():
    j, n = mv._jN(J1)
    assert mv.tratnik(0, 0, 0, 0, J1) == pytest.approx(mv._tratnik_prefactor(0, 0, 0, 0, j, n), rel=1e-13)


def test_tratnik_theta_zeros():
    tab = mv.tratnik_table(J1)
    zeros = [(n1, n2, m1, m2) for n1, n2, m1, m2, _ in tab.rows() if n2 + m1 > 2]
    assert zeros
    assert all(tab[z] == 0.0 for z in zeros)


def test_tratnik_domain():
    with pytest.raises(DomainError):
        mv.tratnik(2, 1, 0, 0, J1)
    assert mv.tratnik_table(J1).get(3, 0, 0, 0) == 0.0


def test_tratnik_table_is_r2_transition():
    tab = mv.tratnik_table(J1)
    assert sign_aligned_diff(word_matrix(R ** 2, J1).matrix, tab.matrix) < 1e-9


def test_tratnik_unitarity_j2(trat_reports):
    rep = trat_reports[J2]
    assert rep["unitarity_rows"].value < 1e-9
    assert rep["unitarity_columns"].value < 1e-9


@pytest.mark.parametrize("j,tol", [(J1, 1e-9), (J2, 1e-8), (JH, 1e-9)])
def test_tratnik_four_identities(trat_reports, j, tol):
    rep = trat_reports[j]
    for name in ("difference_phi", "difference_rho", "recurrence_psi", "recurrence_phi"):
        assert rep[name].value < tol, name


def test_tratnik_normalization_forms(trat_reports):
    for rep in trat_reports.values():
        assert rep["omega_normalization"].value < 1e-12
        assert rep["relabelled_normalization"].value < 1e-12


def test_weights_positive():
    n = validate(J1)
    for x2 in range(n + 1):
        for x1 in range(x2 + 1):
            for k1, k2 in basis(n):
                w, k = mv.tratnik_weight(x1, x2, k1, k2, J1)
                assert w > 0 and k > 0


def test_literal_weight_sign():
    w, k = mv.tratnik_weight(0, 1, 0, 0, J1, literal=True)
    assert w < 0 and k > 0
    assert mv.tratnik_weight(0, 1, 0, 0, J1)[0] == -w


def test_literal_dual_weight_constant():
    # the displayed K misses 1/(k1+k2+2j1+2j0-N+1); at k=0 that is 1/3 for J1
    for k1, k2 in basis(2):
        lit = mv.tratnik_weight(0, 0, k1, k2, J1, literal=True)[1]
        cor = mv.tratnik_weight(0, 0, k1, k2, J1)[1]
        assert lit / cor == pytest.approx(k1 + k2 + 3)


@pytest.mark.parametrize("j", [J1, J2, JH])
def test_r2_rational_at_nodes(j):
    # R2 has rational coefficients, so on the x1 = 0 nodes it takes integer values here
    n = validate(j)
    for k1, k2 in basis(n):
        for x2 in range(n + 1):
            v = mv.tratnik_R2(k1, k2, 0, x2, j)
            assert abs(v - round(v)) < 1e-6 * max(1.0, abs(v))


def test_weight_domain():
    with pytest.raises(DomainError):
        mv.tratnik_weight(2, 1, 0, 0, J1)


def test_r2_degree_zero():
    n = validate(J2)
    for x2 in range(n + 1):
        for x1 in range(x2 + 1):
            assert mv.tratnik_R2(0, 0, x1, x2, J2) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("j,tol", [(J1, 1e-8), (J2, 1e-7), (JH, 1e-8)])
def test_weighted_orthogonality(j, tol):
    assert mv.weighted_orthogonality(j).value < tol


@pytest.mark.parametrize("j", [J1, J2])
def test_r2_polynomial_in_lambda(j):
    r = mv.polynomiality_residual(j)
    assert r.evaluated > 0
    assert r.value < 1e-9


def test_griffiths_origin():
    j, n = mv._jN(J1)
    direct = mv.griffiths(0, 0, 0, 0, J1)
    assert direct == pytest.approx(mv._griff_via_r(0, 0, 0, 0, j, n), abs=1e-14)
    # every Racah factor is r_0 = 1, so the value is the signed sum of the weights
    by_weights = sum((-1) ** a * mv._griffiths_prefactor(0, 0, 0, 0, a, j, n) for a in range(n + 1))
    assert direct == pytest.approx(by_weights, abs=1e-14)


def test_griffiths_is_t2r2_transition():
    tab = mv.griffiths_table(J1)
    assert sign_aligned_diff(word_matrix(T ** 2 * R ** 2, J1).matrix, tab.matrix) < 1e-9


@pytest.mark.parametrize("j", [J1, J2, JH])
def test_griffiths_forms(griff_reports, j):
    rep = griff_reports[j]
    assert rep["tratnik_factored_form"].value < 1e-10
    assert rep["dual_form"].value < 1e-10
    assert rep["omega_normalization"].value < 1e-10
    assert rep["j1_j4_symmetry"].value < 1e-10
    assert rep["unitarity_rows"].value < 1e-9
    assert rep["unitarity_columns"].value < 1e-9
    assert rep["transition_match"].value < 1e-9


@pytest.mark.parametrize("j,tol", [(J1, 1e-9), (J2, 1e-8), (JH, 1e-9)])
def test_griffiths_nine_point(griff_reports, j, tol):
    rep = griff_reports[j]
    for name in ("difference_C134", "difference_C14", "recurrence_C24", "recurrence_C234"):
        assert rep[name].value < tol, name


def test_griffiths_cross_check_raises(monkeypatch):
    monkeypatch.setattr(mv, "_griff_via_tratnik", lambda *a: 99.0)
    with pytest.raises(ArithmeticError):
        mv.griffiths(0, 0, 0, 0, J1)
    assert mv.griffiths(0, 0, 0, 0, J1, check=False) == pytest.approx(-1 / 6)


@pytest.mark.parametrize("j", [J1, J2])
def test_stencils_are_generators(j):
    # the four nine-point operators are the matrices of C234, C134, C14, C24
    for jj in (j, act_on_quintuplet(T ** 2 * R ** 2, j)):
        cb = symmetric_coeffs(jj, strict=False)
        rep = build_rep(jj, strict=False)
        for v in ("C234", "C134", "C14", "C24"):
            assert np.max(np.abs(mv.nine_point_matrix(cb, v) - reconstruct(v, rep))) < 1e-10, v


def test_recurrence_stencil_shared():
    # Tratnik's second recurrence and Griffiths' C234 recurrence use the same operator
    cb = symmetric_coeffs(J2)
    a = mv.nine_point_matrix(cb, "C234")
    assert np.max(np.abs(a - build_rep(J2).mats[L(234)])) < 1e-12


def test_boundary_taps_ignored():
    cb = symmetric_coeffs(J1)
    calls = []

    def f(a, b):
        calls.append((a, b))
        return 1.0
    mv.nine_point(cb, "C234", f, 0, 0)
    assert all(a >= 0 and b >= 0 and a + b <= 2 for a, b in calls)
