import math

import numpy as np
import pytest

from sracah._common import DomainError, SingularityError
from sracah.racah import (RacahParams, coeff_A, coeff_C, check_positivity, degree_residual, is_valid, racah_identities,
                          racah_P, racah_P_table, racah_r, random_valid_params, recurrence_coeffs)

P0 = RacahParams(0, 0, 2, 0)


def lam(m, p):
    return m * (m - p.big_n + p.delta)


@pytest.fixture(scope="module")
def valid_sets():
    rng = np.random.default_rng(7)
    return [random_valid_params(rng, max_big_n=8) for _ in range(4)]


def test_r_trivial_degrees():
    p = RacahParams(0.5, 0.5, 3, 0.25)
    for k in range(4):
        assert racah_r(0, k, p) == 1.0
        assert racah_r(k, 0, p) == 1.0


def test_r_single_term():
    assert racah_r(1, 1, P0) == pytest.approx(2.0, abs=1e-15)


def test_r_out_of_range():
    with pytest.raises(DomainError):
        racah_r(3, 0, P0)


def test_r_vanishing_denominator_names_factor():
    # (alpha+1)_k vanishes at k=1 for alpha=-1
    with pytest.raises((DomainError, SingularityError), match="alpha|α|denominator"):
        racah_r(1, 1, RacahParams(-1, 0, 2, 0))


def test_boundary_coefficients():
    for p in (P0, RacahParams(0.5, 0.5, 3, 0.25), RacahParams(0, 1, 4, 0.5)):
        a0, c0, b0, d0 = recurrence_coeffs(0, p)
        assert c0 == 0.0 and d0 == 0.0
        assert recurrence_coeffs(p.big_n, p)[0] == 0.0


def test_three_term_recurrence_point():
    # B_1 is singular here (2m - N + delta = 0), so only the n-side coefficients are used
    a1, c1 = coeff_A(1, P0), coeff_C(1, P0)
    lhs = lam(1, P0) * racah_r(1, 1, P0)
    rhs = a1 * racah_r(2, 1, P0) - (a1 + c1) * racah_r(1, 1, P0) + c1 * racah_r(0, 1, P0)
    assert abs(lhs - rhs) < 1e-12


def test_orthonormal_rows(valid_sets):
    for p in valid_sets:
        t = racah_P_table(p)
        assert np.max(np.abs(t @ t.T - np.eye(p.big_n + 1))) < 1e-10


def test_symmetric_recurrence_and_difference(valid_sets):
    for p in valid_sets:
        rep = racah_identities(p)
        assert rep["normalized_recurrence"].value < 1e-10
        assert rep["normalized_difference"].value < 1e-10


def test_table_matches_pointwise(valid_sets):
    p = valid_sets[0]
    t = racah_P_table(p)
    for n in range(p.big_n + 1):
        for m in range(p.big_n + 1):
            assert t[n, m] == pytest.approx(racah_P(n, m, p), abs=1e-13)


def test_unit_table_is_sign():
    p = RacahParams(-3, -3, 0, 1)
    assert abs(racah_P(0, 0, p)) == pytest.approx(1.0)


def test_zero_parameter_set_rejected():
    # A_0 C_1 = -2 at (0,0,4,0): the square-root normalization is not real
    p = RacahParams(0, 0, 4, 0)
    assert not is_valid(p)
    with pytest.raises(DomainError, match=r"A_0\*C_1"):
        check_positivity(p)
    with pytest.raises(DomainError):
        racah_P_table(p)


def test_duality_and_whipple():
    rep = racah_identities(RacahParams(0.5, 0.5, 3, 0.25))
    assert rep["duality"].value < 1e-10
    assert rep["whipple"].value < 1e-10
    assert rep["parameter_swap"].value < 1e-10


def test_contiguous_relations():
    rep = racah_identities(RacahParams(0, 1, 4, 0.5))
    for name in ("contiguous_n_raise", "contiguous_m_raise", "contiguous_n_lower", "contiguous_m_lower"):
        assert rep[name].evaluable, name
        assert rep[name].value < 1e-10, name


def test_degree_in_lambda():
    for p in (RacahParams(0.5, 0.5, 5, 0.25), RacahParams(0, 1, 6, 0.5)):
        r = degree_residual(p)
        assert r.value < 1e-9


def test_singular_identity_flagged_not_failed():
    # (0,0,2,0): every lowering-relation denominator vanishes somewhere on the grid
    rep = racah_identities(P0)
    r = rep["contiguous_n_lower"]
    assert not r.evaluable and r.skipped > 0
    assert r.as_dict(1e-10)["status"] == "not evaluable"
    assert not r.passes(1e-10)
    assert rep["orthogonality"].note.startswith("not evaluable")
    # partially singular grids still report the points that could be evaluated
    part = racah_identities(RacahParams(0.5, 0.5, 3, 3))["contiguous_m_lower"]
    assert part.evaluated > 0 and part.skipped > 0 and part.value < 1e-12


def test_large_n_no_cancellation():
    rng = np.random.default_rng(3)
    p = random_valid_params(rng, max_big_n=12, min_big_n=12)
    t = racah_P_table(p)
    assert np.max(np.abs(t @ t.T - np.eye(13))) < 1e-9
    assert all(math.isfinite(v) for v in t.ravel())
