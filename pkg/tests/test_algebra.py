import numpy as np
import pytest

from sracah.algebra import (ALL_LABELS, CONTIGUOUS, L, RepHandle, StructureError, casimir_properties,
                            casimir_values, casimir_w, contiguous_expansion, group_maxima, reconstruct,
                            relation_residuals, subset_sum_residual)
from sracah.representation import build_rep

J1 = (1, 1, 2, 1, 1)
J2 = (2, 2, 4, 2, 2)


@pytest.fixture(scope="module")
def rep1():
    return build_rep(J1)


@pytest.fixture(scope="module")
def rep2():
    return build_rep(J2)


def test_labels_parse_and_order():
    assert L("C12") == L(12) == L((2, 1)) == L({1, 2})
    assert str(L((3, 1))) == "C13"
    assert len(ALL_LABELS) == 15
    assert L(1).is_central and L(1234).is_central and not L(23).is_central
    with pytest.raises(ValueError):
        L(15)


def test_commuting_label_pairs():
    assert L(14).commutes_with(L(23))
    assert L(12).commutes_with(L(123))
    assert not L(12).commutes_with(L(23))


def test_reconstruct_contiguous_is_stored(rep1):
    assert reconstruct(L(12), rep1) is rep1.mats[L(12)]


def test_reconstruct_c13(rep1):
    mu1, mu2, mu3 = rep1.mu[:3]
    m = rep1.mats
    expect = -m[L(23)] + m[L(123)] - m[L(12)] + (mu1 + mu2 + mu3) * np.eye(rep1.dim)
    assert np.array_equal(reconstruct(L(13), rep1), expect)


def test_reconstruct_empty_label(rep1):
    assert np.array_equal(reconstruct((), rep1), np.zeros((6, 6)))
    assert contiguous_expansion(()) == ()


def test_c14_commutes_with_c23(rep1):
    a, b = reconstruct(14, rep1), reconstruct(23, rep1)
    assert np.max(np.abs(a @ b - b @ a)) < 1e-10


def test_subset_sum_rule(rep2):
    assert subset_sum_residual(rep2) < 1e-9


def test_zero_rep_residuals_vanish():
    d = 3
    rep = RepHandle.from_noncentral({k: np.zeros((d, d)) for k in (12, 23, 34, 123, 234)}, (0,) * 5)
    rep_rel = relation_residuals(rep)
    assert len(rep_rel) == 24
    assert rep_rel.worst() == 0.0


def test_structure_errors():
    mats = {k: np.zeros((3, 3)) for k in (12, 23, 34, 123)}
    mats[234] = np.zeros((4, 4))
    with pytest.raises(StructureError, match="dimension mismatch"):
        RepHandle.from_noncentral(mats, (0,) * 5)
    with pytest.raises(StructureError, match="missing"):
        RepHandle({L(12): np.zeros((2, 2))}, (0,) * 5)


@pytest.mark.parametrize("j", [J1, J2])
def test_all_relations_hold(j):
    rep = build_rep(j)
    res = relation_residuals(rep)
    assert len(res) == 24
    assert res.all_pass(1e-10)
    assert set(group_maxima(res)) == {"comm", "r3", "r4a", "r4b"}


def test_group_sizes(rep1):
    names = relation_residuals(rep1).names()
    counts = {g: sum(n.startswith(g + ":") for n in names) for g in ("comm", "r3", "r4a", "r4b")}
    assert counts == {"comm": 5, "r3": 10, "r4a": 5, "r4b": 4}


def test_perturbation_detected(rep1):
    m = rep1.mats[L(23)].copy()
    m[0, 1] += 1e-3
    res = relation_residuals(rep1.replace(23, m))
    assert group_maxima(res)["r3"] > 1e-4


def test_casimirs_vanish(rep1, rep2):
    assert casimir_values(rep1).all_pass(1e-9)
    assert casimir_values(rep2).all_pass(1e-8)
    assert casimir_values(rep1).names() == ["w123", "w124", "w134", "w234", "x1234"]


def test_w_symmetry(rep1):
    a = casimir_w(1, 2, 3, rep1)
    b = casimir_w(2, 1, 3, rep1)
    assert np.max(np.abs(a - b)) < 1e-9
    assert casimir_properties(rep1).all_pass(1e-9)


def test_w_needs_disjoint_subsets(rep1):
    with pytest.raises(ValueError):
        casimir_w(12, 2, 3, rep1)


def test_casimirs_nonzero_off_shell(rep1):
    # rescaling C23 leaves the algebra, so w_123 stops vanishing
    bad = rep1.replace(23, 1.1 * rep1.mats[L(23)])
    assert casimir_values(bad).worst() > 1e-3


def test_central_generators_are_scalar(rep2):
    for lab in CONTIGUOUS[:5]:
        m = rep2.mats[lab]
        assert np.allclose(m, m[0, 0] * np.eye(rep2.dim))
    assert rep2.central_residual() == 0.0
