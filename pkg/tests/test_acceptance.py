"""One test per acceptance criterion; each prints a PASS/FAIL line with its worst residual."""

import time
from math import comb

import numpy as np
import pytest

from sracah import suites
from sracah.algebra import casimir_values, relation_residuals
from sracah.racah import RacahParams, racah_identities
from sracah.representation import build_rep, dimension, validate
from sracah.symmetry import IDENT, I, R, S, T, push_forward
from sracah.transitions import (closed_form_edge, cycle_certificates, intertwiner_oracle,
                                intertwining_residual, sign_aligned_diff)
import sracah.multivariate as mv

J_ALG = [((1, 1, 2, 1, 1), 6), ((2, 2, 4, 2, 2), 15), ((1.5, 1, 3, 1, 1.5), 6)]
J_INT = [(1, 1, 2, 1, 1), (2, 2, 4, 2, 2)]
J_ALL = J_INT + [(1.5, 1, 3, 1, 1.5)]
SUITE_BUDGET = 60.0


@pytest.fixture
def verdict(capsys):
    def emit(k: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
        assert ok, detail
    return emit


def test_criterion_1_algebra(verdict):
    t0 = time.perf_counter()
    worst_rel = worst_cas = 0.0
    dims_ok = True
    count_ok = True
    for j, d in J_ALG:
        rep = build_rep(j)
        rel = relation_residuals(rep)
        count_ok &= len(rel) == 24
        worst_rel = max(worst_rel, rel.worst())
        cas = casimir_values(rep)
        count_ok &= len(cas) == 5
        worst_cas = max(worst_cas, cas.worst())
        n = validate(j)
        dims_ok &= rep.dim == d == comb(n + 2, 2) == dimension(n)
    dt = time.perf_counter() - t0
    ok = worst_rel < 1e-9 and worst_cas < 1e-8 and dims_ok and count_ok and dt < SUITE_BUDGET
    verdict(1, ok, f"relations max {worst_rel:.2e} (<1e-9), Casimirs max {worst_cas:.2e} (<1e-8), "
                   f"dims 6/15/6 {dims_ok}, {dt:.2f}s")


def test_criterion_2_group(verdict):
    rep = suites.group_suite()
    failed = [c.residual.name for c in rep if not c.passed]
    names = [c.residual.name for c in rep]
    ok = (not failed and "order:<s,t,i>=120" in names and "order:<s,t>=60" in names
          and "r^5=e" in names and sum(n.startswith("relation:") for n in names) == 8
          and sum(n.startswith("coxeter:") for n in names) == 10)
    verdict(2, ok, f"{len(names)} exact certificates, failed: {failed or 'none'}")


def test_criterion_3_isomorphism(verdict):
    base = build_rep((1, 1, 2, 1, 1))
    worst = {}
    for name, g in (("s", S), ("t", T), ("i", I)):
        worst[name] = relation_residuals(push_forward(g, base)).worst()
    ok = max(worst.values()) < 1e-9
    verdict(3, ok, "pushed relation residuals " + ", ".join(f"{k}: {v:.2e}" for k, v in worst.items()))


def test_criterion_4_transitions(verdict):
    t0 = time.perf_counter()
    match = orth = inter = 0.0
    for j in J_INT:
        for kind, g in (("t", T), ("s", S), ("i", I), ("r", R)):
            cf = closed_form_edge(kind, j)
            orc = intertwiner_oracle(g, IDENT, j)
            match = max(match, sign_aligned_diff(orc.matrix, cf.matrix))
            orth = max(orth, cf.orthogonality(), orc.orthogonality())
            inter = max(inter, intertwining_residual(cf.matrix, g, IDENT, j),
                        intertwining_residual(orc.matrix, g, IDENT, j))
    dt = time.perf_counter() - t0
    ok = match < 1e-8 and orth < 1e-9 and inter < 1e-9 and dt < SUITE_BUDGET
    verdict(4, ok, f"closed vs oracle {match:.2e} (<1e-8), orthogonality {orth:.2e} (<1e-9), "
                   f"intertwining over 10 generators {inter:.2e} (<1e-9), {dt:.2f}s")


def test_criterion_5_cycles(verdict):
    parts = {}
    for j in J_INT:
        for r in cycle_certificates(j):
            parts[r.name] = max(parts.get(r.name, 0.0), r.value)
    ok = set(parts) == {"triangle", "pentagon", "six_product"} and max(parts.values()) < 1e-8
    verdict(5, ok, ", ".join(f"{k} {v:.2e}" for k, v in parts.items()) + " (<1e-8)")


def test_criterion_6_racah(verdict):
    t0 = time.perf_counter()
    checks = suites.racah_suite(seed=0, count=8, max_big_n=12)
    sets = {c.residual.name.split(":")[0] for c in checks}
    # half-integer parameters at N = 12 from the t-edge of J = (6,6,12,6,6)
    extra = racah_identities(RacahParams(-13, -13, 12, 13))
    needed = {"recurrence", "difference", "orthogonality", "duality", "whipple",
              "contiguous_n_raise", "contiguous_m_raise", "contiguous_n_lower", "contiguous_m_lower",
              "normalized_recurrence", "normalized_difference", "parameter_swap"}
    evaluated = {c.residual.name.split(":")[1] for c in checks if c.residual.evaluable}
    extra_ok = all(r.passes(1e-9) for r in extra if r.evaluable)
    worst = max([c.residual.value for c in checks] + [r.value for r in extra if r.evaluable])
    dt = time.perf_counter() - t0
    ok = (all(c.passed for c in checks) and extra_ok and len(sets) >= 5
          and needed <= evaluated and dt < SUITE_BUDGET)
    verdict(6, ok, f"{len(sets)} random sets + one N=12 half-integer set, worst {worst:.2e} (<1e-9), "
                   f"missing identities {sorted(needed - evaluated) or 'none'}, {dt:.2f}s")


def test_criterion_7_tratnik(verdict):
    t0 = time.perf_counter()
    worst = {}
    for j in J_ALL:
        rep = mv.tratnik_identities(j)
        for name in ("transition_match", "unitarity_rows", "unitarity_columns", "difference_phi",
                     "difference_rho", "recurrence_psi", "recurrence_phi", "weighted_orthogonality"):
            r = rep[name]
            worst[name] = max(worst.get(name, 0.0), r.value if r.evaluable else float("inf"))
    tols = suites.TRATNIK_TOLS
    dt = time.perf_counter() - t0
    ok = all(worst[k] < tols[k] for k in worst) and dt < SUITE_BUDGET
    verdict(7, ok, ", ".join(f"{k} {v:.1e}<{tols[k]:.0e}" for k, v in worst.items()) + f", {dt:.2f}s")


def test_criterion_8_griffiths(verdict):
    t0 = time.perf_counter()
    worst = {}
    for j in J_ALL:
        rep = mv.griffiths_identities(j)
        for name in ("transition_match", "tratnik_factored_form", "j1_j4_symmetry", "unitarity_rows",
                     "unitarity_columns", "difference_C134", "difference_C14", "recurrence_C24",
                     "recurrence_C234"):
            r = rep[name]
            worst[name] = max(worst.get(name, 0.0), r.value if r.evaluable else float("inf"))
    tols = suites.GRIFFITHS_TOLS
    dt = time.perf_counter() - t0
    ok = all(worst[k] < tols[k] for k in worst) and dt < SUITE_BUDGET
    verdict(8, ok, ", ".join(f"{k} {v:.1e}<{tols[k]:.0e}" for k, v in worst.items()) + f", {dt:.2f}s")


def test_criterion_9_fault_injection(verdict):
    total = 0
    missed = []
    for j, _ in J_ALG:
        trials, miss = suites.fault_injection(j, eps=1e-3, threshold=1e-4)
        total += trials
        missed += miss
    ok = total > 0 and not missed
    verdict(9, ok, f"{total} single-entry perturbations, {len(missed)} undetected")
