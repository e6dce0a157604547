"""Verification suites: named residuals paired with their tolerances."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._common import Residual
from .algebra import CONTIGUOUS_NONCENTRAL, L, RepHandle, casimir_properties, casimir_values, relation_residuals
from .racah import racah_identities, random_valid_params
from .representation import Quintuplet, build_rep, check_irreducible, dimension, validate
from .symmetry import IDENT, I, R, S, T, graph_certificates, group_certificates
from . import multivariate as mv
from . import transitions as tr

SUITES = ("algebra", "casimir", "group", "transitions", "cycles", "racah", "tratnik", "griffiths")
NEEDS_J = {"algebra", "casimir", "transitions", "cycles", "tratnik", "griffiths"}


@dataclass
class Check:
    suite: str
    residual: Residual
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual.passes(self.tol)

    def as_dict(self) -> dict:
        d = self.residual.as_dict(self.tol)
        d["suite"] = self.suite
        return d


def perturb_rep(rep: RepHandle, eps: float, label="C23", i: int = 0, k: int = 1) -> RepHandle:
    """Add eps to one entry of one generator (no symmetrization)."""
    m = np.array(rep.mats[L(label)], dtype=float)
    if not (0 <= i < m.shape[0] and 0 <= k < m.shape[1]):
        raise IndexError(f"entry ({i},{k}) outside a {m.shape[0]}x{m.shape[1]} matrix")
    m[i, k] += eps
    return rep.replace(label, m)


def _flag(name: str, ok: bool, note: str = "") -> Residual:
    return Residual(name, 0.0 if ok else 1.0, note=note)


def algebra_suite(j=None, rep: RepHandle | None = None, tol: float = 1e-9) -> list[Check]:
    out = []
    if rep is None:
        rep = build_rep(j)
    for r in relation_residuals(rep):
        out.append(Check("algebra", r, tol))
    if j is not None:
        big_n = validate(j)
        out.append(Check("algebra", _flag("dimension", rep.dim == dimension(big_n),
                                          f"dim {rep.dim}, expected {dimension(big_n)}"), 0.5))
    out.append(Check("algebra", Residual("central_values", rep.central_residual()), tol))
    return out


def casimir_suite(j=None, rep: RepHandle | None = None, tol: float = 1e-8) -> list[Check]:
    """Casimir norms divided by max(1, largest generator entry)^2.

    The Casimirs are quartic in the generators, so their rounding noise grows
    with N; the absolute norm stays in the report.
    """
    if rep is None:
        rep = build_rep(j)
    scale = max(1.0, max(float(np.max(np.abs(rep.mats[x]))) for x in CONTIGUOUS_NONCENTRAL)) ** 2
    out = [Check("casimir", Residual(r.name, r.value / scale, absolute=r.value,
                                     note=f"relative to {scale:.3g}"), tol)
           for r in casimir_values(rep)]
    out += [Check("casimir", Residual(r.name, r.value / scale, absolute=r.value,
                                      note=f"relative to {scale:.3g}"), tol)
            for r in casimir_properties(rep)]
    if j is not None:
        out.append(Check("casimir", _flag("irreducible", check_irreducible(rep)), 0.5))
    return out


def group_suite() -> list[Check]:
    return ([Check("group", r, 0.5) for r in group_certificates()]
            + [Check("group", r, 0.5) for r in graph_certificates()])


EDGE_KINDS = {"t": T, "s": S, "i": I, "r": R}


def transitions_suite(j, tol: float = 1e-9, match_tol: float = 1e-8) -> list[Check]:
    out = []
    for kind, g in EDGE_KINDS.items():
        cf = tr.closed_form_edge(kind, j)
        orc = tr.intertwiner_oracle(g, IDENT, j)
        out.append(Check("transitions", Residual(f"{kind}:closed_vs_oracle",
                                                 tr.sign_aligned_diff(orc.matrix, cf.matrix)), match_tol))
        out.append(Check("transitions", Residual(f"{kind}:orthogonality", cf.orthogonality()), tol))
        out.append(Check("transitions", Residual(
            f"{kind}:intertwining", tr.intertwining_residual(cf.matrix, g, IDENT, j)), tol))
        out.append(Check("transitions", Residual(f"{kind}:inversion", tr.inversion_residual(g, j)), match_tol))
    return out


def cycles_suite(j, tol: float = 1e-8) -> list[Check]:
    return [Check("cycles", r, tol) for r in tr.cycle_certificates(j)]


def racah_suite(seed: int = 0, count: int = 5, max_big_n: int = 12, tol: float = 1e-9) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        params = random_valid_params(rng, max_big_n=max_big_n, min_big_n=max(1, max_big_n // 2) if k else 1)
        for r in racah_identities(params):
            r = Residual(f"set{k}:{r.name}", r.value, r.evaluated, r.skipped,
                         note=(r.note + " " if r.note else "") + f"{params}")
            out.append(Check("racah", r, tol))
    return out


TRATNIK_TOLS = {
    "transition_match": 1e-9, "unitarity_rows": 1e-9, "unitarity_columns": 1e-9,
    "difference_phi": 1e-8, "difference_rho": 1e-8, "recurrence_psi": 1e-8, "recurrence_phi": 1e-8,
    "weighted_orthogonality": 1e-7, "omega_normalization": 1e-9, "relabelled_normalization": 1e-9,
}

GRIFFITHS_TOLS = {
    "transition_match": 1e-9, "tratnik_factored_form": 1e-10, "dual_form": 1e-10,
    "omega_normalization": 1e-9, "j1_j4_symmetry": 1e-10,
    "unitarity_rows": 1e-9, "unitarity_columns": 1e-9,
    "difference_C134": 1e-8, "difference_C14": 1e-8, "recurrence_C24": 1e-8, "recurrence_C234": 1e-8,
}


def tratnik_suite(j, tol: float | None = None) -> list[Check]:
    rep = mv.tratnik_identities(j)
    out = [Check("tratnik", r, tol or TRATNIK_TOLS.get(r.name, 1e-8)) for r in rep]
    if validate(j) <= 6:
        out.append(Check("tratnik", mv.polynomiality_residual(j), tol or 1e-7))
    return out


def griffiths_suite(j, tol: float | None = None) -> list[Check]:
    return [Check("griffiths", r, tol or GRIFFITHS_TOLS.get(r.name, 1e-8))
            for r in mv.griffiths_identities(j)]


def run(suite: str, j=None, tol: float | None = None, rep: RepHandle | None = None) -> list[Check]:
    if suite not in SUITES:
        raise KeyError(suite)
    if suite in NEEDS_J and j is None and rep is None:
        raise ValueError(f"suite {suite!r} needs a quintuplet")
    if j is not None:
        j = Quintuplet.of(j)
    if suite == "algebra":
        return algebra_suite(j, rep, tol or 1e-9)
    if suite == "casimir":
        return casimir_suite(j, rep, tol or 1e-8)
    if suite == "group":
        return group_suite()
    if suite == "transitions":
        return transitions_suite(j, tol or 1e-9, tol or 1e-8)
    if suite == "cycles":
        return cycles_suite(j, tol or 1e-8)
    if suite == "racah":
        return racah_suite(tol=tol or 1e-9)
    if suite == "tratnik":
        return tratnik_suite(j, tol)
    return griffiths_suite(j, tol)


def fault_injection(j, eps: float = 1e-3, threshold: float = 1e-4) -> tuple[int, list[tuple]]:
    """Perturb every off-diagonal entry of every non-central generator in turn.

    Returns the number of trials and the list of trials that went unnoticed.
    """
    base = build_rep(j)
    d = base.dim
    missed = []
    trials = 0
    for lab in CONTIGUOUS_NONCENTRAL:
        for i in range(d):
            for k in range(d):
                if i == k:
                    continue
                trials += 1
                rep = perturb_rep(base, eps, lab, i, k)
                worst = max(r.value for r in relation_residuals(rep) if r.evaluable)
                if not worst > threshold or math.isnan(worst):
                    missed.append((str(lab), i, k, worst))
    return trials, missed
