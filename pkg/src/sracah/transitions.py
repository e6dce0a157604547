"""Transition matrices between the equivalent representations pi_g.

T_{h,g}(J) satisfies T pi_g(X) = pi_h(X) T for every X; rows are indexed by
the h-basis (n,p) and columns by the g-basis (m,q), both in lex order.
Matrices are only defined up to a global sign, fixed here by making the
first nonzero entry (row-major) positive.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ._common import DomainError, Report, Residual, SingularityError, maxabs, sgn
from .algebra import CONTIGUOUS
from .racah import RacahParams, racah_P
from .representation import Quintuplet, basis, dimension, integral_n, position
from .symmetry import IDENT, R, S, T as T_ELT, GroupElement, act_on_quintuplet, pi_g, vertex_of, adjacency

log = logging.getLogger(__name__)

ZERO_TOL = 1e-12
NULL_GAP = 1e-7


class TransitionError(RuntimeError):
    pass


@dataclass
class TransitionMatrix:
    matrix: np.ndarray
    from_elt: GroupElement
    to_elt: GroupElement
    j: Quintuplet
    notes: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def orthogonality(self) -> float:
        return maxabs(self.matrix @ self.matrix.T - np.eye(self.dim))


def canonical_sign(m: np.ndarray) -> np.ndarray:
    flat = m.ravel()
    nz = np.flatnonzero(np.abs(flat) > ZERO_TOL)
    if nz.size and flat[nz[0]] < 0:
        return -m
    return m


def sign_aligned_diff(a: np.ndarray, b: np.ndarray) -> float:
    """Entrywise distance after aligning b's sign on a's largest entry."""
    a, b = np.asarray(a, float), np.asarray(b, float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    k = int(np.argmax(np.abs(a)))
    s = -1.0 if a.flat[k] * b.flat[k] < 0 else 1.0
    return maxabs(a - s * b)


def eta(jp) -> int:
    j = Quintuplet.of(jp)
    n = integral_n(j)
    return -sgn(j.j3) * sgn(n + 2 * j.j3 - 2 * j.j2 + 2)


def _edge_params(j: Quintuplet, big_n: int, p: int) -> RacahParams:
    return RacahParams(-2 * j.j2 - 1, -2 * j.j1 - 1, big_n - p,
                       big_n - p - 2 * j.j2 + 2 * j.j3 + 1)


def _closed_matrix(kind: str, j: Quintuplet) -> np.ndarray:
    big_n = integral_n(j)
    d = dimension(big_n)
    out = np.zeros((d, d))
    if kind == "s":
        for n, p in basis(big_n):
            out[position(n, p, big_n), position(p, n, big_n)] = 1.0
        return out
    if kind == "i":
        for n, p in basis(big_n):
            k = position(n, p, big_n)
            out[k, k] = (-1.0) ** p
        return out
    if kind not in ("t", "r"):
        raise ValueError(f"unknown edge kind {kind!r}")
    e = eta(j)
    for p in range(big_n + 1):
        params = _edge_params(j, big_n, p)
        for n in range(big_n - p + 1):
            for m in range(big_n - p + 1):
                try:
                    val = racah_P(n, m, params)
                except (DomainError, SingularityError) as exc:
                    raise DomainError(f"closed form {kind} at J={j}, (n,p)=({n},{p}): {exc}") from exc
                if kind == "t":
                    out[position(n, p, big_n), position(m, p, big_n)] = (-1) ** m * e ** p * val
                else:
                    out[position(n, p, big_n), position(p, m, big_n)] = (-e) ** p * val
    return out


def closed_form_edge(kind: str, j_eff) -> TransitionMatrix:
    """T_{e,g}(J') for g in {t, s, i, r} from the explicit Racah-polynomial formulas."""
    j = Quintuplet.of(j_eff)
    g = {"t": T_ELT, "s": S, "i": GroupElement("i"), "r": R}[kind]
    return TransitionMatrix(canonical_sign(_closed_matrix(kind, j)), IDENT, g, j)


def rep_matrices(g: GroupElement, j) -> dict:
    rep = pi_g(g, j)
    return {x: rep.mats[x] for x in CONTIGUOUS}


def intertwining_residual(tm: np.ndarray, g: GroupElement, h: GroupElement, j) -> float:
    """max over contiguous X of |T pi_g(X) - pi_h(X) T|."""
    pg, ph = rep_matrices(g, j), rep_matrices(h, j)
    return max(maxabs(tm @ pg[x] - ph[x] @ tm) for x in CONTIGUOUS)


KRON_MAX_DIM = 28


def intertwiner_oracle(g: GroupElement, h: GroupElement, j, method: str = "auto") -> TransitionMatrix:
    """Numerical T_{h,g}(J) from the intertwining equations alone.

    ``kron`` takes the null space of the stacked Kronecker system (cost ~d^6);
    ``spectral`` diagonalizes a generic combination of generators on both
    sides and solves for the remaining diagonal factor (cost ~d^4).  ``auto``
    uses ``kron`` up to dimension 28 (N = 6).
    """
    j = Quintuplet.of(j)
    pg, ph = rep_matrices(g, j), rep_matrices(h, j)
    d = next(iter(pg.values())).shape[0]
    # central generators must agree; otherwise no nonzero solution exists
    central = max(maxabs(pg[x] - ph[x]) for x in CONTIGUOUS if x.is_central)
    if central > 1e-9:
        raise TransitionError(f"representations not equivalent: central values differ by {central:.3g}")
    if method == "auto":
        method = "kron" if d <= KRON_MAX_DIM else "spectral"
    gens = [x for x in CONTIGUOUS if not x.is_central]
    if method == "kron":
        tm = _oracle_kron([pg[x] for x in gens], [ph[x] for x in gens])
    elif method == "spectral":
        tm = _oracle_spectral([pg[x] for x in gens], [ph[x] for x in gens])
    else:
        raise ValueError(f"unknown oracle method {method!r}")
    tm = tm * np.sqrt(d / np.sum(tm * tm))
    return TransitionMatrix(canonical_sign(tm), h, g, j)


def _null_vector(a: np.ndarray) -> np.ndarray:
    _, sv, vt = np.linalg.svd(a, full_matrices=False)
    scale = sv[0] if sv[0] > 0 else 1.0
    small = int(np.sum(sv <= NULL_GAP * scale)) + max(0, a.shape[1] - len(sv))
    if small != 1:
        raise TransitionError(
            f"representations not equivalent or degenerate: null space dimension {small}")
    return vt[-1]


def _oracle_kron(A: list, B: list) -> np.ndarray:
    d = A[0].shape[0]
    eye = np.eye(d)
    # vec(T A - B T) = (A^T kron I - I kron B) vec(T), column-major vec
    blocks = [np.kron(a.T, eye) - np.kron(eye, b) for a, b in zip(A, B)]
    return _null_vector(np.vstack(blocks)).reshape(d, d, order="F")


def _oracle_spectral(A: list, B: list, tries: int = 5) -> np.ndarray:
    d = A[0].shape[0]
    rng = np.random.default_rng(20240601)
    scale = max(maxabs(a) for a in A) or 1.0
    for _ in range(tries):
        c = rng.standard_normal(len(A))
        la, U = np.linalg.eigh(sum(ci * a for ci, a in zip(c, A)))
        lb, V = np.linalg.eigh(sum(ci * b for ci, b in zip(c, B)))
        if maxabs(la - lb) > 1e-8 * scale * d:
            raise TransitionError("representations not equivalent: spectra differ by "
                                  f"{maxabs(la - lb):.3g}")
        if d == 1 or np.min(np.diff(la)) > 1e-6 * scale:
            break
    else:
        raise TransitionError("no generic combination with simple spectrum found")
    # T = V diag(x) U^T; every generator gives (V^T B V) x_j = x_i (U^T A U) entrywise
    rows = []
    for a, b in zip(A, B):
        M, N = V.T @ b @ V, U.T @ a @ U
        blk = np.zeros((d, d, d))
        idx = np.arange(d)
        blk[:, idx, idx] += M
        blk[idx, :, idx] -= N
        rows.append(blk.reshape(d * d, d))
    x = _null_vector(np.vstack(rows))
    return V @ np.diag(x) @ U.T


def edge_matrix(kind: str, j_eff, oracle_fallback: bool = True) -> TransitionMatrix:
    """Closed form if its Racah parameters are admissible, otherwise the oracle."""
    try:
        return closed_form_edge(kind, j_eff)
    except DomainError as exc:
        if not oracle_fallback:
            raise
        g = {"t": T_ELT, "s": S, "i": GroupElement("i"), "r": R}[kind]
        log.info("closed form %s unavailable at %s (%s); using oracle", kind, j_eff, exc)
        tm = intertwiner_oracle(g, IDENT, j_eff)
        tm.notes.append(f"oracle fallback for {kind} at {Quintuplet.of(j_eff)}: {exc}")
        return tm


def word_matrix(g: GroupElement, j) -> TransitionMatrix:
    """T_{e,g}(J) chained letter by letter along g's word.

    For g = a_1 a_2 ... a_m the product is
    T_{e,a_m}(J) T_{e,a_{m-1}}(a_m J) ... T_{e,a_1}(a_2 ... a_m J).
    """
    j = Quintuplet.of(j)
    d = dimension(integral_n(j))
    out = np.eye(d)
    notes: list[str] = []
    cur = j
    for c in reversed(g.word):
        tm = edge_matrix(c, cur)
        notes += tm.notes
        out = out @ tm.matrix
        cur = act_on_quintuplet(GroupElement(c), cur)
    return TransitionMatrix(canonical_sign(out), IDENT, g, j, notes)


def transition(h: GroupElement, g: GroupElement, j) -> TransitionMatrix:
    """T_{h,g}(J) ~ T_{e,h}(J)^T T_{e,g}(J)."""
    a, b = word_matrix(h, j), word_matrix(g, j)
    return TransitionMatrix(canonical_sign(a.matrix.T @ b.matrix), h, g, Quintuplet.of(j),
                            a.notes + b.notes)


class PathError(ValueError):
    pass


def compose_path(path: list[GroupElement], j) -> TransitionMatrix:
    """Product of edge matrices T_{g_i,g_{i+1}}(J) ~ T_{e, g_{i+1} g_i^{-1}}(g_i J)."""
    j = Quintuplet.of(j)
    d = dimension(integral_n(j))
    if not path:
        return TransitionMatrix(np.eye(d), IDENT, IDENT, j)
    adj = adjacency()
    out = np.eye(d)
    notes: list[str] = []
    for a, b in zip(path, path[1:]):
        va, vb = vertex_of(a), vertex_of(b)
        if va != vb and vb not in adj[va]:
            raise PathError(f"{a} and {b} are not on adjacent vertices")
        k = (b * a.inverse()).reduced()
        tm = word_matrix(k, act_on_quintuplet(a, j))
        notes += tm.notes
        out = out @ tm.matrix
    return TransitionMatrix(canonical_sign(out), path[0], path[-1], j, notes)


def _identity_residual(m: np.ndarray) -> float:
    return sign_aligned_diff(np.eye(m.shape[0]), m)


def cycle_certificates(j) -> Report:
    """Triangle (t^3), pentagon (r^5) and six-factor (u^2, u = s t s t^2 s) identities."""
    j = Quintuplet.of(j)
    out = Report()
    d = dimension(integral_n(j))

    def chain(kind, quints):
        m = np.eye(d)
        notes = []
        for q in quints:
            tm = edge_matrix(kind, q)
            notes += tm.notes
            m = m @ tm.matrix
        return m, notes

    tj = [act_on_quintuplet(T_ELT ** k, j) for k in range(3)]
    m, notes = chain("t", tj)
    out.add(Residual("triangle", _identity_residual(m), note="; ".join(notes)))

    rj = [act_on_quintuplet(R ** k, j) for k in range(5)]
    m, notes = chain("r", rj)
    out.add(Residual("pentagon", _identity_residual(m), note="; ".join(notes)))

    s_, t_ = S, T_ELT
    u = s_ * t_ * s_ * t_ * t_ * s_
    P = closed_form_edge("s", j).matrix
    notes = []

    def tt(g):
        tm = edge_matrix("t", act_on_quintuplet(g, j))
        notes.extend(tm.notes)
        return tm.matrix

    st2s = s_ * t_ * t_ * s_
    m = (P @ tt(s_) @ tt(t_ * s_) @ P @ tt(st2s)
         @ tt(s_ * u) @ tt(t_ * s_ * u) @ P @ tt(st2s * u) @ P)
    out.add(Residual("six_product", _identity_residual(m), note="; ".join(notes)))
    return out


def inversion_residual(g: GroupElement, j) -> float:
    """T_{e,g^{-1}}(J) against T_{e,g}(g^{-1} J)^T."""
    j = Quintuplet.of(j)
    ginv = g.inverse()
    a = word_matrix(ginv, j).matrix
    b = word_matrix(g, act_on_quintuplet(ginv, j)).matrix.T
    return sign_aligned_diff(a, b)
