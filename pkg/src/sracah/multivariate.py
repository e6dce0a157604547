"""Bivariate Tratnik function T and the Griffiths-like function G.

Both are built from normalized Racah functions P and are compared against the
transition matrices of the length-two and length-three paths starting at e.
Index conventions: n = (n1, n2) labels the e-basis row, m = (m1, m2) the column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from ._common import DomainError, Report, Residual, maxabs, poch
from .racah import RacahParams, racah_P_table, racah_r
from .representation import (CoeffBundle, Quintuplet, basis, dimension, in_domain,
                             position, symmetric_coeffs, validate)
from .symmetry import IDENT, R, S, T as T_ELT, act_on_quintuplet
from .transitions import compose_path, sign_aligned_diff

# element chains e -> r -> r^2 (-> t^2 r^2); each step is one edge of the graph
TRATNIK_PATH = [IDENT, R, R ** 2]
GRIFFITHS_PATH = [IDENT, R, R ** 2, T_ELT ** 2 * R ** 2]


@lru_cache(maxsize=4096)
def _table(alpha: float, beta: float, big_n: int, delta: float) -> np.ndarray:
    return racah_P_table(RacahParams(alpha, beta, big_n, delta))


def _P(n: int, m: int, alpha, beta, big_n: int, delta) -> float:
    if not (0 <= n <= big_n and 0 <= m <= big_n):
        return 0.0
    return float(_table(float(alpha), float(beta), int(big_n), float(delta))[n, m])


def _jN(j) -> tuple[Quintuplet, int]:
    j = Quintuplet.of(j)
    return j, validate(j)


@dataclass(frozen=True)
class BivariateTable:
    """Values over n1+n2 <= N, m1+m2 <= N, stored as a lex-ordered square matrix."""
    kind: str
    j: Quintuplet
    big_n: int
    matrix: np.ndarray

    def __getitem__(self, idx: tuple[int, int, int, int]) -> float:
        n1, n2, m1, m2 = idx
        return float(self.matrix[position(n1, n2, self.big_n), position(m1, m2, self.big_n)])

    def get(self, n1: int, n2: int, m1: int, m2: int) -> float:
        if not (in_domain(n1, n2, self.big_n) and in_domain(m1, m2, self.big_n)):
            return 0.0
        return self[n1, n2, m1, m2]

    def rows(self):
        for n1, n2 in basis(self.big_n):
            for m1, m2 in basis(self.big_n):
                yield n1, n2, m1, m2, self[n1, n2, m1, m2]


def _check_indices(n1, n2, m1, m2, big_n):
    if min(n1, n2, m1, m2) < 0 or n1 + n2 > big_n or m1 + m2 > big_n:
        raise DomainError(f"indices ({n1},{n2};{m1},{m2}) outside the triangle N={big_n}")


# ---- Tratnik ---------------------------------------------------------------

def _trat(n1, n2, m1, m2, j: Quintuplet, big_n: int) -> float:
    if n2 + m1 > big_n:
        return 0.0
    j1, j2, j3, j4, j0 = j
    a = _P(n1, m1, -2 * j2 - 1, -2 * j1 - 1, big_n - n2, big_n - n2 - 2 * j2 + 2 * j3 + 1)
    b = _P(n2, m2, -2 * j0 - 1, -2 * j4 - 1, big_n - m1, big_n - m1 - 2 * j0 - 2 * j1 - 1)
    return a * b


def tratnik(n1: int, n2: int, m1: int, m2: int, j) -> float:
    """T_{n1,n2}(m1,m2); zero when n2 + m1 > N."""
    j, big_n = _jN(j)
    _check_indices(n1, n2, m1, m2, big_n)
    return _trat(n1, n2, m1, m2, j, big_n)


def tratnik_table(j) -> BivariateTable:
    j, big_n = _jN(j)
    d = dimension(big_n)
    out = np.zeros((d, d))
    for n1, n2 in basis(big_n):
        for m1, m2 in basis(big_n):
            out[position(n1, n2, big_n), position(m1, m2, big_n)] = _trat(n1, n2, m1, m2, j, big_n)
    return BivariateTable("tratnik", j, big_n, out)


def _omega(n1: int, n2: int, j: Quintuplet, big_n: int) -> float:
    j1, j2, j3 = j.j1, j.j2, j.j3
    k = big_n - n1 - n2
    num = ((2 * n1 - 2 * j1 - 2 * j2 - 1) * poch(-2 * j1 + n1, k)
           * poch(-2 * j2, n1) * poch(big_n - n2 - 2 * j1 - 2 * j2 + 2 * j3 + 1, n1)
           * poch(n2 - big_n, n1))
    den = (poch(-2 * j1 - 2 * j2 - 1 + n1, k + 1) * math.factorial(n1)
           * poch(big_n - n2 - 2 * j1 - 2 * j2, n1) * poch(n2 - big_n - 2 * j3 - 1, n1))
    if den == 0:
        raise DomainError(f"omega_{n1},{n2} has a vanishing denominator at J={j}")
    return num / den


def _omega4(n1, n2, m1, m2, j: Quintuplet, big_n: int) -> float:
    prod = (_omega(n1, n2, j, big_n) * _omega(m1, n2, act_on_quintuplet(S * R, j), big_n)
            * _omega(n2, m1, act_on_quintuplet(R, j), big_n)
            * _omega(m2, m1, act_on_quintuplet(S * R * R, j), big_n))
    if prod < -1e-12 * max(1.0, abs(prod)):
        raise DomainError(f"negative omega product {prod} at ({n1},{n2},{m1},{m2})")
    return max(prod, 0.0)


def _tratnik_prefactor(n1, n2, m1, m2, j: Quintuplet, big_n: int) -> float:
    """Normalization A with T = A r r.

    Against racah_P as defined the sign is (-1)^n1; the extra (-1)^n2 one
    might expect does not survive a direct comparison.
    """
    return (-1) ** n1 * math.sqrt(_omega4(n1, n2, m1, m2, j, big_n))


def _r_first(n1, m1, n2, j, big_n):
    j1, j2, j3 = j.j1, j.j2, j.j3
    return racah_r(n1, m1, RacahParams(-2 * j2 - 1, -2 * j1 - 1, big_n - n2,
                                       big_n - n2 - 2 * j2 + 2 * j3 + 1))


def _r_second(n2, m2, m1, j, big_n):
    j1, j4, j0 = j.j1, j.j4, j.j0
    return racah_r(n2, m2, RacahParams(-2 * j0 - 1, -2 * j4 - 1, big_n - m1,
                                       big_n - m1 - 2 * j0 - 2 * j1 - 1))


def _tratnik_via_r(n1, n2, m1, m2, j: Quintuplet, big_n: int) -> float:
    if n2 + m1 > big_n:
        return 0.0
    return (_tratnik_prefactor(n1, n2, m1, m2, j, big_n)
            * _r_first(n1, m1, n2, j, big_n) * _r_second(n2, m2, m1, j, big_n))


def _tratnik_via_r_tilde(n1, n2, m1, m2, j: Quintuplet, big_n: int) -> float:
    """Same value in the relabelled variables x1=n1, x2=N-n2, k1=m1, k2=N-m1-m2."""
    if n2 + m1 > big_n:
        return 0.0
    j1, j2, j3, j4, j0 = j
    N = big_n
    x1, x2, k1, k2 = n1, N - n2, m1, N - m1 - m2
    num = (poch(k1 - N + 2 * j1 + 1, N - x2) * poch(-2 * j4, N - x2)
           * poch(k1 + 2 * j0 - N + 1, k2) * poch(2 * k1 - 2 * j2 + 2 * j3 + 2, k2))
    den = (poch(N - k1 - 2 * j0 - 2 * j1 - 2 * j4 - 1, N - x2) * poch(-2 * j0, N - x2)
           * poch(k1 - N + 2 * j1 + 1, k2) * poch(-2 * j4, k2))
    if den == 0:
        raise DomainError(f"vanishing A-tilde denominator at ({n1},{n2},{m1},{m2})")
    a_tilde = num / den * _tratnik_prefactor(n1, n2, m1, m2, j, big_n)
    ra = racah_r(k1, x1, RacahParams(-2 * j2 - 1, 2 * j3 + 1, x2, x2 - 2 * j1 - 2 * j2 - 1))
    rb = racah_r(k2, x2 - k1, RacahParams(2 * k1 - 2 * j2 + 2 * j3 + 1, -2 * j4 - 1, N - k1,
                                          k1 + N - 2 * j1 - 2 * j2 + 2 * j3 + 1))
    return a_tilde * ra * rb


def _gamma_int(z: Fraction, what: str) -> int:
    # every gamma argument is an integer at half-integer J; Gamma(k) = (k-1)!
    if z.denominator != 1:
        raise DomainError(f"gamma argument {z} in {what} is not an integer")
    if z <= 0:
        raise DomainError(f"nonpositive gamma argument {z} in {what}")
    return math.factorial(int(z) - 1)


def _fr(x) -> Fraction:
    return Fraction(x).limit_denominator(1000)


def tratnik_weight(x1: int, x2: int, k1: int, k2: int, j, literal: bool = False) -> tuple[float, float]:
    """Orthogonality weight W(x1,x2) and dual weight K(k1,k2), evaluated exactly.

    Two corrections to the textbook-style product are applied by default:
    the leading factor of W is written (2j1+2j2+1-2x1), which is positive on
    the canonical domain, and the last gamma factor of K is
    Gamma(k1+k2+2j1+2j0-N+2).  With both, R2 = T / sqrt(W K) is rational at
    integer nodes and R2(0,0; x) = 1.  ``literal=True`` drops both
    corrections (W < 0, and R2(0,0; x) = (2j1+2j0+1-N)^(-1/2)).
    """
    j, big_n = _jN(j)
    if not (0 <= x1 <= x2 <= big_n) or min(k1, k2) < 0 or k1 + k2 > big_n:
        raise DomainError(f"(x1,x2,k1,k2)=({x1},{x2},{k1},{k2}) outside the Tratnik domain")
    j1, j2, j3, j4, j0 = (_fr(v) for v in j)
    N = big_n
    G = _gamma_int

    lead = 2 * x1 - 2 * j1 - 2 * j2 - 1
    w = Fraction((lead if literal else -lead) * (2 * x2 - 2 * j1 - 2 * j2 + 2 * j3 + 1))
    w /= math.factorial(x1) * math.factorial(x2 - x1) * math.factorial(N - x2)
    w *= Fraction(G(2 * j1 + 1 - x1, "W") * G(2 * j1 + 2 * j2 + 1 - x1 - x2, "W")
                  * G(x2 - x1 + 2 * j3 + 2, "W"),
                  G(2 * j2 + 1 - x1, "W") * G(2 * j1 + 2 * j2 + 2 - x1, "W"))
    w *= Fraction(G(x1 + x2 - 2 * j1 - 2 * j2 + 2 * j3 + 1, "W") * G(x2 - N + 2 * j0 + 1, "W"),
                  G(N + x2 - 2 * j1 - 2 * j2 + 2 * j3 + 2, "W") * G(x2 - N + 2 * j4 + 1, "W"))

    kk = Fraction(math.factorial(N - k1 - k2), math.factorial(k1) * math.factorial(k2))
    kk *= (2 * k1 - 2 * j2 + 2 * j3 + 1) * (2 * k1 + 2 * k2 - 2 * j2 + 2 * j3 - 2 * j4 + 1)
    kk *= Fraction(G(k1 - 2 * j2 + 2 * j3 + 1, "K") * G(2 * j2 + 1 - k1, "K") * G(2 * j4 + 1 - k2, "K"),
                   G(k1 + 2 * j3 + 2, "K") * G(k1 + k2 + 2 * j1 - N + 1, "K")
                   * G(k1 + k2 + 2 * j0 - N + 1, "K"))
    last = k1 + k2 + 2 * j1 + 2 * j0 - N + (1 if literal else 2)
    kk *= Fraction(G(2 * k1 + k2 - 2 * j2 + 2 * j3 - 2 * j4 + 1, "K"),
                   G(2 * k1 + k2 - 2 * j2 + 2 * j3 + 2, "K") * G(last, "K"))
    return float(w), float(kk)


def tratnik_R2(k1: int, k2: int, x1: int, x2: int, j) -> float:
    """R2(k1,k2;x1,x2) recovered from T by dividing out (-1)^(N+x1-x2) sqrt(W K)."""
    j, big_n = _jN(j)
    w, kk = tratnik_weight(x1, x2, k1, k2, j)
    t = _trat(x1, big_n - x2, k1, big_n - k1 - k2, j, big_n)
    return t / ((-1) ** (big_n + x1 - x2) * math.sqrt(w * kk))


# ---- nine-point and three-point stencils -----------------------------------

# (dn, dp, kind, shift) : coefficient of the tap (n+dn, p+dp) is kind(n+shift_n, p+shift_p)
_NINE = (
    (0, 1, "V", (0, 1)), (0, -1, "V", (0, 0)),
    (1, 0, "H", (1, 0)), (-1, 0, "H", (0, 0)),
    (1, 1, "D", (1, 1)), (-1, -1, "D", (0, 0)),
    (1, -1, "A", (1, 0)), (-1, 1, "A", (0, 1)),
)


def _nine_coeffs(cb: CoeffBundle, variant: str) -> tuple[float, dict[str, Callable]]:
    """Sign and entry functions of the nine-point generators C234, C134, C14, C24."""
    table = {
        "C234": (1.0, cb.phiV, cb.phiH, cb.phi00),
        "C134": (-1.0, cb.phiV_tilde, cb.phiH, cb.phi_00bar),
        "C14": (-1.0, cb.phiV, cb.phiH_tilde, cb.phi_0bar0),
        "C24": (1.0, cb.phiV_tilde, cb.phiH_tilde, cb.phi_0bar0bar),
    }
    sign, fv, fh, f0 = table[variant]
    return sign, {"V": fv, "H": fh, "D": cb.phiD, "A": cb.phiA, "0": f0}


def nine_point(cb: CoeffBundle, variant: str, f: Callable[[int, int], float], a: int, b: int) -> float:
    """Action of the nine-point generator on a function f of one lattice index."""
    big_n = cb.big_n
    sign, fs = _nine_coeffs(cb, variant)
    total = fs["0"](a, b) * f(a, b)
    for dn, dp, kind, (sa, sb) in _NINE:
        if in_domain(a + dn, b + dp, big_n):
            total += fs[kind](a + sa, b + sb) * f(a + dn, b + dp)
    return sign * total


def nine_point_matrix(cb: CoeffBundle, variant: str) -> np.ndarray:
    big_n = cb.big_n
    d = dimension(big_n)
    out = np.zeros((d, d))
    for a, b in basis(big_n):
        for c, e in basis(big_n):
            out[position(a, b, big_n), position(c, e, big_n)] = nine_point(
                cb, variant, lambda x, y: float((x, y) == (c, e)), a, b)
    return out


def _three_psi(cb, f, a, b):
    big_n = cb.big_n
    tot = cb.psi00(a, b) * f(a, b)
    if in_domain(a + 1, b, big_n):
        tot += cb.psi(a + 1, b) * f(a + 1, b)
    if in_domain(a - 1, b, big_n):
        tot += cb.psi(a, b) * f(a - 1, b)
    return tot


def _three_rho(cb, f, a, b):
    big_n = cb.big_n
    tot = cb.rho00(a, b) * f(a, b)
    if in_domain(a, b + 1, big_n):
        tot += cb.rho(a, b + 1) * f(a, b + 1)
    if in_domain(a, b - 1, big_n):
        tot += cb.rho(a, b) * f(a, b - 1)
    return tot


def _scale(tab: BivariateTable) -> float:
    return max(1.0, maxabs(tab.matrix))


def _difference(tab, cb_img, op, eig) -> float:
    """max |sum_m' op[m,m'] F_n(m') - eig(n) F_n(m)| over the table."""
    worst = 0.0
    big_n = tab.big_n
    for n1, n2 in basis(big_n):
        f = lambda a, b: tab.get(n1, n2, a, b)  # noqa: E731
        for m1, m2 in basis(big_n):
            lhs = op(cb_img, f, m1, m2)
            rhs = eig(n1, n2) * f(m1, m2)
            worst = max(worst, abs(lhs - rhs) / (1.0 + abs(eig(n1, n2))))
    return worst


def _recurrence(tab, cb, op, eig) -> float:
    worst = 0.0
    big_n = tab.big_n
    for m1, m2 in basis(big_n):
        f = lambda a, b: tab.get(a, b, m1, m2)  # noqa: E731
        for n1, n2 in basis(big_n):
            lhs = op(cb, f, n1, n2)
            rhs = eig(m1, m2) * f(n1, n2)
            worst = max(worst, abs(lhs - rhs) / (1.0 + abs(eig(m1, m2))))
    return worst


def _unitarity(mat: np.ndarray) -> tuple[float, float]:
    eye = np.eye(mat.shape[0])
    return maxabs(mat @ mat.T - eye), maxabs(mat.T @ mat - eye)


def tratnik_identities(j) -> Report:
    """Difference, recurrence, unitarity and transition-matrix checks for T."""
    j, big_n = _jN(j)
    j1, j2, j3, j4, j0 = j
    tab = tratnik_table(j)
    r2j = act_on_quintuplet(R ** 2, j)
    cb = symmetric_coeffs(j)
    cb2 = symmetric_coeffs(r2j, strict=False)
    out = Report()

    out.add(Residual("difference_phi", _difference(
        tab, cb2, lambda c, f, a, b: nine_point(c, "C234", f, a, b),
        lambda n1, n2: (n1 - j1 - j2 - 1) * (n1 - j1 - j2))))
    out.add(Residual("difference_rho", _difference(
        tab, cb2, _three_rho, lambda n1, n2: (n2 - j0 - j4 - 1) * (n2 - j0 - j4))))
    out.add(Residual("recurrence_psi", _recurrence(
        tab, cb, _three_psi, lambda m1, m2: (m1 - j2 + j3) * (m1 - j2 + j3 + 1))))
    out.add(Residual("recurrence_phi", _recurrence(
        tab, cb, lambda c, f, a, b: nine_point(c, "C234", f, a, b),
        lambda m1, m2: (m2 - j0 - j1 - 1) * (m2 - j0 - j1))))

    rows, cols = _unitarity(tab.matrix)
    out.add(Residual("unitarity_rows", rows))
    out.add(Residual("unitarity_columns", cols))

    tm = compose_path(TRATNIK_PATH, j).matrix
    out.add(Residual("transition_match", sign_aligned_diff(tm, tab.matrix)))

    w1 = w2 = 0.0
    for n1, n2 in basis(big_n):
        for m1, m2 in basis(big_n):
            t = tab[n1, n2, m1, m2]
            w1 = max(w1, abs(_tratnik_via_r(n1, n2, m1, m2, j, big_n) - t))
            w2 = max(w2, abs(_tratnik_via_r_tilde(n1, n2, m1, m2, j, big_n) - t))
    out.add(Residual("omega_normalization", w1))
    out.add(Residual("relabelled_normalization", w2))

    out.add(weighted_orthogonality(j))
    return out


def weighted_orthogonality(j) -> Residual:
    """sum_x W R2(k) R2(k') sqrt(K(k) K(k')) - delta, maximized over k, k'.

    Scaling by K(k) on one side only would multiply rounding noise by
    K(k)/K(k'), which spans many orders of magnitude once N is large.
    """
    j, big_n = _jN(j)
    ks = [(k1, k2) for k1 in range(big_n + 1) for k2 in range(big_n + 1 - k1)]
    xs = [(x1, x2) for x2 in range(big_n + 1) for x1 in range(x2 + 1)]
    W = np.array([tratnik_weight(x1, x2, 0, 0, j)[0] for x1, x2 in xs])
    K = np.array([tratnik_weight(0, 0, k1, k2, j)[1] for k1, k2 in ks])
    R2 = np.array([[tratnik_R2(k1, k2, x1, x2, j) for x1, x2 in xs] for k1, k2 in ks])
    gram = (R2 * W) @ R2.T
    sk = np.sqrt(K)
    rel = gram * np.outer(sk, sk) - np.eye(len(ks))
    return Residual("weighted_orthogonality", maxabs(rel))


def lambda_vars(x1: int, x2: int, j) -> tuple[float, float]:
    """Spectral variables in which R2 is a polynomial."""
    j = Quintuplet.of(j)
    b1 = -2 * j.j1 - 2 * j.j2 - 1
    b2 = 2 * j.j3 - 2 * j.j1 - 2 * j.j2 + 1
    return x1 * (x1 + b1), x2 * (x2 + b2)


def polynomiality_residual(j) -> Residual:
    """Fit R2(k;.) by a degree k1+k2 polynomial in the lambda variables on a
    minimal node set and evaluate it on the held-out nodes."""
    j, big_n = _jN(j)
    xs = [(x1, x2) for x2 in range(big_n + 1) for x1 in range(x2 + 1)]
    lam = np.array([lambda_vars(x1, x2, j) for x1, x2 in xs])
    # rescaled to [-1, 1] and expanded in Chebyshev products for conditioning
    lo, hi = lam.min(axis=0), lam.max(axis=0)
    lam = 2 * (lam - lo) / np.where(hi > lo, hi - lo, 1.0) - 1
    worst, tested = 0.0, 0
    for k1 in range(big_n + 1):
        for k2 in range(big_n + 1 - k1):
            deg = k1 + k2
            mons = [(a, b) for a in range(deg + 1) for b in range(deg + 1 - a)]
            if len(mons) >= len(xs):
                continue
            vals = np.array([tratnik_R2(k1, k2, x1, x2, j) for x1, x2 in xs])
            ca = np.polynomial.chebyshev.chebvander(lam[:, 0], deg)
            cb_ = np.polynomial.chebyshev.chebvander(lam[:, 1], deg)
            V = np.column_stack([ca[:, a] * cb_[:, b] for a, b in mons])
            # greedy minimal unisolvent subset
            chosen: list[int] = []
            for i in range(len(xs)):
                trial = chosen + [i]
                if np.linalg.matrix_rank(V[trial], tol=1e-10) == len(trial):
                    chosen = trial
                if len(chosen) == len(mons):
                    break
            if len(chosen) < len(mons):
                continue
            coef = np.linalg.solve(V[chosen], vals[chosen])
            held = [i for i in range(len(xs)) if i not in chosen]
            err = np.abs(V[held] @ coef - vals[held]) / max(1.0, maxabs(vals))
            worst = max(worst, float(err.max()) if held else 0.0)
            tested += 1
    return Residual("r2_polynomiality", worst, evaluated=tested,
                    note=f"{tested} (k1,k2) degrees with held-out nodes")


# ---- Griffiths -------------------------------------------------------------

def _p1(n1, a, n2, j, big_n):
    j1, j2, j3 = j.j1, j.j2, j.j3
    return _P(n1, a, -2 * j2 - 1, -2 * j1 - 1, big_n - n2, big_n - n2 - 2 * j2 + 2 * j3 + 1)


def _p3(m1, a, m2, j, big_n):
    j2, j3, j4 = j.j2, j.j3, j.j4
    return _P(m1, a, -2 * j2 - 1, -2 * j4 - 1, big_n - m2, big_n - m2 - 2 * j2 + 2 * j3 + 1)


def _griff_direct(n1, n2, m1, m2, j: Quintuplet, big_n: int) -> float:
    j1, j4, j0 = j.j1, j.j4, j.j0
    total = 0.0
    for a in range(min(big_n - n2, big_n - m2) + 1):
        p2 = _P(n2, m2, -2 * j0 - 1, -2 * j4 - 1, big_n - a, big_n - a - 2 * j0 - 2 * j1 - 1)
        total += (-1) ** (a + m2) * _p1(n1, a, n2, j, big_n) * p2 * _p3(m1, a, m2, j, big_n)
    return total


def _griffiths_prefactor(n1, n2, m1, m2, a, j: Quintuplet, big_n: int) -> float:
    """Normalization B of the a-th term; sign (-1)^(n1+m1+m2) against racah_P."""
    g = T_ELT ** 2 * R ** 2
    prod = (_omega4(n1, n2, a, m2, j, big_n) * _omega(m1, m2, act_on_quintuplet(g, j), big_n)
            * _omega(a, m2, act_on_quintuplet(S * R * g, j), big_n))
    if prod < -1e-12 * max(1.0, abs(prod)):
        raise DomainError(f"negative omega product {prod}")
    return (-1) ** (n1 + m1 + m2) * math.sqrt(max(prod, 0.0))


def _griff_via_r(n1, n2, m1, m2, j: Quintuplet, big_n: int) -> float:
    total = 0.0
    for a in range(min(big_n - n2, big_n - m2) + 1):
        total += ((-1) ** a * _griffiths_prefactor(n1, n2, m1, m2, a, j, big_n)
                  * _r_first(n1, a, n2, j, big_n) * _r_second(n2, m2, a, j, big_n)
                  * racah_r(m1, a, RacahParams(-2 * j.j2 - 1, -2 * j.j4 - 1, big_n - m2,
                                               big_n - m2 - 2 * j.j2 + 2 * j.j3 + 1)))
    return total


def _griff_via_tratnik(n1, n2, m1, m2, j: Quintuplet, big_n: int) -> float:
    total = 0.0
    for a in range(min(big_n - n2, big_n - m2) + 1):
        total += (-1) ** (a + m2) * _trat(n1, n2, a, m2, j, big_n) * _p3(m1, a, m2, j, big_n)
    return total


def _swap14(j: Quintuplet) -> Quintuplet:
    return Quintuplet(j.j4, j.j2, j.j3, j.j1, j.j0)


def _griff_dual(n1, n2, m1, m2, j: Quintuplet, big_n: int) -> float:
    """Form with the second factor dualized: P_{n1}(a) T_{m1,m2}(a,n2)|_{j1<->j4}.

    With the sign convention of racah_P the duality of the middle factor
    costs (-1)^(n2+m2), which is restored here.
    """
    js = _swap14(j)
    total = 0.0
    for a in range(min(big_n - n2, big_n - m2) + 1):
        total += (-1) ** (a + n2) * _p1(n1, a, n2, j, big_n) * _trat(m1, m2, a, n2, js, big_n)
    return (-1) ** (n2 + m2) * total


def griffiths(n1: int, n2: int, m1: int, m2: int, j, check: bool = True) -> float:
    """G_{n1,n2}(m1,m2) by the direct a-sum, cross-checked against the T-factored sum."""
    j, big_n = _jN(j)
    _check_indices(n1, n2, m1, m2, big_n)
    direct = _griff_direct(n1, n2, m1, m2, j, big_n)
    if check:
        other = _griff_via_tratnik(n1, n2, m1, m2, j, big_n)
        if abs(direct - other) > 1e-10:
            raise ArithmeticError(f"Griffiths forms disagree: {direct} vs {other}")
    return direct


def griffiths_table(j, via: str = "direct") -> BivariateTable:
    j, big_n = _jN(j)
    f = {"direct": _griff_direct, "tratnik": _griff_via_tratnik, "dual": _griff_dual,
         "racah_r": _griff_via_r}[via]
    d = dimension(big_n)
    out = np.zeros((d, d))
    for n1, n2 in basis(big_n):
        for m1, m2 in basis(big_n):
            out[position(n1, n2, big_n), position(m1, m2, big_n)] = f(n1, n2, m1, m2, j, big_n)
    return BivariateTable("griffiths", j, big_n, out)


def griffiths_identities(j) -> Report:
    j, big_n = _jN(j)
    j1, j2, j3, j4, j0 = j
    tab = griffiths_table(j)
    g = T_ELT ** 2 * R ** 2
    gj = act_on_quintuplet(g, j)
    cb = symmetric_coeffs(j)
    cbg = symmetric_coeffs(gj, strict=False)
    out = Report()

    out.add(Residual("tratnik_factored_form", maxabs(tab.matrix - griffiths_table(j, "tratnik").matrix)))
    out.add(Residual("dual_form", maxabs(tab.matrix - griffiths_table(j, "dual").matrix)))
    out.add(Residual("omega_normalization", maxabs(tab.matrix - griffiths_table(j, "racah_r").matrix)))

    out.add(j1_j4_symmetry(j, tab))

    rows, cols = _unitarity(tab.matrix)
    out.add(Residual("unitarity_rows", rows))
    out.add(Residual("unitarity_columns", cols))

    tm = compose_path(GRIFFITHS_PATH, j).matrix
    out.add(Residual("transition_match", sign_aligned_diff(tm, tab.matrix)))

    def nine(variant):
        return lambda c, f, a, b: nine_point(c, variant, f, a, b)

    out.add(Residual("difference_C134", _difference(
        tab, cbg, nine("C134"), lambda n1, n2: (n1 - j1 - j2 - 1) * (n1 - j1 - j2))))
    out.add(Residual("difference_C14", _difference(
        tab, cbg, nine("C14"), lambda n1, n2: (n2 - j0 - j4 - 1) * (n2 - j0 - j4))))
    out.add(Residual("recurrence_C24", _recurrence(
        tab, cb, nine("C24"), lambda m1, m2: (m1 - j2 - j4 - 1) * (m1 - j2 - j4))))
    out.add(Residual("recurrence_C234", _recurrence(
        tab, cb, nine("C234"), lambda m1, m2: (m2 - j0 - j1 - 1) * (m2 - j0 - j1))))
    return out


def j1_j4_symmetry(j, tab: BivariateTable | None = None) -> Residual:
    """G(J)_n(m) = (-1)^(n2+m2) G(J')_m(n) with J' = J under j1 <-> j4.

    J' is usually outside the canonical region; the direct sum is evaluated
    there anyway and the check is skipped if one of its factors is not real.
    """
    j, big_n = _jN(j)
    tab = tab or griffiths_table(j)
    js = _swap14(j)
    worst = 0.0
    try:
        for n1, n2 in basis(big_n):
            for m1, m2 in basis(big_n):
                other = (-1) ** (n2 + m2) * _griff_direct(m1, m2, n1, n2, js, big_n)
                worst = max(worst, abs(tab[n1, n2, m1, m2] - other))
    except DomainError as exc:
        return Residual("j1_j4_symmetry", float("nan"), skipped=True,
                        note=f"not evaluable at {js}: {exc}")
    return Residual("j1_j4_symmetry", worst)
