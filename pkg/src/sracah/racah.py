"""Monovariate Racah polynomials with gamma = -N-1.

r_n(m) is the terminating 4F3 at unit argument, P_n(m) its orthonormal
rescaling.  All Pochhammer symbols are iterated products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ._common import (
    DomainError,
    Report,
    Residual,
    SingularityError,
    is_singular,
    poch,
    safe_div,
    sgn,
)


@dataclass(frozen=True)
class RacahParams:
    alpha: float
    beta: float
    big_n: int
    delta: float

    def __post_init__(self):
        if int(self.big_n) != self.big_n or self.big_n < 0:
            raise DomainError(f"big_n must be a nonnegative integer, got {self.big_n!r}")
        object.__setattr__(self, "big_n", int(self.big_n))

    def lam(self, m: float) -> float:
        return m * (m - self.big_n + self.delta)

    def shifted(self, d_big_n: int = 0, d_delta: float = 0.0, **kw) -> "RacahParams":
        vals = dict(alpha=self.alpha, beta=self.beta,
                    big_n=self.big_n + d_big_n, delta=self.delta + d_delta)
        vals.update(kw)
        return RacahParams(**vals)


def _hyp(n: int, m: int, p: RacahParams) -> float:
    return _hyp_mag(n, m, p)[0]


def _rational(x: float) -> Fraction | None:
    f = Fraction(float(x)).limit_denominator(64)
    return f if float(f) == float(x) else None


def _hyp_mag(n: int, m: int, p: RacahParams) -> tuple[float, float]:
    # terminating sum and the sum of |summands|; range of n, m is not checked.
    # Parameters that are small-denominator rationals (the half-integer case)
    # are summed exactly, which removes the cancellation at large N.
    exact = [_rational(v) for v in (p.alpha, p.beta, p.delta)]
    if all(v is not None for v in exact):
        a, b, d = exact
        big_n = p.big_n
        total = term = mag = Fraction(1)
    else:
        a, b, big_n, d = p.alpha, p.beta, p.big_n, p.delta
        total = term = mag = 1.0
    for k in range(min(n, m)):
        dens = (("alpha+1", a + 1 + k), ("beta+delta+1", b + d + 1 + k), ("-N", -big_n + k))
        for label, v in dens:
            if is_singular(v):
                raise SingularityError(
                    f"Pochhammer ({label})_{k + 1} vanishes at n={n}, m={m}, params={p}")
        num = (-n + k) * (n + a + b + 1 + k) * (-m + k) * (m - big_n + d + k)
        term = term * num / (dens[0][1] * dens[1][1] * dens[2][1] * (k + 1))
        total += term
        mag += abs(term)
    return float(total), float(mag)


def racah_r(n: int, m: int, params: RacahParams) -> float:
    """r_n(m; alpha, beta, -N-1, delta)."""
    if not (0 <= n <= params.big_n and 0 <= m <= params.big_n):
        raise DomainError(f"indices (n={n}, m={m}) outside [0, {params.big_n}]")
    return _hyp(n, m, params)


# recurrence / difference coefficients

def coeff_A(n: float, p: RacahParams) -> float:
    a, b, big_n, d = p.alpha, p.beta, p.big_n, p.delta
    if n == big_n:
        # the factor (n - N) vanishes; the denominator may too (removable)
        return 0.0
    num = (n + a + 1) * (n + b + d + 1) * (n - big_n) * (n + a + b + 1)
    return safe_div(num, (2 * n + a + b + 1) * (2 * n + a + b + 2), f"A_{n} denominator")


def coeff_C(n: float, p: RacahParams) -> float:
    if n == 0:
        return 0.0
    a, b, big_n, d = p.alpha, p.beta, p.big_n, p.delta
    num = n * (n + a + b + big_n + 1) * (n + a - d) * (n + b)
    return safe_div(num, (2 * n + a + b) * (2 * n + a + b + 1), f"C_{n} denominator")


def coeff_B(m: float, p: RacahParams) -> float:
    a, b, big_n, d = p.alpha, p.beta, p.big_n, p.delta
    if m == big_n:
        return 0.0
    num = (m + a + 1) * (m + b + d + 1) * (m - big_n) * (m - big_n + d)
    return safe_div(num, (2 * m - big_n + d) * (2 * m - big_n + d + 1), f"B_{m} denominator")


def coeff_D(m: float, p: RacahParams) -> float:
    if m == 0:
        return 0.0
    a, b, big_n, d = p.alpha, p.beta, p.big_n, p.delta
    num = m * (m - big_n - 1 - a + d) * (m - big_n - 1 - b) * (m + d)
    return safe_div(num, (2 * m - big_n - 1 + d) * (2 * m - big_n + d), f"D_{m} denominator")


def recurrence_coeffs(k: int, params: RacahParams) -> tuple[float, float, float, float]:
    """(A_k, C_k, B_k, D_k) at one index."""
    if not 0 <= k <= params.big_n:
        raise DomainError(f"index {k} outside [0, {params.big_n}]")
    return (coeff_A(k, params), coeff_C(k, params),
            coeff_B(k, params), coeff_D(k, params))


# normalized polynomial

def _prefactor_sq(p: RacahParams) -> float:
    a, b, big_n, d = p.alpha, p.beta, p.big_n, p.delta
    num = poch(a - d + 1, big_n) * poch(b + 1, big_n)
    den = poch(a + b + 2, big_n) * poch(-d, big_n)
    return safe_div(num, den, "normalization denominator")


def check_positivity(params: RacahParams, n_max: int | None = None,
                     m_max: int | None = None) -> None:
    """Raise DomainError unless the square roots in P are real up to the given degrees."""
    big_n = params.big_n
    n_max = big_n if n_max is None else n_max
    m_max = big_n if m_max is None else m_max
    for i in range(min(n_max, big_n)):
        prod = coeff_A(i, params) * coeff_C(i + 1, params)
        if not prod > 0:
            raise DomainError(f"A_{i}*C_{i + 1} = {prod!r} is not positive ({params})")
    for j in range(min(m_max, big_n)):
        prod = coeff_B(j, params) * coeff_D(j + 1, params)
        if not prod > 0:
            raise DomainError(f"B_{j}*D_{j + 1} = {prod!r} is not positive ({params})")
    pre = _prefactor_sq(params)
    if not pre > 0:
        raise DomainError(f"normalization argument {pre!r} is not positive ({params})")


def is_valid(params: RacahParams) -> bool:
    try:
        check_positivity(params)
    except (DomainError, SingularityError):
        return False
    return True


def _ratio_factors(params: RacahParams) -> tuple[np.ndarray, np.ndarray]:
    # sign(A_i) sqrt(A_i / C_{i+1}) and sign(B_j) sqrt(B_j / D_{j+1})
    big_n = params.big_n
    fa = np.empty(big_n)
    fb = np.empty(big_n)
    for i in range(big_n):
        a_i, c_next = coeff_A(i, params), coeff_C(i + 1, params)
        fa[i] = sgn(a_i) * math.sqrt(a_i / c_next)
        b_i, d_next = coeff_B(i, params), coeff_D(i + 1, params)
        fb[i] = sgn(b_i) * math.sqrt(b_i / d_next)
    return fa, fb


def racah_P(n: int, m: int, params: RacahParams) -> float:
    """Normalized P_n(m)."""
    if not (0 <= n <= params.big_n and 0 <= m <= params.big_n):
        raise DomainError(f"indices (n={n}, m={m}) outside [0, {params.big_n}]")
    check_positivity(params, n, m)
    out = math.sqrt(_prefactor_sq(params))
    for i in range(n):
        a_i, c_next = coeff_A(i, params), coeff_C(i + 1, params)
        out *= sgn(a_i) * math.sqrt(a_i / c_next)
    for j in range(m):
        b_j, d_next = coeff_B(j, params), coeff_D(j + 1, params)
        out *= sgn(b_j) * math.sqrt(b_j / d_next)
    return out * _hyp(n, m, params)


def racah_P_table(params: RacahParams) -> np.ndarray:
    """Full (N+1)x(N+1) table, rows indexed by n, columns by m."""
    return _P_table_mag(params)[0]


def _P_table_mag(params: RacahParams) -> tuple[np.ndarray, np.ndarray]:
    check_positivity(params)
    big_n = params.big_n
    fa, fb = _ratio_factors(params)
    cn = np.concatenate([[1.0], np.cumprod(fa)])
    cm = np.concatenate([[1.0], np.cumprod(fb)])
    vals = [[_hyp_mag(n, m, params) for m in range(big_n + 1)] for n in range(big_n + 1)]
    r = np.array([[v for v, _ in row] for row in vals])
    mag = np.array([[g for _, g in row] for row in vals])
    w = math.sqrt(_prefactor_sq(params)) * np.outer(cn, cm)
    return w * r, np.abs(w) * mag


# contiguous-relation coefficients, written with the removable zero
# denominators cancelled against the matching factor of A, C, B or D

def _contiguous_coeffs(p: RacahParams):
    a, b, big_n, d = p.alpha, p.beta, p.big_n, p.delta

    def den_n(n):
        return (2 * n + a + b + 1) * (2 * n + a + b + 2)

    def den_c(n):
        return (2 * n + a + b) * (2 * n + a + b + 1)

    def den_m(m):
        return (2 * m - big_n + d) * (2 * m - big_n + d + 1)

    def den_d(m):
        return (2 * m - big_n - 1 + d) * (2 * m - big_n + d)

    def E(n):
        return safe_div((n + 2 + b + d) * (n + a + 1) * (n + b + d + 1) * (n + a + b + 1), den_n(n))

    def G(n):
        if n == 0:
            return 0.0
        return safe_div(n * (n - 1 + a - d) * (n + a - d) * (n + b), den_c(n))

    def F(n):
        return -E(n) - G(n) + (d + 1) * (b + d + 1)

    def Ep(n):
        return safe_div((n + a + 1) * (n - big_n) * (n - big_n + 1) * (n + a + b + 1), den_n(n))

    def Gp(n):
        if n == 0:
            return 0.0
        return safe_div(n * (n + a + b + big_n + 1) * (n + a + b + big_n) * (n + b), den_c(n))

    def Fp(n):
        return -Ep(n) - Gp(n) + big_n * (b + big_n)

    def H(m):
        return safe_div((m + a + 1) * (m + b + d + 1) * (m + 2 + b + d) * (m - big_n + d), den_m(m))

    def J(m):
        if m == 0:
            return 0.0
        # the shift in the first factor is -2, not -1 as sometimes printed
        return safe_div(m * (m - big_n - 1 - a + d) * (m - big_n - 1 - b) * (m - big_n - b - 2),
                        den_d(m))

    def I(m):
        return -H(m) - J(m) + (a + b + 2 + big_n) * (b + d + 1)

    def Hp(m):
        return safe_div((m + a + 1) * (m - big_n) * (big_n - m - 1) * (m - big_n + d), den_m(m))

    def Jp(m):
        if m == 0:
            return 0.0
        return safe_div(-m * (m - big_n - 1 - a + d) * (m + d) * (d + m - 1), den_d(m))

    def Ip(m):
        return -Hp(m) - Jp(m) + (a - d + 1) * big_n

    return dict(E=E, F=F, G=G, Ep=Ep, Fp=Fp, Gp=Gp, H=H, I=I, J=J, Hp=Hp, Ip=Ip, Jp=Jp)


class _Val:
    """A computed value with the magnitude of the summands that produced it."""

    __slots__ = ("v", "mag")

    def __init__(self, v: float, mag: float):
        self.v = v
        self.mag = mag

    def __rmul__(self, c: float) -> "_Val":
        return _Val(c * self.v, abs(c) * self.mag)

    __mul__ = __rmul__


def _parts(x) -> tuple[float, float]:
    if isinstance(x, _Val):
        return x.v, x.mag
    return float(x), abs(float(x))


def _grid_residual(name: str, big_n: int, lhs_rhs: Callable[[int, int], tuple],
                   n_range=None, m_range=None) -> Residual:
    """Max over the grid of |lhs - rhs| / max(1, summand magnitude).

    The magnitude is the sum of |summands| of every series involved, so the
    ratio is a backward-error style residual that equals the plain absolute
    residual whenever the arithmetic involves numbers of size <= 1.  Grid
    points where a needed quantity is singular are skipped and counted.
    """
    n_range = range(big_n + 1) if n_range is None else n_range
    m_range = range(big_n + 1) if m_range is None else m_range
    worst, raw, done, skipped = 0.0, 0.0, 0, 0
    for n in n_range:
        for m in m_range:
            try:
                lhs, terms = lhs_rhs(n, m)
            except (SingularityError, DomainError):
                skipped += 1
                continue
            lv, lm = _parts(lhs)
            tv = [_parts(t) for t in terms]
            diff = abs(lv - sum(v for v, _ in tv))
            scale = max(1.0, lm + sum(mg for _, mg in tv))
            worst = max(worst, diff / scale)
            raw = max(raw, diff)
            done += 1
    if done == 0:
        return Residual(name, float("nan"), 0, skipped, "not evaluable at this point")
    return Residual(name, worst, done, skipped, absolute=raw)


def _lagrange_weights(xs: list[float], x: float) -> list[float]:
    out = []
    for i, xi in enumerate(xs):
        w = 1.0
        for j, xj in enumerate(xs):
            if j != i:
                w *= (x - xj) / (xi - xj)
        out.append(w)
    return out


def degree_residual(params: RacahParams) -> Residual:
    """r_n(m) as a degree-n polynomial in lambda(m): fit n+1 nodes, test the rest."""
    big_n = params.big_n
    worst, raw, done = 0.0, 0.0, 0
    for n in range(big_n):
        xs = [params.lam(m) for m in range(n + 1)]
        if len({round(x, 12) for x in xs}) < len(xs):
            continue
        ys = [_hyp_mag(n, m, params) for m in range(n + 1)]
        for m in range(n + 1, big_n + 1):
            want, want_mag = _hyp_mag(n, m, params)
            ws = _lagrange_weights(xs, params.lam(m))
            got = sum(w * y for w, (y, _) in zip(ws, ys))
            got_mag = sum(abs(w) * g for w, (_, g) in zip(ws, ys))
            diff = abs(got - want)
            worst = max(worst, diff / max(1.0, want_mag + got_mag))
            raw = max(raw, diff)
            done += 1
    if done == 0:
        return Residual("degree", float("nan"), 0, 0, "not evaluable at this point")
    return Residual("degree", worst, done, absolute=raw)


def racah_identities(params: RacahParams) -> Report:
    """Residuals of every identity of the Racah toolbox over the full grid."""
    p = params
    big_n, a, b, d = p.big_n, p.alpha, p.beta, p.delta
    rep = Report()
    def r(n, m, q=p):
        return _Val(*_hyp_mag(n, m, q))

    def recurrence(n, m):
        A, C = coeff_A(n, p), coeff_C(n, p)
        terms = [-(A + C) * r(n, m)]
        if A != 0:
            terms.append(A * r(n + 1, m))
        if C != 0:
            terms.append(C * r(n - 1, m))
        return p.lam(m) * r(n, m), terms

    def difference(n, m):
        B, D = coeff_B(m, p), coeff_D(m, p)
        terms = [-(B + D) * r(n, m)]
        if B != 0:
            terms.append(B * r(n, m + 1))
        if D != 0:
            terms.append(D * r(n, m - 1))
        return n * (n + a + b + 1) * r(n, m), terms

    swap = RacahParams(b + d, a - d, big_n, d)
    dual = RacahParams(a, d - a - big_n - 1, big_n, a + b + big_n + 1)
    whip = RacahParams(b, a, big_n, -d)

    def whipple(n, m):
        fac = safe_div(poch(a - d + 1, n) * poch(b + 1, n),
                       poch(b + d + 1, n) * poch(a + 1, n), "Whipple prefactor")
        return r(n, m), [fac * r(n, big_n - m, whip)]

    rep.add(_grid_residual("recurrence", big_n, recurrence))
    rep.add(_grid_residual("difference", big_n, difference))
    rep.add(_grid_residual("parameter_swap", big_n, lambda n, m: (r(n, m), [r(n, m, swap)])))
    rep.add(_grid_residual("duality", big_n, lambda n, m: (r(n, m), [r(m, n, dual)])))
    rep.add(_grid_residual("whipple", big_n, whipple))

    cc = _contiguous_coeffs(p)
    up = p.shifted(1, 1.0)      # gamma -> -N-2, delta -> delta+1
    down = p.shifted(-1, -1.0) if big_n >= 1 else None

    def three_term(lhs, coeffs_and_args, q):
        terms = []
        for c, (nn, mm) in coeffs_and_args:
            if is_singular(c):
                continue
            if not (0 <= nn <= q.big_n and 0 <= mm <= q.big_n):
                raise DomainError("shifted family evaluated off its grid")
            terms.append(c * r(nn, mm, q))
        return lhs, terms

    def cont_n_up(n, m):
        lt = safe_div((m + 1 + d) * (big_n - m + 1) * (b + d + 1), big_n + 1)
        return three_term(lt * r(n, m), [(cc["E"](n), (n + 1, m)), (cc["F"](n), (n, m)),
                                         (cc["G"](n), (n - 1, m))], up)

    def cont_n_down(n, m):
        lt = safe_div(big_n * (m + b + d) * (big_n - m + b), b + d, "beta+delta")
        return three_term(lt * r(n, m), [(cc["Ep"](n), (n + 1, m)), (cc["Fp"](n), (n, m)),
                                         (cc["Gp"](n), (n - 1, m))], down)

    def cont_m_up(n, m):
        mt = safe_div((n + 2 + a + b + big_n) * (big_n - n + 1) * (b + d + 1), big_n + 1)
        return three_term(mt * r(n, m), [(cc["H"](m), (n, m + 1)), (cc["I"](m), (n, m)),
                                         (cc["J"](m), (n, m - 1))], up)

    def cont_m_down(n, m):
        mt = safe_div(big_n * (n + b + d) * (n + a - d + 1), b + d, "beta+delta")
        return three_term(mt * r(n, m), [(cc["Hp"](m), (n, m + 1)), (cc["Ip"](m), (n, m)),
                                         (cc["Jp"](m), (n, m - 1))], down)

    rep.add(_grid_residual("contiguous_n_raise", big_n, cont_n_up))
    rep.add(_grid_residual("contiguous_m_raise", big_n, cont_m_up))
    if down is not None:
        rep.add(_grid_residual("contiguous_n_lower", big_n, cont_n_down))
        rep.add(_grid_residual("contiguous_m_lower", big_n, cont_m_down))
    else:
        rep.add(Residual("contiguous_n_lower", float("nan"), 0, 0, "not evaluable at this point"))
        rep.add(Residual("contiguous_m_lower", float("nan"), 0, 0, "not evaluable at this point"))

    rep.add(degree_residual(p))

    # normalized family
    names = ("normalized_recurrence", "normalized_difference", "orthogonality")
    try:
        P, Pmag = _P_table_mag(p)
    except (DomainError, SingularityError) as exc:
        for nm in names:
            rep.add(Residual(nm, float("nan"), 0, 0, f"not evaluable at this point: {exc}"))
        return rep
    try:
        A = [coeff_A(k, p) for k in range(big_n + 1)]
        C = [coeff_C(k, p) for k in range(big_n + 1)]
        B = [coeff_B(k, p) for k in range(big_n + 1)]
        D = [coeff_D(k, p) for k in range(big_n + 1)]
    except SingularityError as exc:
        for nm in names:
            rep.add(Residual(nm, float("nan"), 0, 0, f"not evaluable at this point: {exc}"))
        return rep
    # sqrt(A_n C_{n+1}) with A_N = 0 closing the chain
    sac = [math.sqrt(A[k] * C[k + 1]) for k in range(big_n)] + [0.0]
    sbd = [math.sqrt(B[k] * D[k + 1]) for k in range(big_n)] + [0.0]

    def pv(n, m):
        return _Val(P[n, m], Pmag[n, m])

    def n_rec(n, m):
        terms = [-(A[n] + C[n]) * pv(n, m)]
        if n < big_n:
            terms.append(sac[n] * pv(n + 1, m))
        if n > 0:
            terms.append(sac[n - 1] * pv(n - 1, m))
        return p.lam(m) * pv(n, m), terms

    def n_diff(n, m):
        terms = [-(B[m] + D[m]) * pv(n, m)]
        if m < big_n:
            terms.append(sbd[m] * pv(n, m + 1))
        if m > 0:
            terms.append(sbd[m - 1] * pv(n, m - 1))
        return n * (n + a + b + 1) * pv(n, m), terms

    rep.add(_grid_residual("normalized_recurrence", big_n, n_rec))
    rep.add(_grid_residual("normalized_difference", big_n, n_diff))
    gram = np.abs(P @ P.T - np.eye(big_n + 1))
    scale = np.maximum(1.0, Pmag @ Pmag.T)
    rep.add(Residual("orthogonality", float(np.max(gram / scale)), (big_n + 1) ** 2,
                     absolute=float(np.max(gram))))
    return rep


def random_valid_params(rng: np.random.Generator, max_big_n: int = 12,
                        min_big_n: int = 1, tries: int = 100000) -> RacahParams:
    """Rejection-sample a parameter set passing the positivity precondition."""
    for _ in range(tries):
        big_n = int(rng.integers(min_big_n, max_big_n + 1))
        q = RacahParams(float(rng.uniform(-20.0, 10.0)), float(rng.uniform(-20.0, 10.0)),
                        big_n, float(rng.uniform(-25.0, 25.0)))
        if is_valid(q):
            return q
    raise RuntimeError("no valid parameter set found")
