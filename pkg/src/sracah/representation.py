"""Finite-dimensional real symmetric irreducible representation of sR(4).

The carrier space has basis |n,p> with n, p >= 0 and n + p <= N, stored in
lexicographic (n, p) order.  C12 and C123 are diagonal, C23 is tridiagonal
in n, C34 is tridiagonal in p and C234 couples the nine neighbours of (n, p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from ._common import SINGULAR_EPS, DomainError, SingularityError, is_singular, near_integer, sgn
from .algebra import L, RepHandle


class ValidationError(ValueError):
    """Quintuplet rejected; ``violations`` lists every failed constraint."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ConsistencyError(ArithmeticError):
    pass


def _num(x) -> float:
    if isinstance(x, str):
        return float(Fraction(x.strip()))
    return float(x)


@dataclass(frozen=True)
class Quintuplet:
    """(j1, j2, j3, j4, j0); j0 labels the total C1234."""

    j1: float
    j2: float
    j3: float
    j4: float
    j0: float

    def __post_init__(self):
        for name in ("j1", "j2", "j3", "j4", "j0"):
            v = _num(getattr(self, name))
            if not math.isfinite(v):
                raise ValidationError([f"{name} is not finite ({v})"])
            object.__setattr__(self, name, v)

    @classmethod
    def of(cls, *vals) -> "Quintuplet":
        if len(vals) == 1 and not isinstance(vals[0], (int, float, str, Fraction)):
            vals = tuple(vals[0])
        if isinstance(vals[0], Quintuplet):
            return vals[0]
        if len(vals) != 5:
            raise ValidationError([f"expected 5 components, got {len(vals)}"])
        return cls(*vals)

    @classmethod
    def parse(cls, text: str) -> "Quintuplet":
        parts = [s for s in text.replace(";", ",").split(",") if s.strip()]
        try:
            return cls.of(*[_num(s) for s in parts])
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError([f"cannot parse quintuplet {text!r}: {exc}"]) from None

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.j1, self.j2, self.j3, self.j4, self.j0)

    def __iter__(self):
        return iter(self.as_tuple())

    def __getitem__(self, i: int) -> float:
        return self.as_tuple()[i]

    @property
    def big_n(self) -> float:
        return self.j1 + self.j2 - self.j3 + self.j4 + self.j0

    @property
    def mu(self) -> tuple[float, float, float, float, float]:
        return tuple(j * (j + 1) for j in self.as_tuple())

    def isclose(self, other, tol: float = 1e-9) -> bool:
        return all(abs(a - b) <= tol for a, b in zip(self, Quintuplet.of(other)))

    def __str__(self) -> str:
        return "(" + ",".join(_fmt(v) for v in self) + ")"


def _fmt(v: float) -> str:
    f = Fraction(v).limit_denominator(64)
    if abs(float(f) - v) < 1e-12:
        return str(f)
    return repr(v)


def violations(j: Quintuplet, tol: float = 1e-9) -> list[str]:
    j = Quintuplet.of(j)
    j1, j2, j3, j4, j0 = j
    out = []
    for name, v in zip(("j1", "j2", "j3", "j4", "j0"), j):
        if v < -tol:
            out.append(f"{name}={_fmt(v)} is negative")
    if j1 < j2 - tol:
        out.append(f"j1 >= j2 fails ({_fmt(j1)} < {_fmt(j2)})")
    if j2 < j4 - tol:
        out.append(f"j2 >= j4 fails ({_fmt(j2)} < {_fmt(j4)})")
    if j0 < j4 - tol:
        out.append(f"j0 >= j4 fails ({_fmt(j0)} < {_fmt(j4)})")
    lo, hi = j1 + j2 + j0 - j4, j1 + j2 + j0 + j4
    if j3 < lo - tol:
        out.append(f"j3={_fmt(j3)} below lower bound j1+j2+j0-j4={_fmt(lo)}")
    if j3 > hi + tol:
        out.append(f"j3={_fmt(j3)} above upper bound j1+j2+j0+j4={_fmt(hi)}")
    n = j.big_n
    if not near_integer(n, tol):
        out.append(f"N=j1+j2-j3+j4+j0={_fmt(n)} is not an integer")
    elif round(n) < 1:
        out.append(f"N={round(n)} is not positive")
    return out


def validate(j, tol: float = 1e-9) -> int:
    """Return N for a canonical quintuplet, else raise ValidationError.

    The constraints checked are sufficient for a real symmetric
    representation; other sign regions may also work but are not handled.
    """
    bad = violations(j, tol)
    if bad:
        raise ValidationError(bad)
    return int(round(Quintuplet.of(j).big_n))


def integral_n(j, tol: float = 1e-9) -> int:
    """N for any quintuplet (used for orbit points), requiring only integrality."""
    n = Quintuplet.of(j).big_n
    if not near_integer(n, tol) or round(n) < 0:
        raise ValidationError([f"N={_fmt(n)} is not a nonnegative integer"])
    return int(round(n))


# basis bookkeeping

def dimension(big_n: int) -> int:
    return (big_n + 1) * (big_n + 2) // 2


def position(n: int, p: int, big_n: int) -> int:
    if n < 0 or p < 0 or n + p > big_n:
        raise IndexError(f"(n,p)=({n},{p}) outside the triangle n+p<={big_n}")
    return n * (big_n + 1) - n * (n - 1) // 2 + p


def basis(big_n: int) -> list[tuple[int, int]]:
    return [(n, p) for n in range(big_n + 1) for p in range(big_n + 1 - n)]


def in_domain(n: int, p: int, big_n: int) -> bool:
    return n >= 0 and p >= 0 and n + p <= big_n


# generic (infinite-dimensional) coefficients

def _div(num: float, den: float, what: str) -> float:
    if is_singular(den):
        raise SingularityError(f"{what} vanishes")
    return num / den


def _half_plus(diff: float, rest: float, mu: float, what: str) -> float:
    """(mu + diff) * rest / (2 mu), with the removable case mu = diff = 0."""
    if abs(diff) < SINGULAR_EPS:
        return 0.5 * rest
    return 0.5 * rest + _div(diff * rest, 2 * mu, what)


@dataclass(frozen=True)
class GenericCoeffs:
    """Coefficients of the two-parameter family at a point (n, p)."""

    psi_prod: float
    psi00: float
    rho_prod: float
    rho00: float
    Q: Callable[[float], float]
    Qhat: Callable[[float], float]
    psi00_mu: float
    rho00_mu: float


class GenericFamily:
    """Infinite-dimensional family labelled by J and the shifts a12, a123."""

    def __init__(self, j, a12: float, a123: float):
        self.j = Quintuplet.of(j)
        self.a12 = float(a12)
        self.a123 = float(a123)
        self.mu1, self.mu2, self.mu3, self.mu4, self.mu0 = self.j.mu

    def jn(self, n: float) -> float:
        return n + self.a12

    def jp(self, p: float) -> float:
        return p + self.a123

    def mu_n(self, n: float) -> float:
        x = self.jn(n)
        return x * (x + 1)

    def mu_p(self, p: float) -> float:
        x = self.jp(p)
        return x * (x + 1)

    def Q(self, p: float, z: float) -> float:
        j1, j2, j3, _, _ = self.j
        jp = self.jp(p)
        num = (z - j1 + j2) * (z + j1 + j2 + 1) * (z - j3 + jp) * (z - j3 - jp - 1)
        return _div(num, 2 * z * (2 * z - 1), f"Q denominator 2z(2z-1) at z={z}")

    def Qhat(self, n: float, z: float) -> float:
        _, _, j3, j4, j0 = self.j
        jn = self.jn(n)
        num = (z - j0 + j4) * (z + j0 + j4 + 1) * (z - j3 + jn) * (z - j3 - jn - 1)
        return _div(num, 2 * z * (2 * z - 1), f"Qhat denominator 2z(2z-1) at z={z}")

    def psi_prod(self, n, p) -> float:
        return self.Q(p, self.jn(n)) * self.Q(p, -self.jn(n))

    def rho_prod(self, n, p) -> float:
        return self.Qhat(n, self.jp(p)) * self.Qhat(n, -self.jp(p))

    def psi00(self, n, p) -> float:
        j2, j3 = self.j.j2, self.j.j3
        return -self.Q(p, self.jn(n + 1)) - self.Q(p, -self.jn(n)) + (j2 - j3 + 1) * (j2 - j3)

    def rho00(self, n, p) -> float:
        j3, j4 = self.j.j3, self.j.j4
        return -self.Qhat(n, self.jp(p + 1)) - self.Qhat(n, -self.jp(p)) + (j3 - j4 - 1) * (j3 - j4)

    def psi00_mu(self, n, p) -> float:
        mn, mp = self.mu_n(n), self.mu_p(p)
        rest = mp - self.mu3 - mn
        return _half_plus(self.mu2 - self.mu1, rest, mn, "mu_n^(12)") + self.mu2 + self.mu3

    def rho00_mu(self, n, p) -> float:
        mn, mp = self.mu_n(n), self.mu_p(p)
        rest = mn - self.mu3 - mp
        return _half_plus(self.mu4 - self.mu0, rest, mp, "mu_p^(123)") + self.mu4 + self.mu3

    def ratio_identity(self, n, p) -> tuple[float, float]:
        """Squared psi/rho ratio relation in the symmetric gauge: (lhs, rhs)."""
        lhs = (self.psi_prod(n, p - 1) / self.psi_prod(n, p)) * (
            self.rho_prod(n, p) / self.rho_prod(n - 1, p))
        s = n - p + self.a12 - self.a123
        j3 = self.j.j3
        rhs = ((s + j3 + 1) * (s - j3)) / ((s + j3) * (s - j3 - 1))
        return lhs, rhs * rhs


def generic_coeffs(j, a12: float, a123: float, n: int, p: int) -> GenericCoeffs:
    fam = GenericFamily(j, a12, a123)
    return GenericCoeffs(
        psi_prod=fam.psi_prod(n, p),
        psi00=fam.psi00(n, p),
        rho_prod=fam.rho_prod(n, p),
        rho00=fam.rho00(n, p),
        Q=lambda z: fam.Q(p, z),
        Qhat=lambda z: fam.Qhat(n, z),
        psi00_mu=fam.psi00_mu(n, p),
        rho00_mu=fam.rho00_mu(n, p),
    )


def canonical_shifts(j) -> tuple[float, float]:
    j = Quintuplet.of(j)
    return -j.j1 - j.j2 - 1, -j.j4 - j.j0 - 1


# symmetric finite-dimensional coefficients

def _sqrt(x: float, what: str, n: int, p: int) -> float:
    if x < 0:
        if x > -1e-12 * max(1.0, abs(x)):
            return 0.0
        raise ConsistencyError(f"negative square-root argument {x!r} in {what} at (n,p)=({n},{p})")
    return math.sqrt(x)


class CoeffBundle:
    """Matrix-entry functions of the finite symmetric representation.

    Instances are built by :func:`symmetric_coeffs`.  ``strict=False`` skips
    the canonical-region check so the same formulas can be evaluated at the
    image of a canonical quintuplet under a symmetry map.
    """

    def __init__(self, j, strict: bool = True):
        self.j = Quintuplet.of(j)
        self.big_n = validate(self.j) if strict else integral_n(self.j)
        self.strict = strict
        a12, a123 = canonical_shifts(self.j)
        self.family = GenericFamily(self.j, a12, a123)
        self.mu1, self.mu2, self.mu3, self.mu4, self.mu0 = self.j.mu

    # factor lists, kept separate for the factor-wise sign assertions
    def _n_block(self, n):
        j1, j2 = self.j.j1, self.j.j2
        s = 2 * j1 + 2 * j2
        num = [n, 2 * j1 + 1 - n, 2 * j2 + 1 - n, s + 2 - n]
        den = [s + 2 - 2 * n, s + 2 - 2 * n, s + 1 - 2 * n, s + 3 - 2 * n]
        return num, den

    def _p_block(self, p):
        j4, j0 = self.j.j4, self.j.j0
        s = 2 * j4 + 2 * j0
        num = [p, 2 * j4 + 1 - p, 2 * j0 + 1 - p, s + 2 - p]
        den = [s + 2 - 2 * p, s + 2 - 2 * p, s + 1 - 2 * p, s + 3 - 2 * p]
        return num, den

    def sqrt_factors(self, kind: str, n: int, p: int) -> tuple[list[float], list[float]]:
        """Numerator and denominator factors under the root of psi, rho, phiD or phiA."""
        j1, j2, j3, j4, j0 = self.j
        N = self.big_n
        k = N - n - p
        if kind == "psi":
            num, den = self._n_block(n)
            num = num + [k + 2 * j3 + 2, k + 1,
                         p - n - N + 2 * j1 + 2 * j2 + 1, n - p - N + 2 * j0 + 2 * j4]
        elif kind == "rho":
            num, den = self._p_block(p)
            num = num + [k + 2 * j3 + 2, k + 1,
                         p - n - N + 2 * j1 + 2 * j2, n - p - N + 2 * j0 + 2 * j4 + 1]
        elif kind == "phiD":
            nn, nd = self._n_block(n)
            pn, pd = self._p_block(p)
            num = nn + pn + [k + 2 * j3 + 2, k + 2 * j3 + 3, k + 1, k + 2]
            den = nd + pd
        elif kind == "phiA":
            nn, nd = self._n_block(n)
            pn, pd = self._p_block(p)
            num = nn + [n - p - 2 * j1 - 2 * j2 + 2 * j3 + N] + pn + [
                p - n - 2 * j0 - 2 * j4 + 2 * j3 + N,
                p - n - N + 2 * j1 + 2 * j2 + 1, n - p - N + 2 * j0 + 2 * j4 + 1]
            den = nd + pd
        else:
            raise ValueError(f"unknown kind {kind!r}")
        return num, den

    def _root(self, kind, n, p) -> float:
        num, den = self.sqrt_factors(kind, n, p)
        top = math.prod(num)
        if top == 0.0:
            return 0.0
        bottom = math.prod(den)
        return _sqrt(_div(top, bottom, f"{kind} denominator"), kind, n, p)

    def jn(self, n):
        return self.family.jn(n)

    def jp(self, p):
        return self.family.jp(p)

    def mu_n(self, n):
        return self.family.mu_n(n)

    def mu_p(self, p):
        return self.family.mu_p(p)

    def psi(self, n, p) -> float:
        return self._root("psi", n, p)

    def rho(self, n, p) -> float:
        return self._root("rho", n, p)

    def psi00(self, n, p) -> float:
        return self.family.psi00_mu(n, p)

    def rho00(self, n, p) -> float:
        return self.family.rho00_mu(n, p)

    def phiD(self, n, p) -> float:
        mag = self._root("phiD", n, p)
        if mag == 0.0:
            return 0.0
        j1, j2, j3 = self.j.j1, self.j.j2, self.j.j3
        N = self.big_n
        s = sgn((n - p - 2 * j1 - 2 * j2 + N + 2 * j3) * (p - n + 2 * j1 + 2 * j2 - N + 1))
        return s * mag

    def phiA(self, n, p) -> float:
        mag = self._root("phiA", n, p)
        if mag == 0.0:
            return 0.0
        return sgn(n + p - self.big_n - 2 * self.j.j3 - 2) * mag

    def phiH(self, n, p) -> float:
        root = self.psi(n, p)
        if root == 0.0:
            return 0.0
        return _half_plus(self.mu0 - self.mu4, root, self.mu_p(p), "mu_p^(123)")

    def phiV(self, n, p) -> float:
        root = self.rho(n, p)
        if root == 0.0:
            return 0.0
        return _half_plus(self.mu1 - self.mu2, root, self.mu_n(n), "mu_n^(12)")

    def phiH_tilde(self, n, p) -> float:
        return self.phiH(n, p) - self.psi(n, p)

    def phiV_tilde(self, n, p) -> float:
        return self.phiV(n, p) - self.rho(n, p)

    # the two closed forms of the C234 diagonal and their barred companions
    def _via_rho(self, n, p, sign: int) -> float:
        mn = self.mu_n(n)
        r = self.rho00(n, p)
        d = self.mu1 - self.mu2
        first = 0.0 if abs(d) < SINGULAR_EPS else _div(d * (r - self.mu0), 2 * mn, "mu_n^(12)")
        return first + sign * 0.5 * (self.mu1 + self.mu2 + self.mu0 - mn + r)

    def _via_psi(self, n, p, sign: int) -> float:
        mp = self.mu_p(p)
        s = self.psi00(n, p)
        d = self.mu0 - self.mu4
        first = 0.0 if abs(d) < SINGULAR_EPS else _div(d * (s - self.mu1), 2 * mp, "mu_p^(123)")
        return first + sign * 0.5 * (self.mu1 + self.mu4 + self.mu0 - mp + s)

    def phi00_via_rho(self, n, p) -> float:
        return self._via_rho(n, p, +1)

    def phi00_via_psi(self, n, p) -> float:
        return self._via_psi(n, p, +1)

    def phi00(self, n, p) -> float:
        try:
            return self.phi00_via_rho(n, p)
        except SingularityError:
            return self.phi00_via_psi(n, p)

    def phi_00bar(self, n, p) -> float:
        return self._via_rho(n, p, -1)

    def phi_0bar0(self, n, p) -> float:
        return self._via_psi(n, p, -1)

    def phi_0bar0bar(self, n, p) -> float:
        return (self.phi00(n, p) - self.rho00(n, p) - self.psi00(n, p)
                + self.mu2 + self.mu3 + self.mu4)

    # alternative product forms of the corner entries, used as cross-checks
    def phiD_ratio_form(self, n, p) -> float:
        s = n - p + self.family.a12 - self.family.a123
        j3 = self.j.j3
        return _div(-self.psi(n, p) * self.rho(n - 1, p), (s + j3) * (s - j3 - 1), "phiD divisor")

    def phiA_ratio_form(self, n, p) -> float:
        t = n + p + self.family.a12 + self.family.a123
        j3 = self.j.j3
        return _div(-self.psi(n, p) * self.rho(n, p), (t + j3 + 1) * (t - j3), "phiA divisor")

    def interior(self) -> Iterator[tuple[int, int]]:
        return iter(basis(self.big_n))


def symmetric_coeffs(j, strict: bool = True) -> CoeffBundle:
    return CoeffBundle(j, strict=strict)


def build_matrices(cb: CoeffBundle) -> dict:
    N = cb.big_n
    dim = dimension(N)
    c12 = np.zeros((dim, dim))
    c123 = np.zeros((dim, dim))
    c23 = np.zeros((dim, dim))
    c34 = np.zeros((dim, dim))
    c234 = np.zeros((dim, dim))

    def put(mat, n, p, m, q, val):
        if in_domain(m, q, N) and val != 0.0:
            mat[position(m, q, N), position(n, p, N)] = val

    for n, p in basis(N):
        k = position(n, p, N)
        c12[k, k] = cb.mu_n(n)
        c123[k, k] = cb.mu_p(p)
        c23[k, k] = cb.psi00(n, p)
        put(c23, n, p, n + 1, p, cb.psi(n + 1, p))
        put(c23, n, p, n - 1, p, cb.psi(n, p))
        c34[k, k] = cb.rho00(n, p)
        put(c34, n, p, n, p + 1, cb.rho(n, p + 1))
        put(c34, n, p, n, p - 1, cb.rho(n, p))
        stencil = (
            (n + 1, p + 1, lambda: cb.phiD(n + 1, p + 1)),
            (n, p + 1, lambda: cb.phiV(n, p + 1)),
            (n - 1, p + 1, lambda: cb.phiA(n, p + 1)),
            (n + 1, p, lambda: cb.phiH(n + 1, p)),
            (n, p, lambda: cb.phi00(n, p)),
            (n - 1, p, lambda: cb.phiH(n, p)),
            (n + 1, p - 1, lambda: cb.phiA(n + 1, p)),
            (n, p - 1, lambda: cb.phiV(n, p)),
            (n - 1, p - 1, lambda: cb.phiD(n, p)),
        )
        for m, q, f in stencil:
            if in_domain(m, q, N):
                c234[position(m, q, N), k] = f()
    return {"C12": c12, "C123": c123, "C23": c23, "C34": c34, "C234": c234}


def build_rep(j, strict: bool = True) -> RepHandle:
    """Matrices of the ten contiguous generators on F_N.

    With ``strict=False`` the quintuplet is only required to give an integral N;
    this is how representations at symmetry images of J are built.
    """
    cb = symmetric_coeffs(j, strict=strict)
    mats = build_matrices(cb)
    meta = {"j": cb.j, "big_n": cb.big_n, "basis": "lex(n,p)"}
    return RepHandle.from_noncentral(mats, cb.j.mu, meta)


def check_irreducible(rep: RepHandle, tol: float = 1e-9) -> bool:
    """Nondegenerate joint spectrum of (C12, C123) plus nonzero hopping along C23/C34."""
    c12, c123 = rep.mats[L(12)], rep.mats[L(123)]
    off = lambda m: np.max(np.abs(m - np.diag(np.diag(m)))) if m.size else 0.0  # noqa: E731
    if off(c12) > tol or off(c123) > tol:
        return False
    pairs = np.column_stack([np.diag(c12), np.diag(c123)])
    d = len(pairs)
    for a in range(d):
        for b in range(a + 1, d):
            if np.max(np.abs(pairs[a] - pairs[b])) <= tol:
                return False
    big_n = rep.meta.get("big_n")
    if big_n is None:
        return True
    c23, c34 = rep.mats[L(23)], rep.mats[L(34)]
    for n, p in basis(big_n):
        k = position(n, p, big_n)
        if n >= 1 and abs(c23[position(n - 1, p, big_n), k]) <= tol:
            return False
        if p >= 1 and abs(c34[position(n, p - 1, big_n), k]) <= tol:
            return False
    return True
