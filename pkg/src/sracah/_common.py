"""Shared numeric helpers and error types."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SINGULAR_EPS = 1e-13
DEFAULT_TOL = 1e-9


class SingularityError(ZeroDivisionError):
    """A denominator vanished (|x| < SINGULAR_EPS)."""


class DomainError(ValueError):
    """Arguments outside the region where a quantity is real and finite."""


def sgn(x: float) -> int:
    # sign with sgn(0) = +1
    return -1 if x < 0 else 1


def is_singular(x: float) -> bool:
    return abs(x) < SINGULAR_EPS


def safe_div(num: float, den: float, what: str = "denominator") -> float:
    if is_singular(den):
        raise SingularityError(f"{what} vanishes ({den!r})")
    return num / den


def poch(y: float, n: int) -> float:
    """Rising factorial (y)_n as an iterative product."""
    out = 1.0
    for k in range(n):
        out *= y + k
    return out


def maxabs(a) -> float:
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def comm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticomm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def near_integer(x: float, tol: float = 1e-9) -> bool:
    return abs(x - round(x)) <= tol


@dataclass
class Residual:
    """One named residual. ``value`` is NaN when nothing could be evaluated."""

    name: str
    value: float
    evaluated: int = 1
    skipped: int = 0
    note: str = ""
    absolute: float = float("nan")

    @property
    def evaluable(self) -> bool:
        return self.evaluated > 0 and not math.isnan(self.value)

    def passes(self, tol: float) -> bool:
        return self.evaluable and self.value < tol

    def as_dict(self, tol: float | None = None) -> dict:
        d = {"name": self.name, "residual": self.value,
             "evaluated": self.evaluated, "skipped": self.skipped}
        if not self.evaluable:
            d["status"] = "not evaluable"
        if tol is not None:
            d["tolerance"] = tol
            d["pass"] = self.passes(tol)
        if self.note:
            d["note"] = self.note
        if not math.isnan(self.absolute):
            d["absolute"] = self.absolute
        return d


@dataclass
class Report:
    """Ordered collection of residuals."""

    items: list[Residual] = field(default_factory=list)

    def add(self, r: Residual) -> Residual:
        self.items.append(r)
        return r

    def __getitem__(self, name: str) -> Residual:
        for r in self.items:
            if r.name == name:
                return r
        raise KeyError(name)

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def names(self) -> list[str]:
        return [r.name for r in self.items]

    def worst(self) -> float:
        vals = [r.value for r in self.items if r.evaluable]
        return max(vals) if vals else float("nan")

    def all_pass(self, tol: float) -> bool:
        return all(r.passes(tol) for r in self.items)
