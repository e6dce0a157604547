"""Generators of the rank-two Racah algebra and their defining relations.

Everything is expressed in the contiguous basis
C1, C2, C3, C4, C1234, C12, C23, C34, C123, C234; the five remaining
generators are linear combinations of these.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from ._common import Report, Residual, anticomm, comm, maxabs

FULL = frozenset({1, 2, 3, 4})


@total_ordering
class GeneratorLabel:
    """A subset of {1,2,3,4} naming C_I.  Order of the indices is irrelevant."""

    __slots__ = ("subset",)

    def __init__(self, idx: Iterable[int] | str | int):
        if isinstance(idx, GeneratorLabel):
            s = idx.subset
        elif isinstance(idx, str):
            txt = idx.upper().removeprefix("C").removeprefix("_")
            s = frozenset(int(ch) for ch in txt)
        elif isinstance(idx, int):
            s = frozenset(int(ch) for ch in str(idx))
        else:
            s = frozenset(int(i) for i in idx)
        if not s <= FULL:
            raise ValueError(f"label indices must lie in {{1,2,3,4}}, got {sorted(s)}")
        object.__setattr__(self, "subset", s)

    def __setattr__(self, *_):
        raise AttributeError("GeneratorLabel is immutable")

    @property
    def key(self) -> tuple:
        return (len(self.subset), tuple(sorted(self.subset)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneratorLabel):
            try:
                other = GeneratorLabel(other)
            except (ValueError, TypeError):
                return NotImplemented
        return self.subset == other.subset

    def __lt__(self, other: "GeneratorLabel") -> bool:
        return self.key < GeneratorLabel(other).key

    def __hash__(self) -> int:
        return hash(self.subset)

    def __len__(self) -> int:
        return len(self.subset)

    def __str__(self) -> str:
        return "C" + "".join(str(i) for i in sorted(self.subset))

    def __repr__(self) -> str:
        return f"GeneratorLabel({''.join(str(i) for i in sorted(self.subset)) or '{}'})"

    @property
    def is_central(self) -> bool:
        return len(self.subset) == 1 or self.subset == FULL

    def commutes_with(self, other: "GeneratorLabel") -> bool:
        # disjoint or nested labels commute in R(4)
        a, b = self.subset, GeneratorLabel(other).subset
        return not (a & b) or a <= b or b <= a


L = GeneratorLabel
ALL_LABELS: tuple[GeneratorLabel, ...] = tuple(
    sorted(L(c) for k in range(1, 5) for c in combinations(range(1, 5), k)))
CENTRAL_LABELS = (L(1), L(2), L(3), L(4), L(1234))
CONTIGUOUS_NONCENTRAL = (L(12), L(23), L(34), L(123), L(234))
CONTIGUOUS = CENTRAL_LABELS + CONTIGUOUS_NONCENTRAL

# reconstruction of the non-contiguous generators
EXPANSIONS: dict[GeneratorLabel, tuple[tuple[int, GeneratorLabel], ...]] = {
    L(13): ((-1, L(23)), (1, L(123)), (-1, L(12)), (1, L(1)), (1, L(2)), (1, L(3))),
    L(24): ((1, L(234)), (-1, L(23)), (-1, L(34)), (1, L(2)), (1, L(3)), (1, L(4))),
    L(14): ((1, L(1234)), (-1, L(123)), (-1, L(234)), (1, L(23)), (1, L(1)), (1, L(4))),
    L(124): ((1, L(1234)), (-1, L(123)), (-1, L(34)), (1, L(12)), (1, L(3)), (1, L(4))),
    L(134): ((1, L(1234)), (-1, L(234)), (-1, L(12)), (1, L(34)), (1, L(1)), (1, L(2))),
}


def contiguous_expansion(label) -> tuple[tuple[int, GeneratorLabel], ...]:
    """Integer combination of contiguous generators equal to C_label."""
    lab = L(label)
    if lab in EXPANSIONS:
        return EXPANSIONS[lab]
    if lab in CONTIGUOUS:
        return ((1, lab),)
    if not lab.subset:
        return ()
    raise ValueError(f"unknown label {label!r}")


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class RepHandle:
    """Matrices for the ten contiguous generators plus the central values.

    ``mu`` is ordered (mu1, mu2, mu3, mu4, mu0) where mu0 belongs to C1234.
    """

    mats: Mapping[GeneratorLabel, np.ndarray]
    mu: tuple[float, float, float, float, float]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        missing = [str(x) for x in CONTIGUOUS if x not in self.mats]
        if missing:
            raise StructureError(f"missing generators: {missing}")
        shapes = {np.shape(self.mats[x]) for x in CONTIGUOUS}
        if len(shapes) != 1:
            raise StructureError(f"dimension mismatch among generators: {sorted(shapes)}")
        (shape,) = shapes
        if len(shape) != 2 or shape[0] != shape[1]:
            raise StructureError(f"generators must be square, got {shape}")

    @classmethod
    def from_noncentral(cls, mats: Mapping, mu, meta: dict | None = None) -> "RepHandle":
        mats = {L(k): np.asarray(v, dtype=float) for k, v in mats.items()}
        d = next(iter(mats.values())).shape[0]
        for lab, val in zip(CENTRAL_LABELS, mu):
            mats.setdefault(lab, val * np.eye(d))
        return cls(mats, tuple(float(x) for x in mu), meta or {})

    @property
    def dim(self) -> int:
        return int(np.shape(self.mats[L(12)])[0])

    def __getitem__(self, label) -> np.ndarray:
        return reconstruct(label, self)

    def central_residual(self) -> float:
        """How far C1..C4, C1234 are from mu*I."""
        eye = np.eye(self.dim)
        return max(maxabs(self.mats[lab] - val * eye) for lab, val in zip(CENTRAL_LABELS, self.mu))

    def replace(self, label, matrix: np.ndarray) -> "RepHandle":
        mats = dict(self.mats)
        mats[L(label)] = np.asarray(matrix, dtype=float)
        return RepHandle(mats, self.mu, dict(self.meta))


def reconstruct(label, rep: RepHandle) -> np.ndarray:
    """Matrix of C_label; the empty label gives the zero matrix."""
    lab = L(label)
    if not lab.subset:
        return np.zeros((rep.dim, rep.dim))
    if lab in rep.mats:
        return rep.mats[lab]
    out = np.zeros((rep.dim, rep.dim))
    for c, part in contiguous_expansion(lab):
        out = out + c * rep.mats[part]
    return out


def _named(rep: RepHandle):
    g = {str(k): rep.mats[k] for k in CONTIGUOUS}
    return (g["C1"], g["C2"], g["C3"], g["C4"], g["C1234"],
            g["C12"], g["C23"], g["C34"], g["C123"], g["C234"])


def relation_residuals(rep: RepHandle) -> Report:
    """All 24 contiguous-basis relations, each as a max-abs-entry norm.

    Names carry a group prefix: ``comm`` (5 commutativity relations),
    ``r3`` (10 three-generator relations), ``r4a`` (5) and ``r4b`` (4).
    """
    c1, c2, c3, c4, c0, a, b, c, d, e = _named(rep)
    sq = lambda x: x @ x  # noqa: E731
    half = 0.5
    out = Report()

    def add(name, mat):
        out.add(Residual(name, maxabs(mat)))

    add("comm:[C12,C34]", comm(a, c))
    add("comm:[C12,C123]", comm(a, d))
    add("comm:[C23,C123]", comm(b, d))
    add("comm:[C23,C234]", comm(b, e))
    add("comm:[C34,C234]", comm(c, e))

    r3 = [
        ("r3:C12,C23", half * comm(a, comm(a, b)),
         sq(a) + anticomm(a, b) - (c1 + c2 + c3 + d) @ a - (c1 - c2) @ (c3 - d)),
        ("r3:C23,C12", half * comm(b, comm(b, a)),
         sq(b) + anticomm(a, b) - (c1 + c2 + c3 + d) @ b - (c1 - d) @ (c3 - c2)),
        ("r3:C23,C34", half * comm(b, comm(b, c)),
         sq(b) + anticomm(b, c) - (c2 + c3 + c4 + e) @ b - (c2 - c3) @ (c4 - e)),
        ("r3:C34,C23", half * comm(c, comm(c, b)),
         sq(c) + anticomm(b, c) - (c2 + c3 + c4 + e) @ c - (c2 - e) @ (c4 - c3)),
        ("r3:C12,C234", half * comm(a, comm(a, e)),
         sq(a) + anticomm(a, e) - (c1 + c2 + c + c0) @ a - (c1 - c2) @ (c - c0)),
        ("r3:C234,C12", half * comm(e, comm(e, a)),
         sq(e) + anticomm(a, e) - (c1 + c2 + c + c0) @ e - (c1 - c0) @ (c - c2)),
        ("r3:C34,C123", half * comm(c, comm(c, d)),
         sq(c) + anticomm(d, c) - (a + c3 + c4 + c0) @ c - (a - c0) @ (c4 - c3)),
        ("r3:C123,C34", half * comm(d, comm(d, c)),
         sq(d) + anticomm(d, c) - (a + c3 + c4 + c0) @ d - (a - c3) @ (c4 - c0)),
        ("r3:C234,C123", half * comm(e, comm(e, d)),
         sq(e) + anticomm(d, e) - (c1 + b + c4 + c0) @ e - (c1 - c0) @ (c4 - b)),
        ("r3:C123,C234", half * comm(d, comm(d, e)),
         sq(d) + anticomm(d, e) - (c1 + b + c4 + c0) @ d - (c1 - b) @ (c4 - c0)),
    ]
    for name, lhs, rhs in r3:
        add(name, lhs - rhs)

    add("r4a:linear", comm(a, b) + comm(b, c) - comm(d, c) - comm(a, e) + comm(d, e))
    r4a = [
        ("r4a:[C34,[C12,C23]]", half * comm(c, comm(a, b)),
         a @ (b + c - e - c3) + b @ (c - c0) - c @ c2 + d @ (e - c - c2) - e @ c3
         + (c2 + c3) @ c0 + c2 @ c3),
        ("r4a:[C23,[C123,C34]]", half * comm(b, comm(d, c)),
         a @ (-b + e - c4) + b @ (d - c4) + c @ (b - c1) + d @ (c - e - c3) - e @ c3
         + (c1 + c3) @ c4 + c1 @ c3),
        ("r4a:[C234,[C23,C12]]", half * comm(e, comm(b, a)),
         a @ (e - c4) + b @ (a - c + e - c1) - c @ c1 + d @ (c - e - c2) - e @ c2
         + (c1 + c2) @ c4 + c1 @ c2),
        ("r4a:[C234,[C123,C34]]", half * comm(e, comm(d, c)),
         a @ (-b + e + c4) + c @ (b - d - e + c0) + b @ c0 + d @ (-e + c2) + e @ c4
         - (c2 + c0) @ c4 - c2 @ c0),
    ]
    for name, lhs, rhs in r4a:
        add(name, lhs - rhs)

    ab, bc, ae, cd = comm(a, b), comm(b, c), comm(a, e), comm(c, d)
    add("r4b:1", (a + e - c2 - c0) @ ab + (a - c2 + c1) @ bc
        + (d - b - a + c2) @ ae + (a - c2 - c1) @ cd)
    add("r4b:2", (-e + c + c2) @ ab + (a - c1 + c2) @ bc + (b - c2 - c3) @ ae + 2 * c2 @ cd)
    add("r4b:3", (-c - c3 + c4) @ ab + (d - a - c3) @ bc + 2 * c3 @ ae + (b - c2 - c3) @ cd)
    add("r4b:4", (-c + c3 - c4) @ ab + (-d - c + c3 + c0) @ bc
        + (c - c4 - c3) @ ae + (e - b - c + c3) @ cd)
    return out


RELATION_GROUPS = ("comm", "r3", "r4a", "r4b")


def group_maxima(report: Report) -> dict[str, float]:
    out = {}
    for g in RELATION_GROUPS:
        vals = [r.value for r in report if r.name.split(":")[0] == g]
        out[g] = max(vals)
    return out


def casimir_w(I, J, K, rep: RepHandle) -> np.ndarray:
    """w_{I,J,K} for three nonempty disjoint subsets."""
    I, J, K = L(I).subset, L(J).subset, L(K).subset
    if not (I and J and K) or (I & J) or (J & K) or (I & K):
        raise ValueError("w needs three nonempty disjoint subsets")
    X = reconstruct(I | J, rep)
    Y = reconstruct(J | K, rep)
    cI, cJ, cK = reconstruct(I, rep), reconstruct(J, rep), reconstruct(K, rep)
    cIJK = reconstruct(I | J | K, rep)
    XY = anticomm(X, Y)
    cm = comm(X, Y)
    X2, Y2 = X @ X, Y @ Y
    w = (0.25 * cm @ cm - 0.5 * anticomm(X2, Y) - 0.5 * anticomm(X, Y2) + X2 + Y2 + XY
         + 0.5 * (cI + cJ + cK + cIJK) @ (XY - 2 * X - 2 * Y)
         - (cI - cIJK) @ (cJ - cK) @ X - (cI - cJ) @ (cIJK - cK) @ Y
         + (cI @ cK - cIJK @ cJ) @ (cIJK - cI + cJ - cK) + (cI + cK) @ (cIJK + cJ))
    return w


def x1234_forms(rep: RepHandle) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three expressions for 2*x1234."""
    w = lambda i, j, k: casimir_w(i, j, k, rep)  # noqa: E731
    f1 = w(12, 3, 4) - w(1, 3, 4) - w(2, 3, 4)
    f2 = w(1, 23, 4) - w(1, 2, 4) - w(1, 3, 4)
    f3 = w(1, 2, 34) - w(1, 2, 3) - w(1, 2, 4)
    return f1, f2, f3


def casimir_matrices(rep: RepHandle) -> dict[str, np.ndarray]:
    return {
        "w123": casimir_w(1, 2, 3, rep),
        "w124": casimir_w(1, 2, 4, rep),
        "w134": casimir_w(1, 3, 4, rep),
        "w234": casimir_w(2, 3, 4, rep),
        "x1234": 0.5 * x1234_forms(rep)[0],
    }


def casimir_values(rep: RepHandle) -> Report:
    """Norms of the five independent Casimir elements (all vanish in sR(4))."""
    out = Report()
    for name, m in casimir_matrices(rep).items():
        out.add(Residual(name, maxabs(m)))
    return out


def casimir_properties(rep: RepHandle) -> Report:
    """Centrality of every w, agreement of the three x forms, symmetry of w."""
    out = Report()
    worst = 0.0
    for name, w in casimir_matrices(rep).items():
        for lab in ALL_LABELS:
            worst = max(worst, maxabs(comm(w, reconstruct(lab, rep))))
    out.add(Residual("centrality", worst))
    f1, f2, f3 = x1234_forms(rep)
    out.add(Residual("x1234_forms", max(maxabs(f1 - f2), maxabs(f2 - f3), maxabs(f1 - f3))))
    sym = 0.0
    for perm in [(2, 1, 3), (1, 3, 2), (3, 2, 1), (2, 3, 1), (3, 1, 2)]:
        sym = max(sym, maxabs(casimir_w(1, 2, 3, rep) - casimir_w(*perm, rep)))
    out.add(Residual("w_symmetry", sym))
    return out


def subset_sum_residual(rep: RepHandle) -> float:
    """C_I = 1/2 sum_{i != j in I} C_ij - (|I|-2) sum_{i in I} C_i for |I| >= 2."""
    worst = 0.0
    for lab in ALL_LABELS:
        s = sorted(lab.subset)
        if len(s) < 2:
            continue
        rhs = sum(reconstruct((i, j), rep) for i, j in combinations(s, 2))
        rhs = rhs - (len(s) - 2) * sum(reconstruct(i, rep) for i in s)
        worst = max(worst, maxabs(reconstruct(lab, rep) - rhs))
    return worst
