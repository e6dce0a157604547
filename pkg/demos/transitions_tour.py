"""Walk the connection graph: edge matrices, a longer path, and the cycle checks."""

import numpy as np

from sracah import closed_form_edge, cycle_certificates, intertwiner_oracle, path, transition
from sracah.symmetry import IDENT, R, T, vertex_name, vertex_of
from sracah.transitions import sign_aligned_diff

j = (1, 1, 2, 1, 1)

for kind, g in (("t", T), ("r", R)):
    cf = closed_form_edge(kind, j)
    orc = intertwiner_oracle(g, IDENT, j)
    print(f"{kind}-edge: closed form vs oracle {sign_aligned_diff(cf.matrix, orc.matrix):.1e}")

np.set_printoptions(precision=4, suppress=True)
print("t-edge matrix:")
print(closed_form_edge("t", j).matrix)

steps = path(vertex_of(IDENT), vertex_of(R * R))
print("path:", " -> ".join(vertex_name(vertex_of(g)) for g in steps))
m = transition(IDENT, R * R, j)
print(f"T_(e, r^2) is orthogonal to {np.abs(m.matrix @ m.matrix.T - np.eye(m.matrix.shape[0])).max():.1e}")

for c in cycle_certificates(j):
    print(f"cycle {c.name:<12} {c.value:.1e}")
