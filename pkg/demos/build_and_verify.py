"""Build a representation, check its relations, then break one entry and watch it fail."""

import sys

from sracah import build_rep, casimir_values, relation_residuals
from sracah.suites import perturb_rep

j = tuple(float(x) for x in sys.argv[1].split(",")) if len(sys.argv) > 1 else (2, 2, 4, 2, 2)
rep = build_rep(j)
print(f"J = {j}, dimension {rep.dim}")

rel = relation_residuals(rep)
for r in rel:
    print(f"  {r.name:<28} {r.value:.2e}")
print(f"worst relation residual {rel.worst():.2e}")
print(f"worst Casimir residual  {casimir_values(rep).worst():.2e}")

bad = perturb_rep(rep, 1e-3, "C23", 0, 1)
print(f"after perturbing C23[0,1] by 1e-3: worst relation residual {relation_residuals(bad).worst():.2e}")
