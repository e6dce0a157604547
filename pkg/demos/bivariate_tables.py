"""Tratnik and Griffiths-like functions for a small quintuplet, plus their identity checks."""

from sracah import griffiths, griffiths_table, tratnik, tratnik_table
from sracah.multivariate import griffiths_identities, tratnik_identities

j = (1, 1, 2, 1, 1)
tt = tratnik_table(j)
gt = griffiths_table(j)
print(f"N = {tt.big_n}, {tt.matrix.shape[0]}x{tt.matrix.shape[1]} tables")
print("tratnik(0,1,1,0) =", tratnik(0, 1, 1, 0, j))
print("griffiths(1,0,0,1) =", griffiths(1, 0, 0, 1, j))

print("\nfirst rows of the Tratnik table")
for n1, n2, m1, m2, v in list(tt.rows())[:6]:
    print(f"  ({n1},{n2};{m1},{m2})  {v: .6f}")

for name, rep in (("tratnik", tratnik_identities(j)), ("griffiths", griffiths_identities(j))):
    print(f"\n{name} identities")
    for r in rep:
        print(f"  {r.name:<26} {r.value:.1e}")
