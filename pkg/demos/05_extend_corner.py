"""Adding a corner one to a pattern adds exactly m+n-1 to sat.

Run: python3 demos/05_extend_corner.py
"""

from satmat import is_saturating, sat_exact, serialize_matrix
from satmat.constructions import (
    cor_ikik_bound,
    cor_ikik_constant,
    extendcorner_extend,
    extendcorner_reduce,
    gen_named,
)

I2, I3 = gen_named("identity", 2), gen_named("identity", 3)
m, n = 4, 5
big = sat_exact(I3, m, n)
small = sat_exact(I2, m - 1, n - 1)
print(f"sat(I_3,{m},{n}) = {big.value} = sat(I_2,{m - 1},{n - 1}) + m+n-1 = {small.value} + {m + n - 1}")

reduced = extendcorner_reduce(big.certificate, I3)
print("\noptimal for I_3:")
print(serialize_matrix(big.certificate))
print("after deleting the staircase and closing the gap:")
print(serialize_matrix(reduced))
print("saturating for I_2:", is_saturating(reduced, I2))

grown = extendcorner_extend(small.certificate, I2)
print("\nextending the I_2 optimum gives weight", grown.weight, "saturating:", is_saturating(grown, I3))

print("\nbound for the block pattern (0 I_2 / I'_2 0) with explicit constant:")
for size in (6, 8, 10):
    print(f"  n={size}: bound {cor_ikik_bound(3, 1, size, size)}, constant {cor_ikik_constant(3, 1, size, size)}")
