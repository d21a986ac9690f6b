"""Exact sat, ssat and ex values on small hosts, against the known formulas.

Run: python3 demos/02_exact_values.py
"""

from satmat import Matrix, ex_exact, sat_exact, ssat_exact, serialize_matrix
from satmat.constructions import frame_weight, gen_named

print("I_k: sat = ex = (k-1)(m+n-k+1)")
for k in (2, 3):
    I = gen_named("identity", k)
    for n in range(k, 6):
        s, e = sat_exact(I, n, n), ex_exact(I, n, n)
        print(f"  k={k} n={n}: sat={s.value} ex={e.value} formula={(k - 1) * (2 * n - k + 1)}")

print("\nJ_3: sat = 2(m+n-2)")
J3 = gen_named("jk", 3)
for m, n in [(3, 3), (3, 4), (4, 4), (4, 5)]:
    print(f"  {m}x{n}: {sat_exact(J3, m, n).value} vs {2 * (m + n - 2)}")

print("\nsingle one at (1,1) of a 2x2 pattern: ssat = sat = frame weight")
P = Matrix.from_positions(2, 2, [(1, 1)])
for n in (3, 4):
    print(f"  n={n}: ssat={ssat_exact(P, n, n).value} sat={sat_exact(P, n, n).value} "
          f"frame={frame_weight(2, 2, n, n)}")

r = sat_exact(gen_named("identity", 2), 4, 4)
print(f"\nlex-first optimal certificate for I_2 at 4x4 ({r.nodes_explored} nodes):")
print(serialize_matrix(r.certificate, "dots"))
