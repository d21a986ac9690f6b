"""Bounded versus linear semisaturation, decided by three properties.

Run: python3 demos/06_semisaturation.py
"""

from satmat import Matrix, is_semisaturating, serialize_matrix, ssat_exact
from satmat.classify import corner_construction, ssat_classify, ssat_properties
from satmat.constructions import named_pattern
from satmat.verify import all_patterns

for name in ("I3", "J4", "Q", "Qp", "Qpp"):
    P = named_pattern(name)
    c = ssat_classify(P)
    print(f"{name:4s} properties {ssat_properties(P)} -> {c.verdict.value}")

Q = named_pattern("Q")
C = corner_construction(Q, 12, 12)
print(f"\ncorner construction for Q at 12x12, weight {C.weight}:")
print(serialize_matrix(C, "dots"))
print("semisaturating:", is_semisaturating(C, Q))

counts = {}
for P in all_patterns(2, 3):
    counts.setdefault(ssat_classify(P).verdict.value, []).append(P)
print("\n2x3 patterns:", {k: len(v) for k, v in counts.items()})
P = Matrix.ones(2, 2)
print("all-ones 2x2, ssat(n,n) for n=1..5:", [ssat_exact(P, n, n).value for n in range(1, 6)])
