"""Staircases and levels in saturating matrices for J'_k.

Run: python3 demos/04_staircases_and_levels.py
"""

from satmat import sat_exact, serialize_matrix
from satmat.constructions import (
    extremal_staircase,
    gen_named,
    jk_lower_bound,
    jk_reflected_counting_sum,
    level_of,
    verify_level_lemmas,
)

k, m, n = 4, 5, 5
Jp = gen_named("jk_reflected", k)
M = sat_exact(Jp, m, n).certificate
print(f"optimal matrix saturating for J'_{k} at {m}x{n} (weight {M.weight}):")
print(serialize_matrix(M))

S = extremal_staircase(M)
print("\nlevels above the staircase (S marks the staircase, _ is below it):")
for i in range(1, m + 1):
    cells = []
    for j in range(1, n + 1):
        if S.above(i, j):
            cells.append(str(level_of(M, S, (i, j))))
        elif S.below(i, j):
            cells.append("_")
        else:
            cells.append("S")
    print(" ".join(cells))

report = verify_level_lemmas(M, k)
for clause in report.clauses:
    print(f"{'ok ' if clause.passed else 'BAD'} {clause.name} {clause.detail}")

print("\ncounting sum", jk_reflected_counting_sum(k, m, n), "<= weight", M.weight)
print("lower bound", jk_lower_bound(k, m, n), "upper bound", (k - 1) * (m + n - k + 1))
