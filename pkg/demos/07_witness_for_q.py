"""A constant-size witness for Q, found by search and pumped to larger sizes.

Run: python3 demos/07_witness_for_q.py
"""

import time

from satmat import is_saturating, serialize_matrix
from satmat.classify import WitnessSearchParams, linear_sufficient, pump, sat_classify, witness_search
from satmat.constructions import named_pattern

Q = named_pattern("Q")
start = time.monotonic()
W = witness_search(Q, WitnessSearchParams(seed=0))
print(f"witness found in {time.monotonic() - start:.2f}s, "
      f"{W.matrix.nrows}x{W.matrix.ncols}, weight {W.matrix.weight}")
print(serialize_matrix(W.matrix, "dots"))
print("empty rows", W.empty_row_block, "empty columns", W.empty_col_block)

for t in (1, 5, 20):
    big = pump(W, t)
    print(f"pumped by {t}: {big.nrows}x{big.ncols}, weight {big.weight}, saturating {is_saturating(big, Q)}")

print("\nsmall changes to Q make saturation linear:")
for name in ("Qp", "Qpp"):
    c = linear_sufficient(named_pattern(name))
    print(f"  {name}: {c.verdict.value} by {c.rule}")

# Q without its middle row and column is an open case; search only
c = sat_classify(named_pattern("Q3"), witness_params=WitnessSearchParams(block_sizes=(1, 2, 3, 4), restarts=4))
print("Q3:", c.verdict.value, c.details)
