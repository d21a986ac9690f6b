"""Containment basics: parsing, occurrences, symmetries.

Run: python3 demos/01_containment.py
"""

from satmat import (
    contains,
    contains_using,
    enumerate_occurrences,
    find_occurrence,
    parse_matrix,
    serialize_matrix,
    transform,
)
from satmat.constructions import gen_named, named_pattern

Q = named_pattern("Q")
print("the pattern Q in dot notation:")
print(serialize_matrix(Q, "dots"))
print("unchanged by a quarter turn:", transform(transform(Q, "transpose"), "reflect_horizontal") == Q)

host = parse_matrix(
    """
    1..1..
    .1..1.
    ..1..1
    1.1...
    """
)
I3 = gen_named("identity", 3)
print("host contains I_3:", contains(host, I3))
print("lex-first occurrence:", find_occurrence(host, I3))
occs, total = enumerate_occurrences(host, I3, limit=5)
print(f"{total} occurrences in all, first ones:")
for occ in occs:
    print("  rows", occ.rows, "cols", occ.cols)

# flipping a zero: does the new one take part in an occurrence?
J3 = gen_named("jk", 3)
for q in [(4, 6), (4, 2)]:
    print(f"flip {q} creates J_3 through it:", contains_using(host, q, J3))

# containment is preserved by the dihedral symmetries of the rectangle
for op in ("transpose", "reflect_horizontal", "reflect_vertical", "rotate180"):
    assert contains(host, J3) == contains(transform(host, op), transform(J3, op))
print("symmetry check passed")
