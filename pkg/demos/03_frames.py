"""Every pattern has at most linear saturation: the frame construction.

Run: python3 demos/03_frames.py
"""

from satmat import is_saturating, serialize_matrix
from satmat.classify import WitnessSearchParams, pump, witness_search
from satmat.constructions import frame_weight, gen_frame, named_pattern

Q = named_pattern("Q")
for pivot in Q.positions(1):
    F = gen_frame(Q, 7, 8, pivot)
    assert is_saturating(F, Q)
    print(f"pivot {tuple(pivot)}: weight {F.weight}")
print("formula:", frame_weight(5, 5, 7, 8))
print(serialize_matrix(gen_frame(Q, 7, 8, (3, 3)), "dots"))

# for Q a witness of constant weight beats the frame once hosts grow
W = witness_search(Q, WitnessSearchParams(seed=0))
for t in (0, 5, 20):
    n = W.matrix.nrows + t
    print(f"n={n}: frame {frame_weight(5, 5, n, n)}, pumped witness {pump(W, t).weight}")
