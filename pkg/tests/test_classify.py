from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from satmat import Budget, Matrix, is_saturating, is_semisaturating, parse_matrix, sat_exact, ssat_exact
from satmat.classify import (
    Verdict,
    WitnessError,
    WitnessSearchParams,
    block_split,
    corner_construction,
    default_workers,
    linear_sufficient,
    pump,
    sat_classify,
    skeleton_mask,
    ssat_classify,
    ssat_properties,
    witness_check,
    witness_search,
)
from satmat.constructions import gen_frame, gen_named, named_pattern
from satmat.verify import all_patterns

I1 = Matrix.ones(1, 1)
I2 = gen_named("identity", 2)
Q = named_pattern("Q")


@lru_cache(maxsize=None)
def q_witness():
    W = witness_search(Q, WitnessSearchParams(seed=0))
    assert W is not None
    return W


# semisaturation

@pytest.mark.parametrize("name", ["I1", "I2", "I3", "I5", "J3", "J4", "Jp4", "Q"])
def test_permutations_are_constant(name):
    c = ssat_classify(named_pattern(name))
    assert c.verdict is Verdict.CONSTANT and ssat_properties(named_pattern(name)) == (True, True, True)


def test_all_ones_is_linear():
    c = ssat_classify(Matrix.ones(2, 2))
    assert c.verdict is Verdict.LINEAR and c.certificate == 1
    for n in range(1, 6):
        assert ssat_exact(Matrix.ones(2, 2), n, n).value >= n


def test_corner_examples():
    C = corner_construction(Q, 12, 12)
    assert C.weight == 64 and is_semisaturating(C, Q)
    C = corner_construction(I2, 5, 5)
    assert [tuple(p) for p in C.positions(1)] == [(1, 1), (1, 5), (5, 1), (5, 5)]
    assert is_semisaturating(C, I2)
    with pytest.raises(ValueError):
        corner_construction(Matrix.ones(2, 2), 5, 5)


@pytest.mark.parametrize("P", [P for P in all_patterns(2, 2)] + [P for P in all_patterns(2, 3)])
def test_ssat_verdicts_cross_checked(P):
    c = ssat_classify(P)
    k, l = P.shape
    if c.verdict is Verdict.CONSTANT:
        for n in range(max(k, l), 10):
            assert is_semisaturating(corner_construction(P, n, n), P)
    else:
        for n in range(1, 5):
            assert ssat_exact(P, n, n).value >= n


# linear rules

def test_linear_rules():
    assert linear_sufficient(Matrix.ones(2, 2)).rule == "two_ones_every_row"
    c = linear_sufficient(named_pattern("Qp"))
    assert c.verdict is Verdict.LINEAR and c.rule == "empty_boundary_line"
    c = linear_sufficient(I2)
    assert c.rule == "block_diagonal" and block_split(I2) == (1, 1)
    assert linear_sufficient(Q) is None
    assert linear_sufficient(I1) is None


@pytest.mark.parametrize("P", list(all_patterns(2, 2)) + list(all_patterns(2, 3)))
def test_linear_rules_agree_with_exact(P):
    if linear_sufficient(P) is not None:
        for n in range(1, 5):
            assert sat_exact(P, n, n).value >= n


# witnesses

def test_witness_check_examples():
    W = witness_check(Matrix.zeros(3, 3), I1)
    assert (W.s_rows, W.s_cols) == (0, 0)
    with pytest.raises(WitnessError) as err:
        witness_check(gen_frame(I2, 4, 4), I2)
    assert err.value.reason == "no_empty_rows"
    with pytest.raises(WitnessError) as err:
        witness_check(Matrix.zeros(3, 3), I2)
    assert err.value.reason == "not_saturating"


def test_pump_examples():
    W = witness_check(Matrix.zeros(3, 3), I1)
    assert pump(W, 0) == W.matrix
    assert pump(W, 4) == Matrix.zeros(7, 7) and is_saturating(pump(W, 4), I1)
    with pytest.raises(ValueError):
        pump(W, -1)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 5))
def test_pump_invariance_i1(m, n, t):
    W = witness_check(Matrix.zeros(m, n), I1)
    out = pump(W, t)
    assert out.shape == (m + t, n + t) and out.weight == 0 and is_saturating(out, I1)


@settings(max_examples=10)
@given(st.integers(0, 5))
def test_pump_invariance_q(t):
    W = q_witness()
    out = pump(W, t)
    assert out.weight == W.matrix.weight and is_saturating(out, Q)
    again = witness_check(out, Q)
    assert again.matrix == out


def test_witness_search_examples():
    W = witness_search(I1)
    assert W is not None and W.matrix.weight == 0
    assert witness_search(I2, WitnessSearchParams(budget=Budget(10_000, 60))) is None
    W = q_witness()
    assert W.matrix.weight < 400
    assert witness_check(W.matrix, Q) == W


def test_witness_search_is_deterministic():
    params = WitnessSearchParams(seed=3)
    assert witness_search(Q, params) == witness_search(Q, WitnessSearchParams(seed=3))


def test_witness_search_parallel_lanes_agree():
    serial = witness_search(Q, WitnessSearchParams(seed=1, workers=1))
    parallel = witness_search(Q, WitnessSearchParams(seed=1, workers=2))
    assert serial == parallel


def test_skeleton_mask_geometry():
    n, mask = skeleton_mask(3, 2)
    assert n == 8 and len(mask) == 36
    assert all(not (4 <= i <= 5 or 4 <= j <= 5) for i, j in mask)


def test_threads_env(monkeypatch):
    monkeypatch.setenv("SATMAT_THREADS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("SATMAT_THREADS", "0")
    with pytest.raises(ValueError):
        default_workers()
    monkeypatch.delenv("SATMAT_THREADS")
    assert default_workers() == 1


# saturation verdicts

def test_sat_classify_examples():
    assert sat_classify(named_pattern("Qpp")).verdict is Verdict.LINEAR
    c = sat_classify(Q)
    assert c.verdict is Verdict.CONSTANT
    assert is_saturating(c.certificate.matrix, Q)
    assert sat_classify(I1).verdict is Verdict.CONSTANT
    small = WitnessSearchParams(block_sizes=(1, 2), restarts=1, budget=Budget(100, 10))
    c = sat_classify(gen_named("jk", 4), budget=Budget(200_000, 10), witness_params=small)
    assert c.verdict is Verdict.UNKNOWN


@pytest.mark.parametrize("name", ["I1", "I2", "I3", "J3", "Q", "Qp", "Qpp"])
def test_witness_and_linear_tags_exclusive(name):
    P = named_pattern(name) if name != "I1" else I1
    tagged = linear_sufficient(P) is not None
    small = WitnessSearchParams(block_sizes=(1, 2, 3, 4), restarts=2, budget=Budget(1000, 30))
    found = witness_search(P, small) is not None
    assert not (tagged and found)
