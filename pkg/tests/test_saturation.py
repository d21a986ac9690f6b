import pytest
from hypothesis import given, settings, strategies as st

from satmat import (
    AllZeroPatternError,
    Budget,
    Matrix,
    contains,
    ex_exact,
    greedy_complete,
    is_avoiding,
    is_saturating,
    is_semisaturating,
    parse_matrix,
    sat_exact,
    ssat_exact,
    transform,
)
from satmat.constructions import frame_weight, gen_frame, gen_named, named_pattern
from satmat.matrix import TRANSFORMS
from satmat.oracle import exhaustive

from conftest import patterns

I2 = gen_named("identity", 2)
I3 = gen_named("identity", 3)
J3 = gen_named("jk", 3)
ONE = Matrix.ones(1, 1)
ROW2 = Matrix.ones(1, 2)


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        Budget(0, 1.0)
    with pytest.raises(ValueError):
        Budget(10, 0)


# predicates

def test_avoiding_examples():
    assert is_avoiding(Matrix.zeros(4, 4), named_pattern("Q"))
    assert is_avoiding(J3, I3)
    assert not is_avoiding(Matrix.ones(3, 3), I3)


def test_saturating_examples():
    frame = parse_matrix("111\n100\n100")
    assert is_saturating(frame, I2)
    assert is_saturating(Matrix.zeros(2, 3), ONE)
    assert not is_saturating(Matrix.zeros(3, 3), I2)


def test_semisaturating_examples():
    assert is_semisaturating(Matrix.zeros(2, 2), ONE)
    corners = [(i, j) for i in (1, 2, 3, 4, 9, 10, 11, 12) for j in (1, 2, 3, 4, 9, 10, 11, 12)]
    assert is_semisaturating(Matrix.from_positions(12, 12, corners), named_pattern("Q"))


def test_semisaturation_allows_containment():
    # the only zero completes a second copy, so M semisaturates without avoiding
    M = parse_matrix("11\n01")
    assert contains(M, ROW2)
    assert is_semisaturating(M, ROW2) and not is_saturating(M, ROW2)
    assert not is_semisaturating(parse_matrix("11\n00"), ROW2)


def test_greedy_examples():
    G = greedy_complete(Matrix.zeros(3, 3), I2)
    assert is_saturating(G, I2) and G.weight >= 5
    G = greedy_complete(Matrix.zeros(4, 5), ROW2)
    assert G.weight == 4 and all(r.bit_count() == 1 for r in G.rows)


def test_greedy_rejects_containing_start():
    with pytest.raises(ValueError):
        greedy_complete(Matrix.ones(2, 2), I2)


def test_greedy_respects_mask():
    G = greedy_complete(Matrix.zeros(3, 3), I2, mask=[(1, 1), (3, 3)])
    assert [tuple(p) for p in G.positions(1)] == [(1, 1)]


# exact searches

def test_exact_examples():
    assert sat_exact(I2, 3, 3).value == 5
    assert sat_exact(J3, 4, 4).value == 12
    single = Matrix.from_positions(2, 2, [(1, 1)])
    assert sat_exact(single, 3, 3).value == 5
    assert ssat_exact(single, 3, 3).value == 5
    assert ssat_exact(ONE, 3, 4).value == 0
    assert ex_exact(I2, 3, 3).value == 5
    assert ex_exact(ROW2, 4, 4).value == 4
    assert ex_exact(ONE, 2, 3).value == 0


def test_certificate_is_lex_first():
    r = sat_exact(I2, 3, 3)
    assert r.exhausted and r.certificate == parse_matrix("001\n001\n111")


def test_degenerate_dimensions():
    r = sat_exact(I3, 2, 5)
    assert (r.value, r.certificate, r.exhausted) == (10, Matrix.ones(2, 5), True)
    assert ssat_exact(I3, 5, 2).value == 10
    assert ex_exact(I3, 2, 2).value == 4


def test_all_zero_pattern():
    Z = Matrix.zeros(2, 2)
    assert sat_exact(Z, 3, 3).value == 0
    assert ssat_exact(Z, 3, 3).certificate == Matrix.zeros(3, 3)
    with pytest.raises(AllZeroPatternError):
        ex_exact(Z, 3, 3)


def test_budget_exhaustion_reports_bounds():
    J4 = gen_named("jk", 4)
    r = sat_exact(J4, 6, 6, Budget(max_nodes=2000, max_seconds=5))
    assert not r.exhausted
    assert r.lower_bound <= r.value == r.upper_bound == r.certificate.weight
    assert is_saturating(r.certificate, J4)
    e = ex_exact(J4, 6, 6, Budget(max_nodes=500, max_seconds=5))
    assert not e.exhausted and e.lower_bound == e.value <= e.upper_bound
    assert is_avoiding(e.certificate, J4)


@settings(max_examples=60)
@given(patterns(max_rows=2, max_cols=3), st.integers(1, 3), st.integers(1, 4))
def test_engine_matches_enumeration(P, m, n):
    ref = exhaustive(P, m, n)
    for kind, fn in (("sat", sat_exact), ("ssat", ssat_exact), ("ex", ex_exact)):
        r = fn(P, m, n)
        assert r.exhausted
        assert (r.value, r.certificate) == ref[kind]


@settings(max_examples=60)
@given(patterns(max_rows=3, max_cols=3), st.integers(1, 4), st.integers(1, 4))
def test_sandwich_and_certificates(P, m, n):
    ss, s, e = ssat_exact(P, m, n), sat_exact(P, m, n), ex_exact(P, m, n)
    assert ss.value <= s.value <= e.value
    assert is_semisaturating(ss.certificate, P)
    assert is_saturating(s.certificate, P)
    assert is_semisaturating(s.certificate, P)
    assert is_avoiding(e.certificate, P)
    assert ss.certificate.weight == ss.value and e.certificate.weight == e.value
    k, l = P.shape
    if m >= k and n >= l:
        assert s.value <= frame_weight(k, l, m, n)


@settings(max_examples=40)
@given(patterns(max_rows=3, max_cols=3), st.integers(2, 4), st.sampled_from(TRANSFORMS))
def test_values_invariant_under_symmetry(P, n, op):
    assert sat_exact(P, n, n).value == sat_exact(transform(P, op), n, n).value


def test_lower_bound_rules():
    two_per_row = parse_matrix("11\n11")
    for n in range(2, 5):
        r = sat_exact(two_per_row, n, n)
        assert r.value >= n and all(row for row in r.certificate.rows)
    # empty first row of P forces a full first row of the host
    P = parse_matrix("00\n10\n01")
    r = sat_exact(P, 4, 4)
    assert r.certificate.rows[0] == 0b1111


def test_frame_weight_matches_frame():
    P = named_pattern("Q")
    F = gen_frame(P, 6, 7)
    assert F.weight == frame_weight(5, 5, 6, 7) and is_saturating(F, P)
