import pytest
from hypothesis import assume, given, strategies as st

from satmat import (
    AllZeroPatternError,
    Matrix,
    MatrixFormatError,
    Occurrence,
    contains,
    contains_using,
    enumerate_occurrences,
    find_occurrence,
    iter_occurrences,
    parse_matrix,
    serialize_matrix,
    transform,
)
from satmat.constructions import gen_named, gen_q
from satmat.matrix import TRANSFORMS
from satmat.oracle import contains_bruteforce, count_occurrences_bruteforce

from conftest import matrices, patterns

I2 = gen_named("identity", 2)
I3 = gen_named("identity", 3)
ONE = Matrix.ones(1, 1)


# text format

def test_parse_identity():
    assert parse_matrix("10\n01") == I2


def test_parse_dots_gives_q():
    text = ".1...\n....1\n..1..\n1....\n...1."
    assert parse_matrix(text) == gen_q()


def test_parse_ignores_whitespace_and_blank_lines():
    assert parse_matrix("\n 1 0\n\n0 1 \n\n") == I2


@pytest.mark.parametrize(
    "text, fragment",
    [("1\n11", "ragged"), ("", "empty"), ("10\n0x", "line 2")],
)
def test_parse_errors(text, fragment):
    with pytest.raises(MatrixFormatError) as err:
        parse_matrix(text)
    assert fragment in str(err.value)


def test_serialize_examples():
    assert serialize_matrix(I2) == "10\n01"
    assert serialize_matrix(Matrix.zeros(1, 3), "dots") == "..."


@given(matrices(), st.sampled_from(["binary", "dots"]))
def test_round_trip(M, style):
    assert parse_matrix(serialize_matrix(M, style)) == M


# transforms

def test_reflections_match_named_patterns():
    assert transform(gen_named("identity", 4), "reflect_vertical") == gen_named("identity_reflected", 4)
    assert transform(gen_named("jk", 5), "reflect_vertical") == gen_named("jk_reflected", 5)


@given(matrices(), st.sampled_from(TRANSFORMS))
def test_transforms_are_involutions(M, op):
    assert transform(transform(M, op), op) == M


@given(matrices())
def test_transforms_entrywise(M):
    m, n = M.shape
    T = transform(M, "transpose")
    H = transform(M, "reflect_horizontal")
    V = transform(M, "reflect_vertical")
    R = transform(M, "rotate180")
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            assert T[j, i] == H[m + 1 - i, j] == V[i, n + 1 - j] == R[m + 1 - i, n + 1 - j] == M[i, j]


# containment

def test_contains_examples():
    assert contains(I3, I2)
    assert not contains(gen_named("jk", 3), I3)
    assert contains(Matrix.from_positions(3, 4, [(2, 3)]), ONE)


def test_find_occurrence_examples():
    assert find_occurrence(I3, I2) == Occurrence((1, 2), (1, 2))
    assert find_occurrence(Matrix.zeros(3, 3), ONE) is None


def test_all_zero_pattern_rejected():
    with pytest.raises(AllZeroPatternError):
        contains(I2, Matrix.zeros(1, 1))


def test_contains_using_examples():
    assert not contains_using(Matrix.zeros(3, 3), (2, 2), I2)
    assert contains_using(Matrix.from_positions(3, 3, [(1, 1)]), (2, 2), I2)


def test_enumerate_examples():
    occs, total = enumerate_occurrences(I2, ONE, 10)
    assert total == 2
    assert occs == [Occurrence((1,), (1,)), Occurrence((2,), (2,))]
    occs, total = enumerate_occurrences(Matrix.ones(2, 2), I2, 10)
    assert (occs, total) == ([Occurrence((1, 2), (1, 2))], 1)


def test_enumerate_truncates():
    occs, total = enumerate_occurrences(Matrix.ones(4, 4), I2, 5)
    assert total is None and len(occs) == 5


@given(matrices(), patterns())
def test_contains_matches_bruteforce(M, P):
    assert contains(M, P) == contains_bruteforce(M, P)


@given(matrices(), patterns())
def test_find_occurrence_is_lex_first(M, P):
    occ = find_occurrence(M, P)
    occs = list(iter_occurrences(M, P))
    assert occs == sorted(occs)
    assert len(occs) == count_occurrences_bruteforce(M, P)
    assert occ == (occs[0] if occs else None)


@given(matrices(), patterns(), st.data())
def test_monotone_under_flips(M, P, data):
    zeros = M.positions(0)
    assume(zeros)
    q = data.draw(st.sampled_from(zeros))
    if contains(M, P):
        assert contains(M.flip(*q), P)


@given(matrices(), patterns(), st.sampled_from(TRANSFORMS))
def test_symmetry(M, P, op):
    assert contains(M, P) == contains(transform(M, op), transform(P, op))


@given(patterns(max_rows=5, max_cols=5))
def test_self_containment(P):
    assert contains(P, P)


@given(matrices(max_rows=4, max_cols=4), patterns(), st.data())
def test_contains_using_definition(M, P, data):
    zeros = M.positions(0)
    assume(zeros)
    q = data.draw(st.sampled_from(zeros))
    flipped = M.flip(*q)
    through_q = any(
        q.row in occ.rows
        and q.col in occ.cols
        and P[occ.rows.index(q.row) + 1, occ.cols.index(q.col) + 1]
        for occ in iter_occurrences(flipped, P)
    )
    assert contains_using(M, q, P) == through_q
    if through_q:
        assert contains(flipped, P)


def test_dimension_cap():
    with pytest.raises(ValueError):
        Matrix.zeros(65, 2)
    assert contains(Matrix.ones(64, 64), I3)
