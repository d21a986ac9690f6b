"""Brute-force references. Slow on purpose; they share no search code with the engine.

Containment is checked over every row-subset x column-subset pair, and the
extremal functions by enumerating all 2^(mn) host matrices, with "new copy"
taken literally: flipping a zero must strictly increase the number of
(row selection, column selection) occurrences.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .matrix import AllZeroPatternError, Matrix

MAX_CELLS = 16


def contains_bruteforce(M: Matrix, P: Matrix) -> bool:
    if P.all_zero:
        raise AllZeroPatternError("all-zero pattern")
    ones = [(p.row - 1, p.col - 1) for p in P.positions(1)]
    for rs in combinations(range(M.nrows), P.nrows):
        for cs in combinations(range(M.ncols), P.ncols):
            if all((M.rows[rs[i]] >> cs[j]) & 1 for i, j in ones):
                return True
    return False


def count_occurrences_bruteforce(M: Matrix, P: Matrix) -> int:
    ones = [(p.row - 1, p.col - 1) for p in P.positions(1)]
    total = 0
    for rs in combinations(range(M.nrows), P.nrows):
        for cs in combinations(range(M.ncols), P.ncols):
            total += all((M.rows[rs[i]] >> cs[j]) & 1 for i, j in ones)
    return total


def occurrence_counts(P: Matrix, m: int, n: int) -> np.ndarray:
    """Occurrence count of P in every m x n host, indexed by row-major bits."""
    N = m * n
    if N > MAX_CELLS:
        raise ValueError(f"exhaustive enumeration limited to {MAX_CELLS} cells")
    X = np.arange(1 << N, dtype=np.int64)
    counts = np.zeros(1 << N, dtype=np.int32)
    if P.nrows > m or P.ncols > n:
        return counts
    ones = [(p.row - 1, p.col - 1) for p in P.positions(1)]
    for rs in combinations(range(m), P.nrows):
        for cs in combinations(range(n), P.ncols):
            e = 0
            for i, j in ones:
                e |= 1 << (rs[i] * n + cs[j])
            counts += (X & e) == e
    return counts


def _lex_first(cands: np.ndarray, m: int, n: int) -> Matrix:
    mats = [Matrix.from_bits(m, n, int(x)) for x in cands]
    return min(mats, key=Matrix.row_major_key)


def exhaustive(P: Matrix, m: int, n: int) -> dict:
    """sat/ssat/ex values and lexicographically first certificates by full enumeration.

    Returns ``{"sat": (value, M), "ssat": (value, M), "ex": (value, M)}``.
    """
    if P.all_zero:
        raise AllZeroPatternError("all-zero pattern")
    N = m * n
    counts = occurrence_counts(P, m, n)
    X = np.arange(1 << N, dtype=np.int64)
    weight = np.zeros(1 << N, dtype=np.int32)
    for c in range(N):
        weight += (X >> c) & 1
    saturating = counts == 0
    semi = np.ones(1 << N, dtype=bool)
    for c in range(N):
        bit = 1 << c
        is_zero = (X & bit) == 0
        flipped = counts[X | bit]
        semi &= ~is_zero | (flipped > counts)
        saturating &= ~is_zero | (flipped > 0)
    avoiding = counts == 0

    out = {}
    for name, ok, best in (
        ("sat", saturating, np.min),
        ("ssat", semi, np.min),
        ("ex", avoiding, np.max),
    ):
        value = int(best(weight[ok]))
        cands = X[ok & (weight == value)]
        out[name] = (value, _lex_first(cands, m, n))
    return out
