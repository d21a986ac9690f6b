"""Constant-versus-linear verdicts for saturation and semisaturation.

Semisaturation has a complete criterion (three properties of P). For
saturation only sufficient linearity rules are known, and constancy is
certified by a witness: a saturating matrix with enough consecutive empty
rows and columns that inserting more empty lines keeps it saturating.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .matrix import Matrix, _require_pattern, contains, transform
from .saturation import (
    Budget,
    greedy_complete,
    is_saturating,
    is_semisaturating,
    sat_exact,
)


class Verdict(str, Enum):
    CONSTANT = "Constant"
    LINEAR = "Linear"
    UNKNOWN = "Unknown"


@dataclass
class Classification:
    verdict: Verdict
    rule: str
    certificate: object = None
    details: dict = field(default_factory=dict)


# semisaturation ----------------------------------------------------------


def _lone_in_column(P: Matrix, i: int) -> bool:
    """Row i (1-based) has a one that is the only one in its column."""
    r = P.rows[i - 1]
    return any((r >> j) & 1 and P.columns[j].bit_count() == 1 for j in range(P.ncols))


def _lone_in_row(P: Matrix, j: int) -> bool:
    c = P.columns[j - 1]
    return any((c >> i) & 1 and P.rows[i].bit_count() == 1 for i in range(P.nrows))


def ssat_properties(P: Matrix) -> tuple[bool, bool, bool]:
    """The three properties deciding bounded semisaturation."""
    k, l = P.shape
    p1 = _lone_in_column(P, 1) and _lone_in_column(P, k)
    p2 = _lone_in_row(P, 1) and _lone_in_row(P, l)
    p3 = any(
        (P.rows[i] >> j) & 1 and P.rows[i].bit_count() == 1 and P.columns[j].bit_count() == 1
        for i in range(k)
        for j in range(l)
    )
    return p1, p2, p3


def ssat_classify(P: Matrix) -> Classification:
    _require_pattern(P)
    props = ssat_properties(P)
    for index, ok in enumerate(props, start=1):
        if not ok:
            return Classification(Verdict.LINEAR, f"ssat_property_{index}", index)
    return Classification(Verdict.CONSTANT, "ssat_all_properties")


def corner_construction(P: Matrix, m: int, n: int) -> Matrix:
    """All-ones (k-1) x (l-1) blocks in the four corners, zeros elsewhere.

    Hosts too small for disjoint corners get the all-ones matrix.
    """
    _require_pattern(P)
    if not all(ssat_properties(P)):
        raise ValueError("pattern fails the bounded-semisaturation properties")
    k, l = P.shape
    if min(m, n) <= max(2 * k - 2, 2 * l - 2):
        return Matrix.ones(m, n)
    band = ((1 << (l - 1)) - 1) | (((1 << (l - 1)) - 1) << (n - l + 1))
    rows = tuple(band if i < k - 1 or i >= m - k + 1 else 0 for i in range(m))
    return Matrix(rows, n)


# saturation: linear rules ------------------------------------------------


def block_split(P: Matrix) -> tuple[int, int] | None:
    """First (i, j) with P = (A 0 / 0 B), A = P[:i, :j] and A, B non-zero."""
    k, l = P.shape
    for i in range(1, k):
        for j in range(1, l):
            low = (1 << j) - 1
            if any(P.rows[r] & ~low for r in range(i)):
                continue
            if any(P.rows[r] & low for r in range(i, k)):
                continue
            has_a = any(P.rows[r] & low for r in range(i))
            has_b = any(P.rows[r] & ~low for r in range(i, k))
            if has_a and has_b:
                return i, j
    return None


def linear_sufficient(P: Matrix) -> Classification | None:
    """Linear verdict from the first applicable sufficient rule, else None."""
    _require_pattern(P)
    if all(r.bit_count() >= 2 for r in P.rows):
        return Classification(Verdict.LINEAR, "two_ones_every_row")
    if all(c.bit_count() >= 2 for c in P.columns):
        return Classification(Verdict.LINEAR, "two_ones_every_column")
    k, l = P.shape
    for name, empty in (
        ("first_row", P.rows[0] == 0),
        ("last_row", P.rows[k - 1] == 0),
        ("first_column", P.columns[0] == 0),
        ("last_column", P.columns[l - 1] == 0),
    ):
        if empty:
            return Classification(Verdict.LINEAR, "empty_boundary_line", name)
    split = block_split(P)
    if split is not None:
        return Classification(Verdict.LINEAR, "block_diagonal", split)
    return None


# witnesses ---------------------------------------------------------------


class WitnessError(ValueError):
    """``reason`` is one of not_saturating, no_empty_rows, no_empty_columns."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class WitnessCertificate:
    """Blocks are 1-based inclusive (start, end) ranges of all-zero lines."""

    matrix: Matrix
    empty_row_block: tuple[int, int]
    empty_col_block: tuple[int, int]
    s_rows: int
    s_cols: int


def _longest_zero_run(lines: Iterable[int]) -> tuple[int, int] | None:
    best = None
    start = None
    lines = list(lines)
    for idx, x in enumerate(lines + [1], start=1):
        if x == 0 and idx <= len(lines):
            if start is None:
                start = idx
        elif start is not None:
            if best is None or idx - start > best[1] - best[0] + 1:
                best = (start, idx - 1)
            start = None
    return best


def witness_check(M: Matrix, P: Matrix) -> WitnessCertificate:
    """Certify that M is a witness for P; raises :class:`WitnessError` otherwise."""
    _require_pattern(P)
    s_rows = sum(1 for r in P.rows if r == 0)
    s_cols = sum(1 for c in P.columns if c == 0)
    if not is_saturating(M, P):
        raise WitnessError("not_saturating", "matrix is not saturating for the pattern")
    rows = _longest_zero_run(M.rows)
    if rows is None or rows[1] - rows[0] + 1 < s_rows + 1:
        raise WitnessError("no_empty_rows", f"needs {s_rows + 1} consecutive empty rows")
    cols = _longest_zero_run(M.columns)
    if cols is None or cols[1] - cols[0] + 1 < s_cols + 1:
        raise WitnessError("no_empty_columns", f"needs {s_cols + 1} consecutive empty columns")
    return WitnessCertificate(M, rows, cols, s_rows, s_cols)


def pump(W: WitnessCertificate, t: int) -> Matrix:
    """Insert t empty rows into the empty row block and t empty columns into the column block."""
    if t < 0:
        raise ValueError("t must be non-negative")
    M = W.matrix
    r0, r1 = W.empty_row_block
    c0, c1 = W.empty_col_block
    if any(M.rows[i - 1] for i in range(r0, r1 + 1)) or any(
        M.columns[j - 1] for j in range(c0, c1 + 1)
    ):
        raise ValueError("certificate blocks are not empty")
    if r1 - r0 + 1 < W.s_rows + 1 or c1 - c0 + 1 < W.s_cols + 1:
        raise ValueError("certificate blocks are too short")
    rows = list(M.rows[:r0]) + [0] * t + list(M.rows[r0:])
    low = (1 << c0) - 1
    rows = [(r & low) | ((r & ~low) << t) for r in rows]
    return Matrix(tuple(rows), M.ncols + t)


# symmetric greedy witness search -----------------------------------------

_DIHEDRAL = (
    (),
    ("rotate180",),
    ("transpose", "reflect_horizontal"),
    ("transpose", "reflect_vertical"),
    ("transpose",),
    ("transpose", "rotate180"),
    ("reflect_vertical",),
    ("reflect_horizontal",),
)


def _apply(M: Matrix, ops) -> Matrix:
    for op in ops:
        M = transform(M, op)
    return M


def _map_position(p, ops, n):
    i, j = p
    for op in ops:
        if op == "transpose":
            i, j = j, i
        elif op == "reflect_vertical":
            j = n + 1 - j
        elif op == "reflect_horizontal":
            i = n + 1 - i
        elif op == "rotate180":
            i, j = n + 1 - i, n + 1 - j
    return i, j


def pattern_symmetries(P: Matrix) -> list[tuple]:
    """Dihedral symmetries of the square that fix P."""
    return [g for g in _DIHEDRAL if _apply(P, g) == P]


def _orbits(cells, group, n):
    seen = set()
    out = []
    for p in cells:
        if p in seen:
            continue
        orbit = sorted({_map_position(p, g, n) for g in group})
        seen.update(orbit)
        out.append(tuple(orbit))
    return out


def skeleton_mask(b: int, w: int) -> tuple[int, list]:
    """Host size and fillable cells: four b x b corners around width-w strips."""
    n = 2 * b + w
    cells = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if (i <= b or i > n - b) and (j <= b or j > n - b)
    ]
    return n, cells


def _attempt(args):
    P, b, w, restart, seed, symmetric = args
    n, cells = skeleton_mask(b, w)
    group = pattern_symmetries(P) if symmetric else [()]
    orbits = _orbits(cells, group, n)
    rng = random.Random(f"{seed}:{b}:{w}:{restart}")
    if restart:
        rng.shuffle(orbits)
    rows = [0] * n
    for orbit in orbits:
        trial = list(rows)
        for i, j in orbit:
            trial[i - 1] |= 1 << (j - 1)
        if not contains(Matrix(tuple(trial), n), P):
            rows = trial
    order = [p for orbit in orbits for p in orbit]
    M = greedy_complete(Matrix(tuple(rows), n), P, order=order)
    try:
        return witness_check(M, P)
    except WitnessError:
        return None


@dataclass
class WitnessSearchParams:
    block_sizes: tuple = tuple(range(1, 11))
    strip_widths: tuple | None = None
    restarts: int = 12
    seed: int = 0
    symmetric: bool = True
    budget: Budget = field(default_factory=lambda: Budget(max_nodes=10_000, max_seconds=600.0))
    workers: int | None = None


def default_workers() -> int:
    raw = os.environ.get("SATMAT_THREADS")
    if raw is None:
        return 1
    value = int(raw)
    if value < 1:
        raise ValueError("SATMAT_THREADS must be a positive integer")
    return value


def witness_search(P: Matrix, params: WitnessSearchParams | None = None) -> WitnessCertificate | None:
    """Look for a witness on four-corner skeletons filled greedily.

    Orbits of the pattern's symmetry group are filled together (in row-major
    order for restart 0, shuffled afterwards), then single cells. The first
    attempt in (block size, strip width, restart) order that yields a witness
    is returned, independently of the worker count. None is not a proof of
    linearity.
    """
    _require_pattern(P)
    params = params or WitnessSearchParams()
    s = max(sum(1 for r in P.rows if r == 0), sum(1 for c in P.columns if c == 0))
    widths = params.strip_widths or (s + 1,)
    tasks = [
        (P, b, w, r, params.seed, params.symmetric)
        for b in params.block_sizes
        for w in widths
        if w >= s + 1
        for r in range(params.restarts)
    ][: params.budget.max_nodes]
    deadline = time.monotonic() + params.budget.max_seconds
    workers = params.workers or default_workers()
    if workers == 1:
        for task in tasks:
            if time.monotonic() > deadline:
                return None
            found = _attempt(task)
            if found is not None:
                return found
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(tasks), workers):
            if time.monotonic() > deadline:
                return None
            for found in pool.map(_attempt, tasks[start : start + workers]):
                if found is not None:
                    return found
    return None


# saturation verdict ------------------------------------------------------


def sat_classify(
    P: Matrix,
    budget: Budget | None = None,
    witness_params: WitnessSearchParams | None = None,
    threshold_sizes: Iterable[int] | None = None,
) -> Classification:
    """Linear by a sufficient rule, Constant with a witness, otherwise Unknown.

    Besides the skeleton search, small exact optima are scanned: an n0 x n0
    optimum of weight below n0/(max(k,l)-1) must leave empty lines, and it is
    accepted when it passes :func:`witness_check`.
    """
    _require_pattern(P)
    budget = budget or Budget(max_nodes=2_000_000, max_seconds=60.0)
    rule = linear_sufficient(P)
    if rule is not None:
        return rule
    k, l = P.shape
    kk = max(k, l)
    details: dict = {}
    if threshold_sizes is None:
        threshold_sizes = [n0 for n0 in range(kk, kk + 3) if n0 * n0 <= 25]
    for n0 in threshold_sizes:
        result = sat_exact(P, n0, n0, budget)
        details[f"sat_{n0}x{n0}"] = result.value if result.exhausted else None
        if not result.exhausted:
            continue
        if kk == 1 or result.value * (kk - 1) < n0:
            try:
                cert = witness_check(result.certificate, P)
            except ValueError:
                continue
            return Classification(Verdict.CONSTANT, "threshold_witness", cert, details)
    params = witness_params or WitnessSearchParams(
        budget=Budget(max_nodes=10_000, max_seconds=budget.max_seconds)
    )
    cert = witness_search(P, params)
    if cert is not None:
        return Classification(Verdict.CONSTANT, "witness_search", cert, details)
    details["witness_search"] = "exhausted"
    return Classification(Verdict.UNKNOWN, "undecided", None, details)
