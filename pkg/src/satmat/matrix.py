"""Dense 0-1 matrices with bit-packed rows and the pattern containment engine.

Rows are stored as Python ints: bit ``j`` of ``rows[i]`` is the entry in
row ``i``, column ``j`` (0-based internally). Everything user-facing
(positions, occurrences, text I/O) is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_DIM = 64

TRANSFORMS = ("transpose", "reflect_horizontal", "reflect_vertical", "rotate180")


class MatrixFormatError(ValueError):
    """Malformed matrix text; ``line`` is the 1-based offending line (0 if none)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class AllZeroPatternError(ValueError):
    """Containment was asked for an all-zero pattern."""


@dataclass(frozen=True)
class Position:
    row: int
    col: int

    def __iter__(self):
        return iter((self.row, self.col))


@dataclass(frozen=True, order=True)
class Occurrence:
    """Selected host rows and columns (1-based, strictly increasing)."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]


@dataclass(frozen=True)
class Matrix:
    """Immutable m x n 0-1 matrix. Used both for patterns and host matrices."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if not self.rows or self.ncols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.rows) > MAX_DIM or self.ncols > MAX_DIM:
            raise ValueError(f"matrix dimensions are capped at {MAX_DIM}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row bits exceed the column count")

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, m: int, n: int) -> "Matrix":
        return cls((0,) * m, n)

    @classmethod
    def ones(cls, m: int, n: int) -> "Matrix":
        return cls(((1 << n) - 1,) * m, n)

    @classmethod
    def from_positions(cls, m: int, n: int, positions: Iterable) -> "Matrix":
        rows = [0] * m
        for i, j in positions:
            if not (1 <= i <= m and 1 <= j <= n):
                raise ValueError(f"position ({i},{j}) outside {m}x{n}")
            rows[i - 1] |= 1 << (j - 1)
        return cls(tuple(rows), n)

    @classmethod
    def from_array(cls, array) -> "Matrix":
        a = np.asarray(array)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
        rows = tuple(
            sum(1 << j for j in range(a.shape[1]) if a[i, j]) for i in range(a.shape[0])
        )
        return cls(rows, a.shape[1])

    @classmethod
    def from_bits(cls, m: int, n: int, bits: int) -> "Matrix":
        """Row-major bit packing: cell (i, j) (0-based) is bit ``i*n + j``."""
        mask = (1 << n) - 1
        return cls(tuple((bits >> (i * n)) & mask for i in range(m)), n)

    # basic queries ------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    @cached_property
    def weight(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    @property
    def all_zero(self) -> bool:
        return self.weight == 0

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Column masks: bit ``i`` of ``columns[j]`` is entry (i, j)."""
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return tuple(cols)

    def __getitem__(self, pos) -> int:
        i, j = pos
        self._check(i, j)
        return (self.rows[i - 1] >> (j - 1)) & 1

    def _check(self, i: int, j: int) -> None:
        if not (1 <= i <= self.nrows and 1 <= j <= self.ncols):
            raise IndexError(f"position ({i},{j}) outside {self.nrows}x{self.ncols}")

    def positions(self, value: int = 1) -> list[Position]:
        """Row-major list of positions holding ``value``."""
        return [
            Position(i + 1, j + 1)
            for i, r in enumerate(self.rows)
            for j in range(self.ncols)
            if (r >> j) & 1 == value
        ]

    def to_bits(self) -> int:
        """Inverse of :meth:`from_bits`."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= r << (i * self.ncols)
        return out

    def to_array(self) -> np.ndarray:
        a = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                a[i, j] = (r >> j) & 1
        return a

    def row_major_key(self) -> str:
        """Row-major bit string; certificates are ordered by this key."""
        return "".join(
            "1" if (r >> j) & 1 else "0" for r in self.rows for j in range(self.ncols)
        )

    # edits --------------------------------------------------------------

    def with_entry(self, i: int, j: int, value: int) -> "Matrix":
        self._check(i, j)
        rows = list(self.rows)
        if value:
            rows[i - 1] |= 1 << (j - 1)
        else:
            rows[i - 1] &= ~(1 << (j - 1))
        return Matrix(tuple(rows), self.ncols)

    def flip(self, i: int, j: int) -> "Matrix":
        return self.with_entry(i, j, 1 - self[i, j])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(
            tuple(
                sum(1 << b for b, j in enumerate(cols) if (self.rows[i - 1] >> (j - 1)) & 1)
                for i in rows
            ),
            len(cols),
        )

    def __str__(self) -> str:
        return serialize_matrix(self)


Pattern = Matrix
HostMatrix = Matrix


# text format ------------------------------------------------------------


def parse_matrix(text: str) -> Matrix:
    """Parse one row per line; '1' is a one, '0' or '.' a zero.

    Blank lines and whitespace inside a line are ignored.
    """
    rows: list[int] = []
    width = None
    first_line = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        cells = "".join(line.split())
        if not cells:
            continue
        bad = next((c for c in cells if c not in "01."), None)
        if bad is not None:
            raise MatrixFormatError(f"illegal character {bad!r}", lineno)
        if width is None:
            width, first_line = len(cells), lineno
        elif len(cells) != width:
            raise MatrixFormatError(
                f"ragged rows: expected {width} entries (as on line {first_line}), "
                f"got {len(cells)}",
                lineno,
            )
        rows.append(sum(1 << j for j, c in enumerate(cells) if c == "1"))
        if len(rows) > MAX_DIM or width > MAX_DIM:
            raise MatrixFormatError(f"matrix exceeds {MAX_DIM} per side", lineno)
    if width is None:
        raise MatrixFormatError("empty input", 1)
    return Matrix(tuple(rows), width)


def serialize_matrix(M: Matrix, style: str = "binary") -> str:
    if style not in ("binary", "dots"):
        raise ValueError(f"unknown style {style!r}")
    zero = "0" if style == "binary" else "."
    return "\n".join(
        "".join("1" if (r >> j) & 1 else zero for j in range(M.ncols)) for r in M.rows
    )


# symmetries -------------------------------------------------------------


def _reverse_bits(x: int, n: int) -> int:
    return int(format(x, f"0{n}b")[::-1], 2) if n else 0


def transform(M: Matrix, op: str) -> Matrix:
    """Apply a symmetry of the rectangle.

    ``reflect_vertical`` mirrors across the vertical axis (column order
    reversed); this is the map taking I_k to I'_k and J_k to J'_k.
    ``reflect_horizontal`` mirrors across the horizontal axis (row order
    reversed).
    """
    if op == "transpose":
        return Matrix(M.columns, M.nrows)
    if op == "reflect_vertical":
        return Matrix(tuple(_reverse_bits(r, M.ncols) for r in M.rows), M.ncols)
    if op == "reflect_horizontal":
        return Matrix(M.rows[::-1], M.ncols)
    if op == "rotate180":
        return Matrix(tuple(_reverse_bits(r, M.ncols) for r in reversed(M.rows)), M.ncols)
    raise ValueError(f"unknown transform {op!r}; expected one of {TRANSFORMS}")


# containment ------------------------------------------------------------
#
# The search works on "lines" of the host: ``lines[r]`` is a mask over the
# outer axis. Outer indices (host columns for ``contains``) are chosen by
# lexicographic backtracking; pattern lines are then matched greedily to the
# earliest host line whose restriction to the chosen outer indices dominates
# them. Earliest matching is complete because line order must be preserved.


def _greedy_inner(lines, m, req, fix=None):
    """Earliest inner selection matching ``req`` masks, or None.

    ``fix=(i0, r0)`` pins pattern line ``i0`` to host line ``r0``.
    """
    k = len(req)
    out = []
    r = 0
    for i in range(k):
        need = req[i]
        if fix is not None and i == fix[0]:
            r0 = fix[1]
            if r > r0 or lines[r0] & need != need:
                return None
            out.append(r0)
            r = r0 + 1
            continue
        if fix is not None and i < fix[0]:
            stop = fix[1] - (fix[0] - i) + 1
        else:
            stop = m - (k - i) + 1
        while r < stop and lines[r] & need != need:
            r += 1
        if r >= stop:
            return None
        out.append(r)
        r += 1
    return out


def _outer_scan(lines, m, n, plines, l, fix=None, first_only=False):
    """Yield (inner_sel, outer_sel) for each feasible outer selection, lex order.

    ``plines[i]`` is pattern line ``i`` as a mask over the ``l`` pattern outer
    indices. ``fix=(i0, j0, r0, c0)`` forces pattern entry (i0, j0) onto host
    entry (r0, c0). Inner selections are the greedy earliest ones.
    """
    k = len(plines)
    # pattern outer index j -> bitmask over pattern lines holding a one there
    pcol = [sum(1 << i for i in range(k) if (plines[i] >> j) & 1) for j in range(l)]
    inner_fix = None if fix is None else (fix[0], fix[2])
    sel = [0] * l
    req_stack = [[0] * k]

    def rec(d, start):
        if d == l:
            inner = _greedy_inner(lines, m, req_stack[-1], inner_fix)
            if inner is not None:
                yield inner, list(sel)
            return
        if fix is not None and d == fix[1]:
            cands = (fix[3],) if start <= fix[3] else ()
        elif fix is not None and d < fix[1]:
            cands = range(start, fix[3] - (fix[1] - d) + 1)
        else:
            cands = range(start, n - (l - d) + 1)
        prev = req_stack[-1]
        for c in cands:
            bit = 1 << c
            hits = pcol[d]
            req = list(prev)
            while hits:
                low = hits & -hits
                req[low.bit_length() - 1] |= bit
                hits ^= low
            if d + 1 < l and _greedy_inner(lines, m, req, inner_fix) is None:
                continue
            sel[d] = c
            req_stack.append(req)
            yield from rec(d + 1, c + 1)
            req_stack.pop()

    yield from rec(0, 0)


def _require_pattern(P: Matrix) -> None:
    if P.all_zero:
        raise AllZeroPatternError("containment is undefined for an all-zero pattern")


def _fits(M: Matrix, P: Matrix) -> bool:
    return P.nrows <= M.nrows and P.ncols <= M.ncols


def contains(M: Matrix, P: Matrix) -> bool:
    """True iff some k-row, l-column selection of M has ones wherever P does."""
    _require_pattern(P)
    if not _fits(M, P):
        return False
    scan = _outer_scan(M.rows, M.nrows, M.ncols, P.rows, P.ncols)
    return next(scan, None) is not None


def find_occurrence(M: Matrix, P: Matrix) -> Occurrence | None:
    """Lexicographically smallest occurrence under (rows, cols) ordering."""
    _require_pattern(P)
    if not _fits(M, P):
        return None
    # rows are the outer axis here, so run the column-major search
    hit = next(_outer_scan(M.columns, M.ncols, M.nrows, P.columns, P.nrows), None)
    if hit is None:
        return None
    cols, rows = hit
    return Occurrence(tuple(r + 1 for r in rows), tuple(c + 1 for c in cols))


def contains_using(M: Matrix, q, P: Matrix) -> bool:
    """True iff M with q set to 1 has an occurrence mapping a one of P onto q."""
    _require_pattern(P)
    qi, qj = q
    M._check(qi, qj)
    if not _fits(M, P):
        return False
    r0, c0 = qi - 1, qj - 1
    lines = list(M.rows)
    lines[r0] |= 1 << c0
    m, n, k, l = M.nrows, M.ncols, P.nrows, P.ncols
    for i0, prow in enumerate(P.rows):
        # the pinned pattern line must leave room above and below
        if i0 > r0 or k - i0 > m - r0:
            continue
        for j0 in range(l):
            if not (prow >> j0) & 1 or j0 > c0 or l - j0 > n - c0:
                continue
            scan = _outer_scan(lines, m, n, P.rows, l, fix=(i0, j0, r0, c0))
            if next(scan, None) is not None:
                return True
    return False


def _inner_all(lines, m, req):
    """All inner selections (lex) whose lines dominate ``req``."""
    k = len(req)
    sel = [0] * k

    def rec(i, start):
        if i == k:
            yield tuple(sel)
            return
        need = req[i]
        for r in range(start, m - (k - i) + 1):
            if lines[r] & need == need:
                sel[i] = r
                yield from rec(i + 1, r + 1)

    yield from rec(0, 0)


def iter_occurrences(M: Matrix, P: Matrix) -> Iterator[Occurrence]:
    """All occurrences in lexicographic (rows, cols) order."""
    _require_pattern(P)
    if not _fits(M, P):
        return
    k, l = P.nrows, P.ncols
    pcols = P.columns
    for _, rows in _outer_scan(M.columns, M.ncols, M.nrows, pcols, k):
        # restrict host rows to the chosen ones, then list every column choice
        req = [0] * l
        for j in range(l):
            bits = pcols[j]
            for b, r in enumerate(rows):
                if (bits >> b) & 1:
                    req[j] |= 1 << r
        row_t = tuple(r + 1 for r in rows)
        for cols in _inner_all(M.columns, M.ncols, req):
            yield Occurrence(row_t, tuple(c + 1 for c in cols))


def enumerate_occurrences(M: Matrix, P: Matrix, limit: int) -> tuple[list[Occurrence], int | None]:
    """First ``limit`` occurrences and the total count (None if truncated)."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    out: list[Occurrence] = []
    for occ in iter_occurrences(M, P):
        if len(out) == limit:
            return out, None
        out.append(occ)
    return out, len(out)


def occurrence_support(occ: Occurrence, P: Matrix) -> list[Position]:
    """Host positions aligned with the ones of P under ``occ``."""
    return [
        Position(occ.rows[p.row - 1], occ.cols[p.col - 1]) for p in P.positions(1)
    ]
