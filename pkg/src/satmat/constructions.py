"""Named patterns, upper-bound constructions, and staircase/level analysis for J'_k."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .matrix import Matrix, Position, transform
from .saturation import is_saturating

NAMES = ("identity", "identity_reflected", "jk", "jk_reflected")

# 1-based positions of the ones of the 5x5 permutation pattern Q
Q_POSITIONS = ((1, 2), (2, 5), (3, 3), (4, 1), (5, 4))


def gen_named(name: str, k: int) -> Matrix:
    """I_k, I'_k, J_k or J'_k.

    J_k is I_k with its first row moved below the last one; the primed
    versions are mirror images across the vertical axis.
    """
    if name not in NAMES:
        raise ValueError(f"unknown name {name!r}; expected one of {NAMES}")
    if k < 1 or (name.startswith("jk") and k < 2):
        raise ValueError(f"k={k} out of range for {name}")
    if name.startswith("identity"):
        M = Matrix.from_positions(k, k, [(i, i) for i in range(1, k + 1)])
    else:
        M = Matrix.from_positions(k, k, [(i, i + 1) for i in range(1, k)] + [(k, 1)])
    return transform(M, "reflect_vertical") if name.endswith("reflected") else M


def gen_q() -> Matrix:
    return Matrix.from_positions(5, 5, Q_POSITIONS)


def named_pattern(spec: str) -> Matrix:
    """Resolve names like ``I3``, ``Ip4``, ``J4``, ``Jp3``, ``Q``, ``Qp``, ``Qpp``, ``Q3``.

    ``Qp`` is Q without its leftmost one, ``Qpp`` the all-ones 5x5 matrix and
    ``Q3`` is Q with its third row and column deleted.
    """
    s = spec.strip()
    fixed = {
        "Q": gen_q,
        "Qp": lambda: gen_q().with_entry(4, 1, 0),
        "Qpp": lambda: Matrix.ones(5, 5),
        "Q3": lambda: gen_q().submatrix([1, 2, 4, 5], [1, 2, 4, 5]),
    }
    if s in fixed:
        return fixed[s]()
    match = re.fullmatch(r"(I|Ip|J|Jp)(\d+)", s)
    if not match:
        raise ValueError(f"unknown pattern name {spec!r}")
    kind, k = match.group(1), int(match.group(2))
    name = {"I": "identity", "Ip": "identity_reflected", "J": "jk", "Jp": "jk_reflected"}[kind]
    return gen_named(name, k)


def gen_frame(P: Matrix, m: int, n: int, pivot=None) -> Matrix:
    """All-ones bands around a chosen one of P; saturating for P.

    With the pivot at (a, b), the first a-1 and last k-a rows and the first
    b-1 and last l-b columns are filled.
    """
    k, l = P.shape
    if m < k or n < l:
        raise ValueError(f"host {m}x{n} smaller than pattern {k}x{l}")
    if pivot is None:
        ones = P.positions(1)
        if not ones:
            raise ValueError("pattern has no one to pivot on")
        pivot = ones[0]
    a, b = pivot
    if P[a, b] != 1:
        raise ValueError(f"pivot ({a},{b}) is a zero of the pattern")
    full = (1 << n) - 1
    band_cols = ((1 << (b - 1)) - 1) | (((1 << (l - b)) - 1) << (n - (l - b)))
    rows = tuple(
        full if i < a - 1 or i >= m - (k - a) else band_cols for i in range(m)
    )
    return Matrix(rows, n)


def frame_weight(k: int, l: int, m: int, n: int) -> int:
    return (k - 1) * n + (l - 1) * m - (k - 1) * (l - 1)


# staircases --------------------------------------------------------------


class StaircaseError(ValueError):
    pass


@dataclass(frozen=True)
class Staircase:
    """Monotone path from (1, n) to (m, 1).

    ``segments[i-1] = (a, b)`` is the column range the path occupies in row i.
    A position (i, j) is above the staircase iff j < a_i, below iff j > b_i.
    """

    m: int
    n: int
    positions: frozenset
    segments: tuple = field(compare=False)

    def __len__(self):
        return len(self.positions)

    def above(self, i: int, j: int) -> bool:
        return j < self.segments[i - 1][0]

    def below(self, i: int, j: int) -> bool:
        return j > self.segments[i - 1][1]


def staircase_from_positions(m: int, n: int, positions) -> Staircase:
    """Validate a position set against the staircase definition."""
    S = {tuple(p) for p in positions}
    if (1, n) not in S or (m, 1) not in S:
        raise StaircaseError("top-right and bottom-left positions must both be present")
    for i, j in S:
        if (i, j) != (1, n) and ((i - 1, j) in S) + ((i, j + 1) in S) != 1:
            raise StaircaseError(f"({i},{j}): need exactly one of above/right in the set")
        if (i, j) != (m, 1) and ((i + 1, j) in S) + ((i, j - 1) in S) != 1:
            raise StaircaseError(f"({i},{j}): need exactly one of below/left in the set")
    if len(S) != m + n - 1:
        raise StaircaseError(f"staircase has {len(S)} positions, expected {m + n - 1}")
    segments = []
    for i in range(1, m + 1):
        cols = [j for (r, j) in S if r == i]
        segments.append((min(cols), max(cols)))
    return Staircase(m, n, frozenset(Position(i, j) for i, j in S), tuple(segments))


def extremal_ones(M: Matrix) -> list[Position]:
    """Ones with no other one strictly below and to the right."""
    out = []
    # below_right[i] = union of rows strictly below i, shifted to "some one at a larger column"
    below = 0
    marks = [0] * M.nrows
    for i in range(M.nrows - 1, -1, -1):
        marks[i] = below
        below |= M.rows[i]
    for i, r in enumerate(M.rows):
        blocked = marks[i]
        for j in range(M.ncols):
            if (r >> j) & 1 and not blocked >> (j + 1):
                out.append(Position(i + 1, j + 1))
    return out


def extremal_staircase(M: Matrix) -> Staircase:
    """The extremal ones of M, validated as a staircase."""
    return staircase_from_positions(M.nrows, M.ncols, extremal_ones(M))


def below_staircase_zero(M: Matrix, S: Staircase) -> bool:
    if (S.m, S.n) != M.shape:
        raise ValueError("staircase does not match the matrix dimensions")
    for i in range(1, M.nrows + 1):
        b = S.segments[i - 1][1]
        if M.rows[i - 1] >> b:
            return False
    return True


# levels ------------------------------------------------------------------


def _chain_lengths(M: Matrix):
    """Memoised longest up-right / down-left chains of ones inside a box."""
    rows = M.rows

    @lru_cache(maxsize=None)
    def up_right(i: int, j: int, col_limit: int) -> int:
        # longest chain of ones strictly up-right of (i, j) with columns < col_limit
        best = 0
        for r in range(1, i):
            row = rows[r - 1]
            for c in range(j + 1, col_limit):
                if (row >> (c - 1)) & 1:
                    best = max(best, 1 + up_right(r, c, col_limit))
        return best

    @lru_cache(maxsize=None)
    def down_left(i: int, j: int, row_limit: int) -> int:
        # longest chain strictly down-left of (i, j) with rows <= row_limit
        best = 0
        for r in range(i + 1, row_limit + 1):
            row = rows[r - 1]
            for c in range(1, j):
                if (row >> (c - 1)) & 1:
                    best = max(best, 1 + down_left(r, c, row_limit))
        return best

    return up_right, down_left


class _Levels:
    """Level queries for one (matrix, staircase) pair."""

    def __init__(self, M: Matrix, S: Staircase):
        self.M, self.S = M, S
        self.up_right, self.down_left = _chain_lengths(M)

    def level(self, i: int, j: int) -> int:
        # ones placed in the footprint's rows above row i never share row i,
        # so forcing p to one only matters for p itself
        if not self.S.above(i, j):
            raise ValueError(f"({i},{j}) is not above the staircase")
        return 1 + self.up_right(i, j, self.S.segments[i - 1][0])

    def level_top_right(self, i: int, j: int) -> int:
        if not self.S.above(i, j):
            raise ValueError(f"({i},{j}) is not above the staircase")
        # deepest row whose staircase segment starts right of column j
        row_limit = max(r for r in range(1, self.S.m + 1) if self.S.segments[r - 1][0] > j)
        return 1 + self.down_left(i, j, row_limit)


def level_of(M: Matrix, S: Staircase, p, corner: str = "bottom_left") -> int:
    """Largest l such that M with p forced to one has an occurrence of I'_l
    lying entirely above S (zeros of the copy included) with p as its
    bottom-left one (``corner="top_right"``: its top-right one).
    """
    i, j = p
    lv = _Levels(M, S)
    if corner == "bottom_left":
        return lv.level(i, j)
    if corner == "top_right":
        return lv.level_top_right(i, j)
    raise ValueError(f"unknown corner {corner!r}")


@dataclass
class Clause:
    name: str
    passed: bool
    detail: str = ""
    experimental: bool = False


@dataclass
class LevelReport:
    k: int
    shape: tuple
    weight: int
    clauses: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses if not c.experimental)

    def failures(self) -> list:
        return [c for c in self.clauses if not c.passed]


def jk_reflected_counting_sum(k: int, m: int, n: int, per: str = "n") -> int:
    """Ones guaranteed by the staircase plus one leftmost one per level and row."""
    width = n if per == "n" else m
    return (m + n - 1) + sum(width - lv for lv in range(1, k - 1))


def verify_level_lemmas(M: Matrix, k: int) -> LevelReport:
    """Check the staircase and level structure of a matrix saturating for J'_k."""
    Jp = gen_named("jk_reflected", k)
    if not is_saturating(M, Jp):
        raise ValueError(f"matrix is not saturating for J'_{k}")
    m, n = M.shape
    clauses: list[Clause] = []

    def add(name, bad, experimental=False, ok_detail=""):
        clauses.append(Clause(name, bad is None, ok_detail if bad is None else bad, experimental))

    try:
        S = extremal_staircase(M)
    except StaircaseError as exc:
        add("staircase", str(exc))
        return LevelReport(k, M.shape, M.weight, clauses)
    add("staircase", None if len(S) == m + n - 1 else f"size {len(S)}")
    add("below_zero", None if below_staircase_zero(M, S) else "a one lies below the staircase")

    lv = _Levels(M, S)
    above = [(i, j) for i in range(1, m + 1) for j in range(1, S.segments[i - 1][0])]
    level = {p: lv.level(*p) for p in above}

    bad = next((f"one at {p} on level {level[p]}" for p in above if M[p] and level[p] > k - 2), None)
    add("i_ones_level", bad)
    bad = next((f"zero at {p} on level {level[p]}" for p in above if not M[p] and level[p] > k - 1), None)
    add("ii_zeros_level", bad)

    bad, seen = None, set()
    for i in range(1, m):
        if (i, 1) not in level:
            bad = f"first position of row {i} is not above the staircase"
            break
        got = level[(i, 1)]
        allowed = {i} if i <= k - 2 else {k - 2, k - 1}
        if got not in allowed:
            bad = f"row {i}: first position on level {got}, expected {sorted(allowed)}"
            break
        if i > k - 2:
            seen.add(got)
    add("iii_first_position", bad, ok_detail=f"deep rows used levels {sorted(seen)}" if seen else "")

    bad = None
    for i in range(1, m):
        a = S.segments[i - 1][0]
        if a > 1 and level[(i, a - 1)] != 1:
            bad = f"row {i}: last position above staircase on level {level[(i, a - 1)]}"
            break
    add("iv_last_position", bad)

    bad = None
    for (i, j) in above:
        if (i, j + 1) in level:
            lp, lq = level[(i, j)], level[(i, j + 1)]
            if not (lq <= lp <= lq + 1):
                bad = f"({i},{j}) level {lp} next to ({i},{j + 1}) level {lq}"
                break
    add("v_adjacent", bad)

    def leftmost(i, target):
        return next((j for j in range(1, S.segments[i - 1][0]) if level[(i, j)] == target), None)

    bad = None
    for target in range(1, k - 1):
        for i in range(target, m):
            j = leftmost(i, target)
            if j is None:
                bad = f"row {i} has no position on level {target}"
            elif not M[i, j]:
                bad = f"leftmost level-{target} position ({i},{j}) is a zero"
            if bad:
                break
        if bad:
            break
    add("lemma_leftmost_is_one", bad)

    for per in ("n", "m"):
        total = jk_reflected_counting_sum(k, m, n, per)
        add(
            f"counting_sum_{per}",
            None if total <= M.weight else f"sum {total} exceeds weight {M.weight}",
            ok_detail=f"{total} <= {M.weight}",
        )

    if k >= 3:
        # leftmost-per-row on level 1 versus topmost-per-column on level' k-2
        left1 = {(i, leftmost(i, 1)) for i in range(1, m) if leftmost(i, 1)}
        top = set()
        for j in range(1, n):
            for i in range(1, m + 1):
                if S.above(i, j) and lv.level_top_right(i, j) == k - 2:
                    top.add((i, j))
                    break
        common = left1 & top
        allowed = {(1, 1)} if k == 3 else set()
        add(
            "L1_disjoint_Lprime",
            None if common <= allowed else f"common entries {sorted(common)}",
            experimental=k != 3,
        )
    return LevelReport(k, M.shape, M.weight, clauses)


# lower bounds and the corner recursion -----------------------------------


def jk_lower_bound(k: int, m: int, n: int) -> int:
    """Lower bound on sat(J_k, m, n) for m, n >= k >= 2."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if m < k or n < k:
        raise ValueError(f"dimensions below k: sat(J_{k},{m},{n}) = {m * n} exactly")
    return (k - 2) * max(m, n) + m + n - 1 - (k - 2) * (k - 1) // 2


def extend_pattern(P: Matrix) -> Matrix:
    """Append a row and a column meeting in a single new one."""
    k, l = P.shape
    rows = tuple(P.rows) + (1 << l,)
    return Matrix(rows, l + 1)


def _has_corner(P: Matrix) -> bool:
    k, l = P.shape
    last_bit = 1 << (l - 1)
    return P.rows[-1] == last_bit and P.columns[-1] == 1 << (k - 1)


def extendcorner_extend(Mp: Matrix, Pp: Matrix) -> Matrix:
    """Add an all-ones last row and column to a matrix saturating for P'."""
    if not is_saturating(Mp, Pp):
        raise ValueError("input matrix is not saturating for the smaller pattern")
    m, n = Mp.shape
    full = (1 << (n + 1)) - 1
    rows = tuple(r | (1 << n) for r in Mp.rows) + (full,)
    return Matrix(rows, n + 1)


def extendcorner_reduce(M: Matrix, P: Matrix) -> Matrix:
    """Delete the extremal staircase of M and close the gap diagonally.

    ``P`` must be an extension of ``P'`` (its top-left (k-1) x (l-1) block)
    which itself ends in a lone corner one. Cells above the staircase keep
    their coordinates; cells below it (all zero) move one step up-left.
    The result is (m-1) x (n-1) and saturating for P'.
    """
    k, l = P.shape
    if k < 2 or l < 2 or not _has_corner(P):
        raise ValueError("pattern does not end in a lone corner one")
    Pp = P.submatrix(range(1, k), range(1, l))
    if Pp.all_zero or not _has_corner(Pp):
        raise ValueError("pattern is not a double-corner extension")
    if not is_saturating(M, P):
        raise ValueError("matrix is not saturating for the pattern")
    m, n = M.shape
    if m < 2 or n < 2:
        raise ValueError("matrix too small to reduce")
    S = extremal_staircase(M)
    if not below_staircase_zero(M, S):
        raise StaircaseError("ones below the extremal staircase")
    rows = []
    for i in range(1, m):
        a = S.segments[i - 1][0]
        rows.append(M.rows[i - 1] & ((1 << (a - 1)) - 1))
    out = Matrix(tuple(rows), n - 1)
    assert out.weight == M.weight - (m + n - 1)
    return out


def cor_ikik_pattern(k: int, l: int) -> Matrix:
    """Block pattern with I_{k-1} top-right and I'_{l+1} bottom-left."""
    if k < 2 or l < 0:
        raise ValueError("need k >= 2 and l >= 0")
    size = k + l
    ones = [(i, l + 1 + i) for i in range(1, k)]
    ones += [(k + t, l + 1 - t) for t in range(l + 1)]
    return Matrix.from_positions(size, size, ones)


def cor_ikik_bound(k: int, l: int, m: int, n: int) -> int:
    """Lower bound on sat for :func:`cor_ikik_pattern`, with the constant explicit.

    Mirroring the pattern gives I'_{k-1} followed by l+1 corner extensions;
    the first yields J'_k, the remaining l each add the current m+n-1.
    """
    if l < 0:
        raise ValueError("l must be non-negative")
    if m - l < k or n - l < k:
        raise ValueError(f"need m, n >= k + l = {k + l}")
    value = jk_lower_bound(k, m - l, n - l)
    for step in range(l):
        value += (m - step) + (n - step) - 1
    return value


def cor_ikik_constant(k: int, l: int, m: int, n: int) -> int:
    """The constant c with bound = (k-2)max(m,n) + (l+1)(m+n) - c."""
    return (k - 2) * max(m, n) + (l + 1) * (m + n) - cor_ikik_bound(k, l, m, n)
