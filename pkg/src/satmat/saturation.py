"""Saturation predicates, greedy completion and exact sat/ssat/ex searches."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .matrix import (
    AllZeroPatternError,
    Matrix,
    Position,
    _require_pattern,
    contains,
    contains_using,
    iter_occurrences,
    occurrence_support,
)


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class Budget:
    max_nodes: int = 20_000_000
    max_seconds: float = 600.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


@dataclass
class SearchResult:
    """Outcome of an exact search.

    ``value`` is optimal when ``exhausted`` is true. Otherwise it is the best
    bound known when the budget ran out and ``lower_bound``/``upper_bound``
    bracket the true value.
    """

    kind: str
    value: int
    certificate: Matrix
    nodes_explored: int
    exhausted: bool
    lower_bound: int
    upper_bound: int
    seconds: float = field(default=0.0, compare=False)


# predicates --------------------------------------------------------------


def is_avoiding(M: Matrix, P: Matrix) -> bool:
    return not contains(M, P)


def is_saturating(M: Matrix, P: Matrix) -> bool:
    if contains(M, P):
        return False
    return all(contains_using(M, q, P) for q in M.positions(0))


def is_semisaturating(M: Matrix, P: Matrix) -> bool:
    # a new occurrence after flipping q must map a one of P onto q
    _require_pattern(P)
    return all(contains_using(M, q, P) for q in M.positions(0))


def unsaturated_positions(M: Matrix, P: Matrix) -> list[Position]:
    """Zeros whose flip does not create an occurrence through them."""
    return [q for q in M.positions(0) if not contains_using(M, q, P)]


def greedy_complete(
    M0: Matrix,
    P: Matrix,
    mask: Iterable | None = None,
    order: Sequence | None = None,
) -> Matrix:
    """Flip zeros to ones while the host stays P-free, until nothing changes.

    ``mask`` restricts the fillable positions; ``order`` overrides the
    row-major scan order (it must list positions of the mask).
    """
    if contains(M0, P):
        raise ValueError("starting matrix already contains the pattern")
    if order is None:
        allowed = None if mask is None else {tuple(p) for p in mask}
        order = [
            (i, j)
            for i in range(1, M0.nrows + 1)
            for j in range(1, M0.ncols + 1)
            if allowed is None or (i, j) in allowed
        ]
    else:
        order = [tuple(p) for p in order]
    rows = list(M0.rows)
    changed = True
    while changed:
        changed = False
        for i, j in order:
            bit = 1 << (j - 1)
            if rows[i - 1] & bit:
                continue
            M = Matrix(tuple(rows), M0.ncols)
            if not contains_using(M, (i, j), P):
                rows[i - 1] |= bit
                changed = True
    return Matrix(tuple(rows), M0.ncols)


# exact search ------------------------------------------------------------


def occurrence_edges(P: Matrix, m: int, n: int) -> list[int]:
    """Supports of all occurrences of P in an m x n host as row-major cell masks."""
    edges = set()
    for occ in iter_occurrences(Matrix.ones(m, n), P):
        e = 0
        for p in occurrence_support(occ, P):
            e |= 1 << ((p.row - 1) * n + (p.col - 1))
        edges.add(e)
    return sorted(edges)


def _rule_flags(P: Matrix) -> tuple[bool, bool]:
    every_row = all(r.bit_count() >= 2 for r in P.rows)
    every_col = all(c.bit_count() >= 2 for c in P.columns)
    return every_row, every_col


class _Search:
    """Depth-first search over cells in row-major order, zero branch first.

    With exactly ``w`` ones required, the first leaf reached is the
    lexicographically smallest feasible matrix in row-major bit order.
    """

    def __init__(self, kind: str, P: Matrix, m: int, n: int, budget: Budget):
        self.kind = kind
        self.m, self.n = m, n
        self.N = N = m * n
        self.edges = occurrence_edges(P, m, n)
        self.edges_at = [[] for _ in range(N)]
        self.edge_cells = []
        for ei, e in enumerate(self.edges):
            cells = []
            x = e
            while x:
                low = x & -x
                cells.append(low.bit_length() - 1)
                x ^= low
            for cell in cells:
                self.edges_at[cell].append(ei)
            self.edge_cells.append(cells)
        self.avoid = kind in ("sat", "ex")
        self.need_support = kind in ("sat", "ssat")
        every_row, every_col = _rule_flags(P) if kind != "ex" else (False, False)
        self.row_masks = (
            [((1 << n) - 1) << (i * n) for i in range(m)] if every_row else []
        )
        self.col_masks = (
            [sum(1 << (i * n + j) for i in range(m)) for j in range(n)] if every_col else []
        )
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.max_seconds

    def _tick(self):
        self.nodes += 1
        if self.nodes >= self.budget.max_nodes:
            raise BudgetExhausted
        if not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise BudgetExhausted

    def run_level(self, w: int) -> int | None:
        """Lexicographically first feasible matrix with exactly ``w`` ones."""
        self.w = w
        self.O = 0
        self.Z = 0
        self.zc = [0] * len(self.edges)
        self.support = [0] * self.N
        # cells covered by no zero-free edge, and edges holding exactly one zero
        self.alive = [len(at) for at in self.edges_at]
        self.dead = sum(1 << c for c in range(self.N) if not self.alive[c])
        self.single = set()
        return self._dfs(0, 0, 0)

    # sat/ssat: lower bound on ones still to be placed, cut short once above ``slack``
    def _ones_needed(self, c: int, slack: int) -> int:
        Z, O = self.Z, self.O
        U = ((1 << self.N) - 1) ^ ((1 << c) - 1)
        # undecided cells that cannot become witnessed zeros any more
        forced = U & self.dead
        need = forced.bit_count()
        if need > slack:
            return need
        for masks in (self.row_masks, self.col_masks):
            need = max(need, sum(1 for mk in masks if not mk & O))
        if need > slack:
            return need
        # each zero needs one of its single-zero edges completed; zeros whose
        # candidate cells are disjoint need separate ones
        free = U & ~forced
        best, reach = {}, {}
        edges = self.edges
        for ei in self.single:
            e = edges[ei]
            q = e & Z
            rest = e & free
            cost = rest.bit_count()
            if cost < best.get(q, self.N + 1):
                best[q] = cost
            reach[q] = reach.get(q, 0) | rest
        used = 0
        packed = 0
        for q in sorted(best, key=best.get, reverse=True):
            if not reach[q] & used:
                used |= reach[q]
                packed += best[q]
        return max(need, forced.bit_count() + packed)

    # ex: lower bound on zeros still to be placed
    def _zeros_needed(self, c: int) -> int:
        Z, O = self.Z, self.O
        used = 0
        count = 0
        for e in self.edges:
            if e & Z:
                continue
            rest = e & ~O
            if not rest & used:
                used |= rest
                count += 1
        return count

    def _dfs(self, c: int, ones: int, zeros: int):
        self._tick()
        N, w = self.N, self.w
        if c == N:
            return self.O if ones == w else None
        if ones > w or ones + (N - c) < w:
            return None
        if self.need_support:
            if self._ones_needed(c, w - ones) > w - ones:
                return None
        elif self.avoid and self._zeros_needed(c) > (N - w) - zeros:
            return None
        bit = 1 << c
        # zero branch
        if ones + (N - c - 1) >= w:
            ok = self._set_zero(c, bit)
            found = self._dfs(c + 1, ones, zeros + 1) if ok else None
            self._unset_zero(c, bit)
            if found is not None:
                return found
        # one branch
        if ones + 1 <= w:
            self.O |= bit
            ok = True
            if self.avoid:
                O = self.O
                for ei in self.edges_at[c]:
                    e = self.edges[ei]
                    if e & O == e:
                        ok = False
                        break
            found = self._dfs(c + 1, ones + 1, zeros) if ok else None
            self.O ^= bit
            if found is not None:
                return found
        return None

    def _set_zero(self, c: int, bit: int) -> bool:
        """Record a zero at ``c``; False when some zero loses its last witness edge.

        Always paired with ``_unset_zero``, even on failure.
        """
        self.Z |= bit
        if not self.need_support:
            return True
        ok = True
        Z = self.Z
        support = self.support
        for ei in self.edges_at[c]:
            z = self.zc[ei] + 1
            self.zc[ei] = z
            if z == 1:
                support[c] += 1
                self.single.add(ei)
                self._kill(ei)
            elif z == 2:
                self.single.discard(ei)
                other = (self.edges[ei] & Z) ^ bit
                q = other.bit_length() - 1
                support[q] -= 1
                if support[q] == 0:
                    ok = False
        return ok and support[c] > 0

    def _kill(self, ei: int) -> None:
        alive = self.alive
        for cell in self.edge_cells[ei]:
            alive[cell] -= 1
            if not alive[cell]:
                self.dead |= 1 << cell

    def _revive(self, ei: int) -> None:
        alive = self.alive
        for cell in self.edge_cells[ei]:
            if not alive[cell]:
                self.dead ^= 1 << cell
            alive[cell] += 1

    def _unset_zero(self, c: int, bit: int) -> None:
        if not self.Z & bit:
            return
        if self.need_support:
            Z = self.Z
            support = self.support
            for ei in self.edges_at[c]:
                z = self.zc[ei]
                if z == 1:
                    support[c] -= 1
                    self.single.discard(ei)
                    self._revive(ei)
                elif z == 2:
                    self.single.add(ei)
                    other = (self.edges[ei] & Z) ^ bit
                    support[other.bit_length() - 1] += 1
                self.zc[ei] = z - 1
        self.Z ^= bit


def _lower_bound(kind: str, P: Matrix, m: int, n: int) -> int:
    # an empty line of the host cannot be completed when every line of P has two ones
    if kind == "ex":
        return 0
    every_row, every_col = _rule_flags(P)
    lb = 0
    if every_row:
        lb = max(lb, m)
    if every_col:
        lb = max(lb, n)
    return lb


def _fallback(kind: str, P: Matrix, m: int, n: int) -> Matrix:
    """Best matrix known without search, used when the budget runs out."""
    greedy = greedy_complete(Matrix.zeros(m, n), P)
    if kind == "ex":
        return greedy
    from .constructions import gen_frame

    frame = gen_frame(P, m, n)
    return min((greedy, frame), key=lambda M: (M.weight, M.row_major_key()))


def _exact(kind: str, P: Matrix, m: int, n: int, budget: Budget | None) -> SearchResult:
    if m < 1 or n < 1:
        raise ValueError("host dimensions must be positive")
    start = time.monotonic()
    budget = budget or Budget()

    def done(value, cert, nodes=0, exhausted=True, lo=None, hi=None):
        return SearchResult(
            kind, value, cert, nodes, exhausted,
            value if lo is None else lo, value if hi is None else hi,
            time.monotonic() - start,
        )

    if P.all_zero:
        if kind == "ex":
            raise AllZeroPatternError("ex is undefined for an all-zero pattern")
        return done(0, Matrix.zeros(m, n))
    if P.nrows > m or P.ncols > n:
        return done(m * n, Matrix.ones(m, n))

    search = _Search(kind, P, m, n, budget)
    N = m * n
    if kind == "ex":
        levels = range(N, -1, -1)
    else:
        levels = range(_lower_bound(kind, P, m, n), N + 1)
    proved = levels[0]
    try:
        for w in levels:
            bits = search.run_level(w)
            if bits is not None:
                return done(w, Matrix.from_bits(m, n, bits), search.nodes)
            proved = w - 1 if kind == "ex" else w + 1
    except BudgetExhausted:
        best = _fallback(kind, P, m, n)
        if kind == "ex":
            lo, hi = best.weight, proved
        else:
            lo, hi = proved, best.weight
        return done(best.weight, best, search.nodes, False, lo, hi)
    raise AssertionError("search space exhausted without a feasible matrix")


def sat_exact(P: Matrix, m: int, n: int, budget: Budget | None = None) -> SearchResult:
    """Minimum weight of an m x n matrix saturating for P."""
    return _exact("sat", P, m, n, budget)


def ssat_exact(P: Matrix, m: int, n: int, budget: Budget | None = None) -> SearchResult:
    """Minimum weight of an m x n matrix semisaturating for P."""
    return _exact("ssat", P, m, n, budget)


def ex_exact(P: Matrix, m: int, n: int, budget: Budget | None = None) -> SearchResult:
    """Maximum weight of an m x n matrix avoiding P."""
    return _exact("ex", P, m, n, budget)

