"""Theorem-verification checks run by ``satmat verify`` and the acceptance tests.

Every check recomputes its quantities from scratch and re-validates
certificates with the predicates of :mod:`satmat.saturation`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

from .classify import (
    Verdict,
    WitnessSearchParams,
    corner_construction,
    pump,
    ssat_classify,
    witness_check,
    witness_search,
)
from .constructions import (
    below_staircase_zero,
    extendcorner_extend,
    extendcorner_reduce,
    extremal_staircase,
    frame_weight,
    gen_frame,
    gen_named,
    jk_lower_bound,
    jk_reflected_counting_sum,
    named_pattern,
    verify_level_lemmas,
)
from .matrix import Matrix
from .oracle import exhaustive
from .saturation import (
    Budget,
    ex_exact,
    is_saturating,
    is_semisaturating,
    sat_exact,
    ssat_exact,
)

SCOPES = ("all", "ik", "jk", "dichotomy", "ssat", "extendcorner", "witness")

# criterion number -> scope
CRITERIA = {
    1: "ik",
    2: "jk",
    3: "dichotomy",
    4: "jk",
    5: "extendcorner",
    6: "jk",
    7: "ssat",
    8: "ssat",
    9: "dichotomy",
    10: "witness",
    11: "dichotomy",
}

NAMED_CORPUS = ("I2", "I3", "J3", "Jp3", "J4", "Q", "Qp", "Qpp", "Q3")


@dataclass
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)
    seconds: float = 0.0


def all_patterns(k: int, l: int) -> list[Matrix]:
    return [Matrix.from_bits(k, l, bits) for bits in range(1, 1 << (k * l))]


def corpus() -> list[tuple[str, Matrix]]:
    """All non-zero 2x2 and 2x3 patterns plus the named ones."""
    out = [(f"2x2:{Matrix.row_major_key(P)}", P) for P in all_patterns(2, 2)]
    out += [(f"2x3:{Matrix.row_major_key(P)}", P) for P in all_patterns(2, 3)]
    out += [(name, named_pattern(name)) for name in NAMED_CORPUS]
    return out


def _hosts(P: Matrix, cap: int = 4) -> list[tuple[int, int]]:
    k, l = P.shape
    if max(k, l) > cap:
        return [(k, l)]
    return [(m, n) for m in range(k, cap + 1) for n in range(l, cap + 1)]


@lru_cache(maxsize=None)
def _triple(P: Matrix, m: int, n: int, nodes: int):
    budget = Budget(max_nodes=nodes, max_seconds=60.0)
    return (
        ssat_exact(P, m, n, budget),
        sat_exact(P, m, n, budget),
        ex_exact(P, m, n, budget),
    )


# individual criteria -----------------------------------------------------


def check_ik() -> list[Check]:
    bad = []
    for k in (2, 3):
        I = gen_named("identity", k)
        for m in range(k, 6):
            for n in range(k, 6):
                want = (k - 1) * (m + n - (k - 1))
                s, e = sat_exact(I, m, n), ex_exact(I, m, n)
                ok = s.exhausted and e.exhausted and s.value == e.value == want
                ok = ok and is_saturating(s.certificate, I) and e.certificate.weight == want
                if not ok:
                    bad.append(f"I_{k} {m}x{n}: sat={s.value} ex={e.value} want {want}")
    return [Check(1, "ik_exact", not bad, "; ".join(bad) or "sat = ex = (k-1)(m+n-k+1) on all 13 hosts")]


def check_j3(include_5x5: bool = True) -> list[Check]:
    J3 = gen_named("jk", 3)
    bad = []
    sizes = [(m, n) for m in (3, 4) for n in (3, 4)]
    for m, n in sizes:
        r = sat_exact(J3, m, n)
        if not (r.exhausted and r.value == 2 * (m + n - 2)):
            bad.append(f"{m}x{n}: {r.value}")
    checks = [Check(2, "j3_exact", not bad, "; ".join(bad) or "sat(J_3) = 2(m+n-2) for 3<=m,n<=4")]
    if include_5x5:
        r = sat_exact(J3, 5, 5)
        checks.append(
            Check(2, "j3_exact_5x5", r.exhausted and r.value == 16, f"sat(J_3,5,5) = {r.value}")
        )
    return checks


def check_j4_sandwich() -> list[Check]:
    J4 = gen_named("jk", 4)
    r = sat_exact(J4, 4, 4)
    lo, hi = jk_lower_bound(4, 4, 4), 3 * (4 + 4 - 3)
    ok = r.exhausted and lo == 12 and hi == 15 and lo <= r.value <= hi
    ok = ok and is_saturating(r.certificate, J4)
    return [Check(4, "j4_sandwich", ok, f"{lo} <= sat(J_4,4,4) = {r.value} <= {hi}", {"value": r.value})]


def check_staircase_levels() -> list[Check]:
    Jp3 = gen_named("jk_reflected", 3)
    bad = []
    for m in (3, 4):
        for n in (3, 4):
            r = sat_exact(Jp3, m, n)
            M = r.certificate
            S = extremal_staircase(M)
            if len(S) != m + n - 1 or not below_staircase_zero(M, S):
                bad.append(f"{m}x{n}: staircase")
            report = verify_level_lemmas(M, 3)
            if not report.passed:
                bad.append(f"{m}x{n}: " + ", ".join(c.name for c in report.failures()))
            if jk_reflected_counting_sum(3, m, n) > M.weight:
                bad.append(f"{m}x{n}: counting sum exceeds weight")
    return [Check(6, "jp3_staircase_levels", not bad, "; ".join(bad) or "all clauses pass on 4 certificates")]


def check_extendcorner() -> list[Check]:
    I2, I3 = gen_named("identity", 2), gen_named("identity", 3)
    bad_rec, bad_trip = [], []
    for m in range(3, 6):
        for n in range(3, 6):
            big = sat_exact(I3, m, n)
            small = sat_exact(I2, m - 1, n - 1)
            if big.value != small.value + m + n - 1:
                bad_rec.append(f"{m}x{n}: {big.value} vs {small.value}+{m + n - 1}")
            reduced = extendcorner_reduce(big.certificate, I3)
            if reduced.weight != big.value - (m + n - 1) or not is_saturating(reduced, I2):
                bad_trip.append(f"reduce {m}x{n}")
            grown = extendcorner_extend(small.certificate, I2)
            if grown.weight != small.value + m + n - 1 or not is_saturating(grown, I3):
                bad_trip.append(f"extend {m}x{n}")
            back = extendcorner_reduce(grown, I3)
            if back.weight != small.certificate.weight:
                bad_trip.append(f"round trip {m}x{n}")
    return [
        Check(5, "extendcorner_recursion", not bad_rec, "; ".join(bad_rec) or "sat(I_3,m,n) = sat(I_2,m-1,n-1)+m+n-1"),
        Check(5, "extendcorner_round_trip", not bad_trip, "; ".join(bad_trip) or "weights shift by m+n-1 both ways"),
    ]


def check_dichotomy_and_sandwich(nodes: int = 2_000_000) -> list[Check]:
    frame_bad, bound_bad, sandwich_bad = [], [], []
    patterns = corpus()
    terminated = 0
    for label, P in patterns:
        k, l = P.shape
        for m, n in _hosts(P) + [(k + 1, l + 1)]:
            ones = P.positions(1)
            for pivot in ones:
                F = gen_frame(P, m, n, pivot)
                if F.weight != frame_weight(k, l, m, n) or not is_saturating(F, P):
                    frame_bad.append(f"{label} {m}x{n} pivot {tuple(pivot)}")
        for m, n in _hosts(P):
            ss, s, e = _triple(P, m, n, nodes)
            if not s.exhausted:
                continue
            terminated += 1
            if s.value > frame_weight(k, l, m, n):
                bound_bad.append(f"{label} {m}x{n}: {s.value}")
            if ss.exhausted and e.exhausted and not ss.value <= s.value <= e.value:
                sandwich_bad.append(f"{label} {m}x{n}: {ss.value}/{s.value}/{e.value}")
    return [
        Check(3, "frame_saturating", not frame_bad, "; ".join(frame_bad[:5]) or f"{len(patterns)} patterns, every pivot"),
        Check(3, "sat_below_frame_bound", not bound_bad, "; ".join(bound_bad[:5]) or f"{terminated} exact values"),
        Check(9, "ssat_sat_ex_sandwich", not sandwich_bad, "; ".join(sandwich_bad[:5]) or f"{terminated} hosts"),
    ]


def check_ssat_dichotomy(max_corner_n: int = 12) -> list[Check]:
    const_bad, lin_bad, perm_bad = [], [], []
    counts = {"Constant": 0, "Linear": 0}
    for label, P in corpus():
        verdict = ssat_classify(P)
        counts[verdict.verdict.value] += 1
        k, l = P.shape
        if verdict.verdict is Verdict.CONSTANT:
            for n in range(max(k, l), max_corner_n + 1):
                C = corner_construction(P, n, n)
                if not is_semisaturating(C, P):
                    const_bad.append(f"{label} n={n}")
                    break
                if n > max(2 * k - 2, 2 * l - 2) and C.weight != (2 * k - 2) * (2 * l - 2):
                    const_bad.append(f"{label} n={n}: weight {C.weight}")
                    break
        else:
            for n in range(1, 6):
                r = ssat_exact(P, n, n)
                if not r.exhausted or r.value < n:
                    lin_bad.append(f"{label} n={n}: {r.value}")
                    break
    for name in ("I2", "I3", "I4", "J3", "J4", "J5", "Q"):
        if ssat_classify(named_pattern(name)).verdict is not Verdict.CONSTANT:
            perm_bad.append(name)
    return [
        Check(7, "ssat_constant_corner", not const_bad, "; ".join(const_bad) or f"{counts['Constant']} constant verdicts"),
        Check(7, "ssat_linear_lower", not lin_bad, "; ".join(lin_bad) or f"{counts['Linear']} linear verdicts"),
        Check(7, "ssat_permutations_constant", not perm_bad, ", ".join(perm_bad) or "I_2..I_4, J_3..J_5, Q"),
    ]


def single_one_patterns(max_side: int = 3) -> list[tuple[Matrix, tuple]]:
    out = []
    for k in range(1, max_side + 1):
        for l in range(1, max_side + 1):
            for i in range(1, k + 1):
                for j in range(1, l + 1):
                    out.append((Matrix.from_positions(k, l, [(i, j)]), (i, j)))
    return out


def check_single_one() -> list[Check]:
    bad = []
    total = 0
    for P, pos in single_one_patterns():
        k, l = P.shape
        for m in range(k, 5):
            for n in range(l, 5):
                want = frame_weight(k, l, m, n)
                s, ss = sat_exact(P, m, n), ssat_exact(P, m, n)
                total += 1
                if not (s.value == ss.value == want):
                    bad.append(f"{k}x{l}@{pos} host {m}x{n}: sat={s.value} ssat={ss.value} want {want}")
    return [Check(8, "single_one_formula", not bad, "; ".join(bad[:5]) or f"{total} (pattern, host) pairs")]


def check_witness(q_seconds: float = 600.0, seed: int = 0) -> list[Check]:
    I1 = gen_named("identity", 1)
    bad = []
    for m in range(1, 5):
        for n in range(1, 5):
            Z = Matrix.zeros(m, n)
            try:
                W = witness_check(Z, I1)
            except ValueError as exc:
                bad.append(f"{m}x{n}: {exc}")
                continue
            for t in (1, 2, 5):
                pumped = pump(W, t)
                if pumped.shape != (m + t, n + t) or pumped.weight or not is_saturating(pumped, I1):
                    bad.append(f"{m}x{n} t={t}")
    checks = [Check(10, "witness_i1_pump", not bad, "; ".join(bad) or "all-zero hosts up to 4x4, t in {1,2,5}")]

    I2 = gen_named("identity", 2)
    none = witness_search(I2, WitnessSearchParams(seed=seed, budget=Budget(10_000, 120.0)))
    checks.append(Check(10, "witness_search_i2_none", none is None, "no witness found" if none is None else "unexpected witness"))

    Q = named_pattern("Q")
    start = time.monotonic()
    W = witness_search(Q, WitnessSearchParams(seed=seed, budget=Budget(10_000, q_seconds)))
    if W is None:
        checks.append(
            Check(10, "witness_search_q", True, "search exhausted its budget (recorded, not a failure)",
                  {"outcome": "exhausted"}, time.monotonic() - start)
        )
    else:
        ok = W.matrix.weight < 400
        for t in (1, 2, 5):
            P_t = pump(W, t)
            ok = ok and P_t.weight == W.matrix.weight and is_saturating(P_t, Q)
        checks.append(
            Check(10, "witness_search_q", ok,
                  f"{W.matrix.nrows}x{W.matrix.ncols} witness of weight {W.matrix.weight}",
                  {"outcome": "found", "weight": W.matrix.weight,
                   "certificate": str(W.matrix).split("\n")}, time.monotonic() - start)
        )
    return checks


def check_oracle() -> list[Check]:
    bad = []
    total = 0
    shapes = [(m, n) for m in range(1, 13) for n in range(1, 13) if m * n <= 12]
    for k in range(1, 5):
        for l in range(1, 5):
            if k * l > 4:
                continue
            for P in all_patterns(k, l):
                for m, n in shapes:
                    ref = exhaustive(P, m, n)
                    for kind, fn in (("sat", sat_exact), ("ssat", ssat_exact), ("ex", ex_exact)):
                        r = fn(P, m, n)
                        total += 1
                        if (r.value, r.certificate) != ref[kind]:
                            bad.append(f"{kind} {P.row_major_key()} ({k}x{l}) {m}x{n}")
    return [Check(11, "oracle_equivalence", not bad, "; ".join(bad[:5]) or f"{total} searches match enumeration")]


RUNNERS = {
    1: check_ik,
    2: check_j3,
    3: check_dichotomy_and_sandwich,
    4: check_j4_sandwich,
    5: check_extendcorner,
    6: check_staircase_levels,
    7: check_ssat_dichotomy,
    8: check_single_one,
    10: check_witness,
    11: check_oracle,
}


def run_scope(scope: str = "all", q_seconds: float = 600.0, seed: int = 0) -> list[Check]:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; expected one of {SCOPES}")
    wanted = {c for c, s in CRITERIA.items() if scope in ("all", s)}
    checks: list[Check] = []
    # criteria 3 and 9 share one runner
    for criterion, runner in RUNNERS.items():
        if criterion not in wanted and not (criterion == 3 and 9 in wanted):
            continue
        start = time.monotonic()
        if criterion == 10:
            got = runner(q_seconds=q_seconds, seed=seed)
        else:
            got = runner()
        elapsed = time.monotonic() - start
        for c in got:
            if not c.seconds:
                c.seconds = elapsed / len(got)
        checks.extend(got)
    return checks
