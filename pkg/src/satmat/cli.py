"""Command-line front end.

Patterns and matrices are read from files in the text format of
:func:`satmat.matrix.parse_matrix`. ``--pattern`` also accepts a built-in
name prefixed with ``@`` (``@I3``, ``@Jp4``, ``@Q`` ...).

Exit status: 0 for a definitive answer, 2 when a budget ran out or a search
was inconclusive, 1 for input errors. A report is printed in every case.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from .classify import (
    Classification,
    Verdict,
    WitnessCertificate,
    WitnessError,
    WitnessSearchParams,
    corner_construction,
    default_workers,
    pump,
    sat_classify,
    ssat_classify,
    ssat_properties,
    witness_check,
    witness_search,
)
from .constructions import (
    NAMES,
    below_staircase_zero,
    extend_pattern,
    extendcorner_extend,
    extendcorner_reduce,
    extremal_ones,
    extremal_staircase,
    gen_frame,
    gen_named,
    named_pattern,
    verify_level_lemmas,
)
from .matrix import (
    Matrix,
    MatrixFormatError,
    contains,
    enumerate_occurrences,
    find_occurrence,
    parse_matrix,
    serialize_matrix,
)
from .saturation import (
    Budget,
    ex_exact,
    is_saturating,
    is_semisaturating,
    sat_exact,
    ssat_exact,
)

COMMANDS = (
    "contains", "occurrences", "sat", "ssat", "ex", "classify", "ssat-classify",
    "construct", "staircase", "levels", "witness-check", "witness-search",
    "pump", "extend", "reduce", "verify",
)

CONSTRUCT_NAMES = NAMES + ("Q", "Qp", "Qpp", "Q3", "frame", "corner")

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _rows(M: Matrix) -> list[str]:
    return serialize_matrix(M).split("\n")


def _digest(M: Matrix) -> str:
    return hashlib.sha256(serialize_matrix(M).encode()).hexdigest()[:16]


def _describe(M: Matrix, source: str) -> dict:
    return {"source": source, "shape": list(M.shape), "weight": M.weight, "digest": _digest(M)}


def _read_matrix(source: str, what: str) -> Matrix:
    if source.startswith("@"):
        try:
            return named_pattern(source[1:])
        except ValueError as exc:
            raise InputError(f"{what} {source}: {exc}") from None
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{what} file {source}: {exc.strerror}") from None
    try:
        return parse_matrix(text)
    except MatrixFormatError as exc:
        raise InputError(f"{what} file {source}: {exc}") from None


class Report:
    def __init__(self, argv: list[str]):
        self.command = argv
        self.inputs: dict = {}
        self.results: dict = {}
        self.checks: list = []
        self.timing: dict = {}
        self.budget: dict = {}
        self.status = EXIT_OK
        self.text: list[str] = []
        self.raw_text: str | None = None

    def check(self, name: str, passed: bool, detail: str = ""):
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    def as_json(self) -> str:
        body = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": self.checks,
            "timing": self.timing,
            "budget": self.budget,
        }
        return json.dumps(body, indent=2, sort_keys=True)

    def as_text(self) -> str:
        if self.raw_text is not None:
            return self.raw_text
        lines = list(self.text)
        for c in self.checks:
            mark = "PASS" if c["passed"] else "FAIL"
            lines.append(f"[{mark}] {c['name']}" + (f": {c['detail']}" if c["detail"] else ""))
        if self.budget:
            lines.append(f"budget: {json.dumps(self.budget, sort_keys=True)}")
        return "\n".join(lines)


# argument handling ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pattern", metavar="FILE", help="pattern file or @NAME")
    common.add_argument("--matrix", metavar="FILE", help="host matrix file")
    common.add_argument("--rows", type=int, metavar="M")
    common.add_argument("--cols", type=int, metavar="N")
    common.add_argument("--k", type=int, metavar="K")
    common.add_argument("--budget-nodes", type=int, metavar="N", default=20_000_000)
    common.add_argument("--budget-seconds", type=float, metavar="S", default=600.0)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="FILE")

    parser = _Parser(prog="satmat", description="Saturation problems for 0-1 matrix patterns.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "occurrences":
            p.add_argument("--limit", type=int, default=100)
        elif name == "pump":
            p.add_argument("--t", type=int, default=1)
        elif name == "construct":
            p.add_argument("name", choices=CONSTRUCT_NAMES)
        elif name == "verify":
            from .verify import SCOPES

            p.add_argument("scope", nargs="?", default="all", choices=SCOPES)
    return parser


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for {args.command}")


def _pattern(args, report: Report) -> Matrix:
    _need(args, "pattern")
    P = _read_matrix(args.pattern, "pattern")
    if P.all_zero:
        raise InputError(f"pattern {args.pattern} is all zeros")
    report.inputs["pattern"] = _describe(P, args.pattern)
    return P


def _matrix(args, report: Report) -> Matrix:
    _need(args, "matrix")
    M = _read_matrix(args.matrix, "matrix")
    report.inputs["matrix"] = _describe(M, args.matrix)
    return M


def _dims(args, report: Report) -> tuple[int, int]:
    _need(args, "rows", "cols")
    if args.rows < 1 or args.cols < 1:
        raise InputError("--rows and --cols must be positive")
    report.inputs["rows"], report.inputs["cols"] = args.rows, args.cols
    return args.rows, args.cols


def _budget(args, report: Report) -> Budget:
    try:
        budget = Budget(args.budget_nodes, args.budget_seconds)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report.budget = {"max_nodes": budget.max_nodes, "max_seconds": budget.max_seconds}
    return budget


def _witness_fields(W: WitnessCertificate) -> dict:
    return {
        "certificate": _rows(W.matrix),
        "weight": W.matrix.weight,
        "empty_row_block": list(W.empty_row_block),
        "empty_col_block": list(W.empty_col_block),
        "s_rows": W.s_rows,
        "s_cols": W.s_cols,
    }


# commands ------------------------------------------------------------------


def cmd_contains(args, report):
    P, M = _pattern(args, report), _matrix(args, report)
    occ = find_occurrence(M, P)
    report.results = {
        "contains": occ is not None,
        "occurrence": None if occ is None else {"rows": list(occ.rows), "cols": list(occ.cols)},
    }
    report.check("agrees_with_contains", contains(M, P) == (occ is not None))
    report.text.append(f"contains: {'yes' if occ else 'no'}")
    if occ:
        report.text.append(f"rows {list(occ.rows)} cols {list(occ.cols)}")


def cmd_occurrences(args, report):
    P, M = _pattern(args, report), _matrix(args, report)
    if args.limit < 1:
        raise InputError("--limit must be positive")
    occs, total = enumerate_occurrences(M, P, args.limit)
    report.results = {
        "count": total,
        "truncated": total is None,
        "occurrences": [{"rows": list(o.rows), "cols": list(o.cols)} for o in occs],
    }
    report.text.append(f"count: {total if total is not None else f'more than {args.limit}'}")
    report.text += [f"rows {list(o.rows)} cols {list(o.cols)}" for o in occs]


def cmd_extremal(args, report):
    P = _pattern(args, report)
    m, n = _dims(args, report)
    budget = _budget(args, report)
    fn = {"sat": sat_exact, "ssat": ssat_exact, "ex": ex_exact}[args.command]
    r = fn(P, m, n, budget)
    report.results = {
        "value": r.value,
        "certificate": _rows(r.certificate),
        "optimal": r.exhausted,
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "nodes_explored": r.nodes_explored,
    }
    report.timing["search_seconds"] = round(r.seconds, 6)
    report.budget["exhausted"] = not r.exhausted
    pred = {"sat": is_saturating, "ssat": is_semisaturating, "ex": lambda M, P: not contains(M, P)}
    report.check("certificate_valid", pred[args.command](r.certificate, P))
    report.check("certificate_weight", r.certificate.weight == r.value)
    if r.exhausted:
        report.text.append(f"{args.command}: {r.value}")
    else:
        report.text.append(f"{args.command}: inconclusive, {r.lower_bound} <= value <= {r.upper_bound}")
        report.status = EXIT_INCONCLUSIVE
    report.text.append(serialize_matrix(r.certificate))


def _classification_fields(c: Classification) -> dict:
    out = {"verdict": c.verdict.value, "rule": c.rule, "details": c.details}
    cert = c.certificate
    if isinstance(cert, WitnessCertificate):
        out["witness"] = _witness_fields(cert)
    elif cert is not None:
        out["certificate"] = list(cert) if isinstance(cert, tuple) else cert
    return out


def cmd_classify(args, report):
    P = _pattern(args, report)
    budget = _budget(args, report)
    params = WitnessSearchParams(seed=args.seed, budget=Budget(10_000, budget.max_seconds))
    c = sat_classify(P, budget=budget, witness_params=params)
    report.results = _classification_fields(c)
    report.text.append(f"verdict: {c.verdict.value} ({c.rule})")
    if isinstance(c.certificate, WitnessCertificate):
        report.check("witness_revalidated", _revalidate(c.certificate, P))
        report.text.append(serialize_matrix(c.certificate.matrix))
    if c.verdict is Verdict.UNKNOWN:
        report.budget["exhausted"] = True
        report.status = EXIT_INCONCLUSIVE


def _revalidate(W: WitnessCertificate, P: Matrix) -> bool:
    try:
        witness_check(W.matrix, P)
    except WitnessError:
        return False
    return all(is_saturating(pump(W, t), P) for t in (1, 2))


def cmd_ssat_classify(args, report):
    P = _pattern(args, report)
    c = ssat_classify(P)
    report.results = _classification_fields(c)
    report.results["properties"] = list(ssat_properties(P))
    report.text.append(f"verdict: {c.verdict.value} ({c.rule})")


def cmd_construct(args, report):
    name = args.name
    if name in NAMES:
        _need(args, "k")
        if args.k < 1:
            raise InputError("--k must be positive")
        M = gen_named(name, args.k)
        report.inputs["k"] = args.k
    elif name in ("frame", "corner"):
        P = _pattern(args, report)
        m, n = _dims(args, report)
        if name == "frame":
            M = gen_frame(P, m, n)
            report.check("saturating", is_saturating(M, P))
        else:
            try:
                M = corner_construction(P, m, n)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            report.check("semisaturating", is_semisaturating(M, P))
    else:
        M = named_pattern(name)
    report.inputs["name"] = name
    report.results = {"matrix": _rows(M), "shape": list(M.shape), "weight": M.weight}
    report.raw_text = serialize_matrix(M)


def cmd_staircase(args, report):
    M = _matrix(args, report)
    try:
        S = extremal_staircase(M)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    ones = extremal_ones(M)
    report.results = {
        "extremal_ones": [list(p) for p in ones],
        "positions": [list(p) for p in S.positions],
        "segments": [list(seg) for seg in S.segments],
        "length": len(S.positions),
        "below_all_zero": below_staircase_zero(M, S),
    }
    report.text.append(f"staircase of length {len(S.positions)}")
    report.text.append("segments: " + " ".join(f"{a}-{b}" for a, b in S.segments))
    report.text.append(f"below region all zero: {below_staircase_zero(M, S)}")


def cmd_levels(args, report):
    M = _matrix(args, report)
    _need(args, "k")
    report.inputs["k"] = args.k
    try:
        rep = verify_level_lemmas(M, args.k)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for c in rep.clauses:
        name = c.name + (" (experimental)" if c.experimental else "")
        report.check(name, c.passed, c.detail)
    report.results = {"passed": rep.passed, "weight": rep.weight}
    report.text.append(f"level clauses for k={args.k}: {'all pass' if rep.passed else 'failures'}")


def cmd_witness_check(args, report):
    P, M = _pattern(args, report), _matrix(args, report)
    try:
        W = witness_check(M, P)
    except WitnessError as exc:
        report.results = {"valid": False, "reason": exc.reason, "message": str(exc)}
        report.text.append(f"not a witness: {exc}")
        return
    report.results = {"valid": True, **_witness_fields(W)}
    report.text.append(f"witness: empty rows {W.empty_row_block}, empty columns {W.empty_col_block}")


def cmd_witness_search(args, report):
    P = _pattern(args, report)
    budget = _budget(args, report)
    try:
        workers = default_workers()
    except ValueError as exc:
        raise InputError(str(exc)) from None
    start = time.monotonic()
    W = witness_search(P, WitnessSearchParams(seed=args.seed, budget=budget, workers=workers))
    report.timing["search_seconds"] = round(time.monotonic() - start, 6)
    report.inputs["seed"] = args.seed
    if W is None:
        report.results = {"found": False}
        report.budget["exhausted"] = True
        report.text.append("no witness found")
        report.status = EXIT_INCONCLUSIVE
        return
    report.results = {"found": True, **_witness_fields(W)}
    report.check("witness_revalidated", _revalidate(W, P))
    report.text.append(f"witness of weight {W.matrix.weight}")
    report.text.append(serialize_matrix(W.matrix))


def cmd_pump(args, report):
    P, M = _pattern(args, report), _matrix(args, report)
    if args.t < 0:
        raise InputError("--t must be non-negative")
    try:
        W = witness_check(M, P)
    except WitnessError as exc:
        raise InputError(f"matrix {args.matrix} is not a witness: {exc}") from None
    out = pump(W, args.t)
    report.inputs["t"] = args.t
    report.check("saturating", is_saturating(out, P))
    report.results = {"matrix": _rows(out), "shape": list(out.shape), "weight": out.weight}
    report.raw_text = serialize_matrix(out)


def cmd_extend(args, report):
    Pp, Mp = _pattern(args, report), _matrix(args, report)
    if not is_saturating(Mp, Pp):
        raise InputError(f"matrix {args.matrix} is not saturating for the pattern")
    M = extendcorner_extend(Mp, Pp)
    P = extend_pattern(Pp)
    report.check("saturating", is_saturating(M, P))
    report.results = {
        "matrix": _rows(M), "pattern": _rows(P), "shape": list(M.shape), "weight": M.weight,
    }
    report.raw_text = serialize_matrix(M)


def cmd_reduce(args, report):
    P, M = _pattern(args, report), _matrix(args, report)
    try:
        Mp = extendcorner_reduce(M, P)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report.results = {"matrix": _rows(Mp), "shape": list(Mp.shape), "weight": Mp.weight}
    report.raw_text = serialize_matrix(Mp)


def cmd_verify(args, report):
    from .verify import run_scope

    report.inputs["scope"] = args.scope
    report.inputs["seed"] = args.seed
    checks = run_scope(args.scope, q_seconds=args.budget_seconds, seed=args.seed)
    for c in checks:
        report.checks.append(
            {"criterion": c.criterion, "name": c.name, "passed": c.passed, "detail": c.detail}
        )
        report.timing[c.name] = round(c.seconds, 3)
        if c.data:
            report.results[c.name] = c.data
    passed = all(c.passed for c in checks)
    report.results["passed"] = passed
    report.results["counts"] = {"total": len(checks), "failed": sum(not c.passed for c in checks)}
    report.text.append(f"verify {args.scope}: {'all checks pass' if passed else 'FAILURES'}")
    if not passed:
        report.status = EXIT_INPUT


HANDLERS = {
    "contains": cmd_contains,
    "occurrences": cmd_occurrences,
    "sat": cmd_extremal,
    "ssat": cmd_extremal,
    "ex": cmd_extremal,
    "classify": cmd_classify,
    "ssat-classify": cmd_ssat_classify,
    "construct": cmd_construct,
    "staircase": cmd_staircase,
    "levels": cmd_levels,
    "witness-check": cmd_witness_check,
    "witness-search": cmd_witness_search,
    "pump": cmd_pump,
    "extend": cmd_extend,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
}


def _emit(report: Report, fmt: str, out: str | None) -> None:
    body = report.as_json() if fmt == "json" else report.as_text()
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(body + "\n")
            return
        except OSError as exc:
            print(f"error: cannot write {out}: {exc.strerror}", file=sys.stderr)
            report.status = EXIT_INPUT
    print(body)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if "json" in argv and "--format" in argv else "text"
    report = Report(argv)
    out = None
    start = time.monotonic()
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise InputError("missing subcommand; choose one of " + ", ".join(COMMANDS))
        fmt, out = args.format, args.out
        HANDLERS[args.command](args, report)
    except InputError as exc:
        report.results = {"error": str(exc)}
        report.raw_text = None
        report.text = [f"error: {exc}"]
        report.status = EXIT_INPUT
        print(f"error: {exc}", file=sys.stderr)
    report.timing["total_seconds"] = round(time.monotonic() - start, 6)
    _emit(report, fmt, out)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
