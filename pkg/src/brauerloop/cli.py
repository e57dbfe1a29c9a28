"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails (a JSON
failure record goes to stderr), 2 for usage errors.  Output never depends on
``--jobs``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import affine_sym, brauer_scheme, joseph, linkpat, orbit_poset, qkz
from .errors import IdentityViolation, NonGenericError
from .linkpat import Involution, LinkPattern
from .report import Report

COMBINATORIAL_BOUND = 8
TABLE_BOUND = 6


class UsageError(Exception):
    pass


class Output:
    """What a command produced: a JSON record, text lines and the checks it ran."""

    def __init__(self, record: dict, text: list[str], report: Report | None = None, dot: str | None = None):
        self.record = {"v": 1, **record}
        self.text = text
        self.report = report
        self.dot = dot
        if report is not None:
            self.record["report"] = report.to_json()
            self.text = text + [str(report)]

    @property
    def ok(self) -> bool:
        return self.report is None or self.report.ok


# -- helpers -----------------------------------------------------------------------


def _bound(args, N: int, limit: int) -> None:
    if N < 1:
        raise UsageError("--n must be positive")
    if N > limit and not args.allow_large:
        raise UsageError(f"N={N} is above the default bound {limit}; pass --allow-large to run it anyway")


def _max_n(args, limit: int) -> int:
    return 10**6 if args.allow_large else limit


def _pattern(text: str, N: int) -> Involution:
    """Cycle notation ``(1 3)(2 4)`` or pairing form ``3,4,1,2``."""
    pi = Involution.parse(text, N)
    if pi.N != N:
        raise UsageError(f"pattern {text!r} has size {pi.N}, expected {N}")
    return pi


def _partial(text: str, N: int):
    """A pattern, or a partial map written as ``3,_,1,_`` (underscore = undefined)."""
    if "_" not in text:
        return _pattern(text, N)
    vals = [None if x.strip() == "_" else int(x) for x in text.split(",")]
    if len(vals) != N:
        raise UsageError(f"partial map {text!r} must list {N} values")
    return vals


def _seeds(text: str) -> tuple[Fraction, ...]:
    """An index into the built-in seed sets, or a comma list of rationals."""
    if text.strip().isdigit() and int(text) < len(brauer_scheme.SEED_SETS):
        return brauer_scheme.SEED_SETS[int(text)]
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad seed list {text!r}") from exc


def _checks(spec: str | None) -> tuple[str, ...]:
    if spec is None:
        return ()
    if spec == "all":
        return qkz.ALL_CHECKS
    names = tuple(x.strip() for x in spec.split(",") if x.strip())
    bad = [x for x in names if x not in qkz.ALL_CHECKS]
    if bad:
        raise UsageError(f"unknown checks {bad}; choose from {','.join(qkz.ALL_CHECKS)}")
    return names


def _table_lines(entries: dict) -> list[str]:
    return [f"{pi.cycle_str()}: {entries[pi]}" for pi in sorted(entries)]


def _filter(report: Report, prefix: str, title: str) -> Report:
    out = Report(title)
    out.results.extend(r for r in report.results if r.name.startswith(prefix))
    return out


# -- commands -----------------------------------------------------------------------


def cmd_enumerate(args) -> Output:
    _bound(args, args.n, COMBINATORIAL_BOUND)
    try:
        items = linkpat.enumerate_patterns(args.n, args.kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    strs = [p.cycle_str() for p in items]
    return Output({"kind": args.kind, "N": args.n, "count": len(strs), "items": strs}, strs)


def _solve_psi(args, N: int) -> qkz.PsiTable:
    return qkz.solve(N, jobs=args.jobs, checks=(), max_n=_max_n(args, TABLE_BOUND), cache_dir=args.cache)


def cmd_psi(args) -> Output:
    _bound(args, args.n, TABLE_BOUND)
    checks = _checks(args.verify)
    table = _solve_psi(args, args.n)
    if args.out:
        table.save(args.out)
    report = qkz.verify_table(table, checks, jobs=args.jobs) if checks else None
    return Output({"table": table.to_json()}, _table_lines(table.entries), report)


def cmd_joseph(args) -> Output:
    _bound(args, args.n, TABLE_BOUND)
    method = args.method.replace("-", "_")
    tables = {}
    if method in ("leading_form", "both") or args.cross_check:
        tables["leading_form"] = joseph.leading_form_table(_solve_psi(args, args.n))
    if method in ("melnikov", "both") or args.cross_check:
        tables["melnikov"] = joseph.melnikov_solve(args.n, jobs=args.jobs, max_n=_max_n(args, TABLE_BOUND))
    main = tables["melnikov" if method == "melnikov" else "leading_form"]
    report = Report(f"Joseph-Melnikov checks, N={args.n}")
    for name, jt in tables.items():
        report.extend(joseph.table_properties(jt), prefix=f"{name}: ")
    if args.cross_check:
        report.extend(joseph.cross_check(tables["leading_form"], tables["melnikov"]), prefix="cross-check: ")
    if args.verify:
        report.extend(joseph.hotta_checks(main), prefix="hotta: ")
    if args.out:
        main.save(args.out)
    return Output({"table": main.to_json()}, _table_lines(main.entries), report)


def cmd_poset(args) -> Output:
    _bound(args, args.n, COMBINATORIAL_BOUND)
    P = orbit_poset.build_poset(args.n, max_n=_max_n(args, COMBINATORIAL_BOUND))
    dot = orbit_poset.to_dot(P)
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
    elements = [
        {"element": p.cycle_str(), "dim": P.dim[p], "covers": [c.cycle_str() for c in sorted(P.covers[p])]}
        for p in P.elements
    ]
    text = [f"{e['element']}  dim {e['dim']}  covers {' '.join(e['covers']) or '-'}" for e in elements]
    report = orbit_poset.verify_poset(args.n, max_n=_max_n(args, COMBINATORIAL_BOUND)) if args.verify else None
    return Output({"N": args.n, "elements": elements}, text, report, dot=dot)


def cmd_check(args) -> Output:
    what, N = args.what, args.n
    notes: list[str] = []
    if what in ("ybe", "unitarity", "qkz-residual"):
        _bound(args, N, TABLE_BOUND)
        table = _solve_psi(args, N) if what == "qkz-residual" else None
        full = qkz.rmatrix_checks(N, mode=args.mode, table=table)
        prefix = {"ybe": "YBE", "unitarity": "unitarity", "qkz-residual": "qKZ residual"}[what]
        report = _filter(full, prefix, f"{what} ({args.mode}), N={N}")
        if what == "unitarity":
            report.extend(_filter(full, "R_", ""))
        if not report.results:
            raise UsageError(f"no {what} checks available in {args.mode} mode")
    elif what == "relations":
        _bound(args, N, COMBINATORIAL_BOUND)
        report = linkpat.check_brauer_relations(N, args.algebra)
    elif what == "affine":
        _bound(args, N, COMBINATORIAL_BOUND)
        report = affine_sym.stabilizer_check(N, args.max_word_len)
        report.extend(affine_sym.consistency_check(N, args.max_word_len))
    elif what == "schubert":
        _bound(args, N, 5)
        report = joseph.schubert_word_independence(N)
        if 2 * N <= TABLE_BOUND or args.allow_large:
            jt = joseph.melnikov_solve(2 * N, jobs=args.jobs, max_n=_max_n(args, TABLE_BOUND))
            report.extend(joseph.doubschub_check(jt, N))
        else:
            notes.append(f"permutation-sector comparison skipped: N={2 * N} needs --allow-large")
    elif what == "theta":
        _bound(args, N, TABLE_BOUND)
        report = qkz.theta_relations_check(N)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(what)
    return Output({"check": what, "N": N, "notes": notes}, notes, report)


def cmd_scheme(args) -> Output:
    N = args.n
    _bound(args, N, COMBINATORIAL_BOUND)
    seeds = _seeds(args.seeds)
    if args.matrix:
        M = brauer_scheme.BandMatrix.load(args.matrix)
        rho_p = None
    else:
        if args.pattern is None:
            raise UsageError("--pattern or --matrix is required")
        M, rho_p = brauer_scheme.generic_element(_partial(args.pattern, N), seeds, N)
    inside, sd = brauer_scheme.square(M)
    record = {
        "matrix": M.to_json(),
        "superdiagonal": [str(x) for x in sd],
        "inside_zero": not inside,
    }
    if rho_p is not None:
        record["promoted"] = rho_p.cycle_str()
    try:
        found = brauer_scheme.link_pattern_of(M)
        record["link_pattern"] = found.cycle_str()
    except NonGenericError as exc:
        found = None
        record["link_pattern"] = None
        record["non_generic"] = str(exc)
    text = [f"({i}, {j}) = {v}" for (i, j), v in M.entries.items()]
    text.append("superdiagonal: " + " ".join(record["superdiagonal"]))
    text.append(f"link pattern: {record['link_pattern'] or 'not generic'}")
    if args.action == "generic":
        if rho_p is not None:
            text.append(f"promoted involution: {rho_p.cycle_str()}")
        return Output(record, text)

    if args.pattern is None:
        raise UsageError("scheme check needs --pattern")
    pi = _pattern(args.pattern, N)
    if pi.fixed_points():
        raise UsageError("scheme check needs a link pattern (no fixed points)")
    pi = LinkPattern(pi.pairing)
    ranks = brauer_scheme.southwest_ranks(M)
    report = brauer_scheme.check_compeqns(M, pi, ranks)
    if not args.matrix:
        report.add("round trip recovers the pattern", found == pi)
        others = [q for q in linkpat.link_patterns(N) if q != pi]
        passing = [q.cycle_str() for q in others if brauer_scheme.check_compeqns(M, q, ranks).ok]
        report.add("fails the equations of every other pattern", not passing,
                   f"also passes {passing[0]}" if passing else f"{len(others)} other patterns rejected")
    return Output(record, text, report)


# -- parser -------------------------------------------------------------------------


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = parser.add_argument_group("global options")
    g.add_argument("--jobs", type=int, default=d(1), help="worker processes (output does not depend on it)")
    g.add_argument("--cache", default=d(None), metavar="DIR", help="reuse and store Psi tables here")
    g.add_argument("--format", choices=("text", "json", "dot"), default=d("text"))
    g.add_argument("--allow-large", action="store_true", default=d(False), help="lift the default size bounds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brauerloop", description="Brauer loop polynomials and friends.")
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _globals(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("enumerate", cmd_enumerate, "list involutions or link patterns")
    p.add_argument("kind", choices=("involutions", "link-patterns"))
    p.add_argument("--n", type=int, required=True)

    p = add("psi", cmd_psi, "compute the Psi table from the exchange equations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", metavar="all|f,e,rot,...", help="identity checks to run on the table")
    p.add_argument("--out", metavar="FILE", help="write the table as JSON")

    p = add("joseph", cmd_joseph, "compute the Joseph-Melnikov table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("leading-form", "melnikov", "both"), default="melnikov")
    p.add_argument("--cross-check", action="store_true", help="compute both methods and compare")
    p.add_argument("--verify", action="store_true", help="also run the Hotta identities")
    p.add_argument("--out", metavar="FILE")

    p = add("poset", cmd_poset, "orbit poset of involutions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dot", metavar="FILE", help="write the Hasse diagram in DOT")
    p.add_argument("--verify", action="store_true")

    p = add("check", cmd_check, "run a verification suite")
    p.add_argument("what", choices=("ybe", "unitarity", "qkz-residual", "relations", "affine", "schubert", "theta"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("sampled", "symbolic"), default="sampled")
    p.add_argument("--algebra", choices=("brauer", "affine", "degenerate"), default="brauer")
    p.add_argument("--max-word-len", type=int, default=6)

    p = add("scheme", cmd_scheme, "band matrices of the Brauer loop scheme")
    p.add_argument("action", choices=("generic", "check"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", help="involution, or partial map like 3,_,1,_")
    p.add_argument("--seeds", default="0", help="seed set index (0-2) or comma list of rationals")
    p.add_argument("--matrix", metavar="FILE", help="check a stored BandMatrix instead")
    return parser


def _emit(out: Output, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(out.record, indent=1, sort_keys=True) + "\n")
    elif fmt == "dot":
        if out.dot is None:
            raise UsageError("--format dot is only available for the poset command")
        stream.write(out.dot)
    else:
        stream.write("\n".join(out.text) + ("\n" if out.text else ""))


def _failure_record(command: str, failures: list[dict]) -> str:
    return json.dumps({"v": 1, "ok": False, "command": command, "failures": failures}, sort_keys=True)


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        stderr.write("brauerloop: --jobs must be at least 1\n")
        return 2
    try:
        out = args.func(args)
        _emit(out, args.format, stdout)
    except UsageError as exc:
        stderr.write(f"brauerloop: {exc}\n")
        return 2
    except (IdentityViolation, NonGenericError) as exc:
        stderr.write(_failure_record(args.command, [{"name": type(exc).__name__, "detail": str(exc)}]) + "\n")
        return 1
    except ValueError as exc:
        stderr.write(f"brauerloop: {exc}\n")
        return 2
    if not out.ok:
        fails = [{"name": r.name, "detail": r.detail} for r in out.report.failures()]
        stderr.write(_failure_record(args.command, fails) + "\n")
        return 1
    return 0



def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
