"""Command-line front end: ``simcon <subcommand> ...``.

Exit codes: 0 success, 1 bad input, 2 budget exhausted (partial output is
marked inexact), 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import List, Optional, Sequence

from simcon import bounds as B
from simcon.congruence import (
    ResourceBudgetError,
    distinguishing_subword,
    minimal_representative,
    subwords_up_to,
)
from simcon.enumeration import (
    EnumerationConfig,
    EnumerationError,
    FingerprintCollisionError,
    count_classes,
    default_workers,
    dump_representatives,
)
from simcon.properties import SUITES, run_suites
from simcon.richness import rich_factorization, richness
from simcon.words import MAX_TEXT_LETTERS, Word, WordError, format_word, parse_word

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: $SIMCON_THREADS or CPU count)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--memory-mb", type=int, default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="simcon", description="Computations with Simon's congruence ~n.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="compute C_k(n) exactly")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "fingerprint"), default="exact")
    p.add_argument("--max-length", type=int, default=None)
    p.add_argument("--cross-check", action="store_true",
                   help="confirm fingerprint hits against exact keys")
    p.add_argument("--timings", action="store_true", help="include duration in JSON")
    p.add_argument("--emit-reps", metavar="FILE", default=None)

    p = sub.add_parser("equiv", parents=[common], help="decide x ~n y")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("subwords", parents=[common], help="subwords up to length n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("x")

    p = sub.add_parser("minimal", parents=[common], help="minimal representative")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("x")

    for name in ("richness", "factorize"):
        p = sub.add_parser(name, parents=[common], help=f"{name} of a word")
        p.add_argument("-k", type=int, required=True)
        p.add_argument("x")

    p = sub.add_parser("bounds", parents=[common], help="evaluate the bounds on C_k(n)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--which", choices=B.WHICH, default="all")
    p.add_argument("--compute", action="store_true",
                   help="compute C_k(n) with the engine when the table lacks it")

    p = sub.add_parser("table", parents=[common], help="recompute published table cells as CSV")
    p.add_argument("--max-classes", type=int, default=2_500_000,
                   help="skip cells whose known value exceeds this")

    p = sub.add_parser("verify", parents=[common], help="randomized property suites")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--suite", action="append", choices=sorted(SUITES), default=None)
    return parser


def _words(args, *texts: str) -> List[Word]:
    k = args.k if args.k is not None else MAX_TEXT_LETTERS
    return [parse_word(t, k) for t in texts]


def _threads(args) -> int:
    n = args.threads if args.threads is not None else default_workers()
    if n < 1:
        raise UsageError("--threads must be >= 1")
    return n


def _config(args, k: int, n: int, **extra) -> EnumerationConfig:
    kwargs = dict(worker_count=_threads(args), time_budget=args.budget_seconds, **extra)
    if args.memory_mb is not None:
        kwargs["memory_budget"] = args.memory_mb * 2**20
    try:
        return EnumerationConfig(k, n, **kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, out, payload, text: str) -> None:
    if args.json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def cmd_count(args, out) -> int:
    cfg = _config(args, args.k, args.n, mode=args.mode, max_length=args.max_length,
                  cross_check=args.cross_check)
    groups = []
    report = count_classes(cfg, on_generation=(lambda l, ws: groups.append((l, ws)))
                           if args.emit_reps else None)
    if args.emit_reps:
        with open(args.emit_reps, "w", encoding="ascii") as fh:
            dump_representatives(groups, fh)
    data = report.to_json()
    if not args.timings:
        # keep JSON identical across runs and thread counts
        data.pop("duration")
        data.pop("worker_count")
    if report.exact:
        text = str(report.total_classes)
    else:
        text = f">= {report.total_classes} (inexact: {report.termination})"
    _emit(args, out, data, text)
    return EXIT_OK if report.exact else EXIT_BUDGET


def cmd_equiv(args, out) -> int:
    x, y = _words(args, args.x, args.y)
    witness = distinguishing_subword(x, y, args.n)
    if witness is None:
        _emit(args, out, {"n": args.n, "equivalent": True, "witness": None}, "equivalent")
    else:
        w = format_word(witness)
        _emit(args, out, {"n": args.n, "equivalent": False, "witness": w},
              f"distinguished by: {w}")
    return EXIT_OK


def cmd_subwords(args, out) -> int:
    (x,) = _words(args, args.x)
    members = [format_word(u) for u in subwords_up_to(x, args.n).sorted()]
    _emit(args, out, {"n": args.n, "subwords": members}, "\n".join(members))
    return EXIT_OK


def cmd_minimal(args, out) -> int:
    (x,) = _words(args, args.x)
    rep = minimal_representative(x, args.n)
    already = rep == x
    flag = "already minimal" if already else "input not minimal"
    _emit(args, out, {"n": args.n, "representative": format_word(rep), "minimal": already},
          f"{format_word(rep)}\t({flag})")
    return EXIT_OK


def cmd_richness(args, out) -> int:
    (x,) = _words(args, args.x)
    r = richness(x, args.k)
    _emit(args, out, {"k": args.k, "richness": r}, str(r))
    return EXIT_OK


def cmd_factorize(args, out) -> int:
    (x,) = _words(args, args.x)
    fac = rich_factorization(x, args.k)
    _emit(args, out, fac.to_json(), fac.render())
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    table = B.CountTable.published()
    status = EXIT_OK
    if args.compute and table.exact(args.k, args.n) is None:
        report = count_classes(_config(args, args.k, args.n))
        table = table.with_computed(report)
        if not report.exact:
            status = EXIT_BUDGET
    reports = B.bounds_for(args.k, args.n, table, args.which)
    if args.json:
        out.write(json.dumps([r.to_json() for r in reports], sort_keys=True) + "\n")
    else:
        out.write(B.format_reports(reports) + "\n")
    if any(r.satisfied == B.VIOLATED for r in reports):
        return EXIT_INTERNAL
    return status


def cmd_table(args, out) -> int:
    rows = []
    status = EXIT_OK
    for (k, n), entry in sorted(B.PUBLISHED_TABLE.items()):
        row = {"k": k, "n": n, "published": entry.value,
               "published_exactness": "exact" if entry.exact else "lower-bound",
               "computed": "", "termination": "", "status": "skipped"}
        if entry.exact and entry.value <= args.max_classes:
            report = count_classes(_config(args, k, n))
            row["computed"] = report.total_classes
            row["termination"] = report.termination
            if report.exact:
                row["status"] = "match" if report.total_classes == entry.value else "mismatch"
            else:
                row["status"] = "inexact" if report.total_classes <= entry.value else "mismatch"
                status = max(status, EXIT_BUDGET)
            if row["status"] == "mismatch":
                status = EXIT_INTERNAL
        rows.append(row)
    if args.json:
        out.write(json.dumps(rows, sort_keys=True, default=str) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    return status


def cmd_verify(args, out) -> int:
    results = run_suites(args.seed, args.samples, args.max_len, args.suite)
    if args.json:
        out.write(json.dumps([{"suite": r.name, "samples": r.samples, "passed": r.passed,
                               "counterexamples": r.counterexamples[:10]} for r in results],
                             sort_keys=True) + "\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_INTERNAL


COMMANDS = {
    "count": cmd_count,
    "equiv": cmd_equiv,
    "subwords": cmd_subwords,
    "minimal": cmd_minimal,
    "richness": cmd_richness,
    "factorize": cmd_factorize,
    "bounds": cmd_bounds,
    "table": cmd_table,
    "verify": cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        for flag in ("k", "n"):
            value = getattr(args, flag, None)
            if value is not None and value < (1 if flag == "k" else 0):
                raise UsageError(f"-{flag} out of range: {value}")
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            stream=err, format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_INPUT
    except WordError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ResourceBudgetError as exc:
        err.write(f"budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except FingerprintCollisionError as exc:
        err.write(f"invariant violation: {exc}\n")
        return EXIT_INTERNAL
    except EnumerationError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
