"""Command-line interface: ``patavoid <command> ...`` (or ``python -m patavoid``).

Every command prints one ``key: value`` document on stdout. Exit status is
0 on success, 1 on error and 2 when a budget ran out before an answer.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from ._backend import BACKEND
from .bounds import dyck_count, gamma_upper, gbar, gbar_below, gbar_core, partial_dyck_count, round_rational
from .errors import PatavoidError
from .occurrence import as_word, find_suffix_occurrences, format_word
from .ogf import g4_sweep
from .pattern import balanced_factor_span, classify, parse_pattern, reduce_doubled
from .search import backtrack_avoid
from .simulate import RecordDocument, decode, read_record, simulate_until, verify_record, write_record

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


def emit(command: str, fields: dict) -> str:
    lines = [f"command: {command}"]
    lines += [f"{key}: {value}" for key, value in fields.items()]
    return "\n".join(lines) + "\n"


def _yes(flag: bool) -> str:
    return "true" if flag else "false"


def cmd_analyze(args) -> tuple[dict, int]:
    p = parse_pattern(args.pattern)
    cls = classify(p)
    out = {
        "pattern": p.text,
        "k": cls.k,
        "length": len(p),
        "variables": "".join(p.variables),
        "multiplicities": " ".join(f"{v}:{a}" for v, a in zip(p.variables, p.multiplicities)),
        "doubled": _yes(cls.doubled),
        "balanced": _yes(cls.balanced),
        "q_k": cls.q_k,
    }
    for f in (2, 3):
        try:
            start, end = balanced_factor_span(p, f)
            out[f"balanced_factor_f{f}"] = f"{p.text[start:end]} (positions {start + 1}..{end})"
        except PatavoidError as exc:
            out[f"balanced_factor_f{f}"] = f"n/a ({exc})"
    if cls.doubled:
        try:
            out["reduced"] = reduce_doubled(p).text
        except PatavoidError as exc:
            out["reduced"] = f"n/a ({exc})"
    else:
        out["reduced"] = "n/a (pattern is not doubled)"
    return out, EXIT_OK


def cmd_occurrences(args) -> tuple[dict, int]:
    p = parse_pattern(args.pattern)
    w = as_word(args.word)
    found = find_suffix_occurrences(w, p)
    out = {"pattern": p.text, "word": format_word(w), "count": len(found)}
    for i, occ in enumerate(found, start=1):
        out[f"occurrence_{i}"] = f"length {occ.total_length} lengths {list(occ.lengths)} {occ}"
    return out, EXIT_OK


def cmd_simulate(args) -> tuple[dict, int]:
    outcome = simulate_until(
        args.pattern, args.sigma, args.target, args.seed, args.max_steps, check_every=args.check_every
    )
    decoded = decode(outcome.record, outcome.word, outcome.pattern, outcome.sigma)
    roundtrip = decoded == outcome.letters
    violations = verify_record(outcome.record, outcome.pattern)
    trace = outcome.trace
    out = {
        "pattern": outcome.pattern.text,
        "sigma": args.sigma,
        "seed": args.seed,
        "target": args.target,
        "max_steps": args.max_steps,
        "outcome": "reached" if outcome.reached else "budget_exhausted",
        "steps": trace.steps,
        "erasures": trace.erasure_count,
        "erased_letters": sum(trace.erased_lengths),
        "final_length": trace.final_word_length,
        "max_length_seen": outcome.max_length_seen,
        "record_violations": len(violations),
        "roundtrip": "ok" if roundtrip else "FAILED",
    }
    if args.show_word:
        out["final_word"] = format_word(outcome.word)
    if args.emit_record:
        doc = RecordDocument(outcome.pattern, args.sigma, outcome.record, outcome.word, args.seed)
        write_record(args.emit_record, doc)
        out["record"] = args.emit_record
    if not roundtrip or violations:
        return out, EXIT_ERROR
    return out, EXIT_OK if outcome.reached else EXIT_INCONCLUSIVE


def cmd_decode(args) -> tuple[dict, int]:
    doc = read_record(args.record)
    V = doc.decode()
    out = {
        "pattern": doc.pattern.text,
        "sigma": doc.sigma,
        "t": doc.t,
        "erasures": len(doc.record.L),
        "V": format_word(V),
    }
    return out, EXIT_OK


def cmd_gamma(args) -> tuple[dict, int]:
    eps = Fraction(args.eps)
    bound = gamma_upper(args.d, eps)
    upper = bound.upper_decimal(args.digits)
    out = {
        "d": args.d,
        "tau_lo": f"{round_rational(bound.tau_lo, 15, up=False)} (rounded down)",
        "tau_hi": f"{round_rational(bound.tau_hi, 15, up=True)} (rounded up)",
        "x_star": f"{bound.x_star.numerator}/{bound.x_star.denominator}",
        "upper": f"{upper} (rounded up)",
        "lower": f"{bound.lower_decimal(args.digits)} (rounded down)",
    }
    status = EXIT_OK
    if args.claim is not None:
        ok = bound.certifies(Fraction(args.claim))
        if ok:
            verdict = "certified"
        elif bound.refutes(Fraction(args.claim)):
            verdict = f"REFUTED (gamma_{args.d} >= {bound.lower_decimal(args.digits)})"
        else:
            verdict = f"NOT certified (best upper bound {upper})"
        out["certificate"] = f"gamma_{args.d} <= {args.claim} {verdict}"
        status = EXIT_OK if ok else EXIT_ERROR
    else:
        out["certificate"] = f"gamma_{args.d} <= {upper} certified"
    return out, status


def cmd_dyck(args) -> tuple[dict, int]:
    if args.r is None:
        count = dyck_count(args.t, args.d)
    else:
        count = partial_dyck_count(args.t, args.r, args.d)
    out = {"t": args.t, "d": args.d}
    if args.r is not None:
        out["r"] = args.r
    out["count"] = count
    return out, EXIT_OK


def cmd_gbar(args) -> tuple[dict, int]:
    core = gbar_core(args.k, args.ell)
    out = {
        "k": args.k,
        "ell": args.ell,
        "core": f"{core.numerator}/{core.denominator}" if core.denominator != 1 else str(core.numerator),
        "gbar": f"{gbar(args.k, args.ell, args.digits)} (rounded up)",
    }
    status = EXIT_OK
    if args.claim is not None:
        ok = gbar_below(args.k, args.ell, Fraction(args.claim))
        out["certificate"] = f"gbar_{args.k}({args.ell}) < {args.claim} " + ("certified" if ok else "NOT certified")
        status = EXIT_OK if ok else EXIT_ERROR
    return out, status


def cmd_ogf_sweep(args) -> tuple[dict, int]:
    report = g4_sweep(
        args.min, args.max, args.order, size_min=args.size_min, size_max=args.size_max, jobs=args.jobs
    )
    lo, hi = report.max_value_bracket(args.digits)
    size, multiset, ell = report.argmax
    out = {
        "len_min": args.min,
        "len_max": args.max,
        "order": args.order,
        "cells": len(report.table),
        "argmax_size": size,
        "argmax_multiset": " ".join(map(str, multiset)),
        "argmax_ell": ell,
        "b": report.best.b,
        "max_value": f"[{lo}, {hi}]",
    }
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
        out["csv"] = args.csv
    if args.json:
        Path(args.json).write_text(report.to_json())
        out["json"] = args.json
    return out, EXIT_OK


def cmd_search(args) -> tuple[dict, int]:
    outcome = backtrack_avoid(args.pattern, args.sigma, args.depth, args.budget, jobs=args.jobs)
    out = outcome.report()
    if not args.timing:
        out.pop("duration_s")
    return out, EXIT_OK if outcome.conclusive else EXIT_INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="patavoid", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structure of a pattern")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("occurrences", help="occurrences of a pattern forming a suffix of a word")
    p.add_argument("word")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_occurrences)

    p = sub.add_parser("simulate", help="run AvoidPattern on seeded random letters")
    p.add_argument("pattern")
    p.add_argument("--sigma", type=int, default=2)
    p.add_argument("--target", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=1_000_000)
    p.add_argument("--check-every", type=int, default=0, help="re-check the word for instances every N steps")
    p.add_argument("--emit-record", metavar="PATH")
    p.add_argument("--show-word", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("decode", help="recover the input letters from a record file")
    p.add_argument("record")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("gamma", help="certified upper bound on gamma_d")
    p.add_argument("d", type=int)
    p.add_argument("--eps", default="1/1000000000000")
    p.add_argument("--digits", type=int, default=5)
    p.add_argument("--claim", help="decimal to certify as an upper bound")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("dyck", help="count Dyck words whose descents have length >= d")
    p.add_argument("t", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--r", type=int, help="final height (partial Dyck words)")
    p.set_defaults(func=cmd_dyck)

    p = sub.add_parser("gbar", help="closed-form bound gbar_k(ell)")
    p.add_argument("k", type=int)
    p.add_argument("ell", type=int)
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--claim", help="decimal to certify as a strict upper bound")
    p.set_defaults(func=cmd_gbar)

    p = sub.add_parser("ogf-sweep", help="maximise b_ell^(1/ell) over 4-variable multiplicities")
    p.add_argument("--min", type=int, default=24)
    p.add_argument("--max", type=int, default=99)
    p.add_argument("--order", type=int, default=100)
    p.add_argument("--size-min", type=int)
    p.add_argument("--size-max", type=int)
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_ogf_sweep)

    p = sub.add_parser("search", help="exhaustive search for words avoiding a pattern")
    p.add_argument("pattern")
    p.add_argument("--sigma", type=int, default=2)
    p.add_argument("--depth", type=int, default=100)
    p.add_argument("--budget", type=int, default=0, help="node budget (0 = unlimited)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall-clock duration")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        fields, status = args.func(args)
    except (PatavoidError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    sys.stdout.write(emit(args.command, fields))
    return status


if __name__ == "__main__":
    sys.exit(main())
