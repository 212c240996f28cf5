"""Command-line surface.

Subcommands:

    validate <file>              exit 0/1 with a violation report
    betti <file> [--grades ...]  Betti table as JSON or CSV
    critical <file>              critical-count table
    pages <file> --grade g       spectral page dims and differential ranks
    check <file> [--strict] [--figures DIR]   full verification report
    example <name> [-o FILE]     emit a named fixture as .mfcc
    random --seed S --params n [--cells N] [-o FILE]   emit a random instance

Global flags: --field p (override the file's characteristic, or pick the
field for example/random), --format json|csv (tables), --quiet.

Exit codes: 0 success, 1 violated check or failed validation, 2 usage
error, 3 parse or validation error while loading a file.  `-` reads stdin,
so `mpmorse random --seed 7 --params 2 | mpmorse check -` works.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .examples import EXAMPLES, ParametersOutOfRange, RandomSpec, build_example, random_filtration
from .filtration import MultiFiltration
from .inequalities import full_report
from .koszul import FiltrationHomology, betti_table, koszul_at
from .mfcc import MfccError, MfccValidationError, parse_mfcc, write_mfcc
from .report import (
    betti_rows,
    critical_rows,
    report_to_dict,
    report_to_json,
    rows_to_csv,
)
from .spectral import compute_pages

USAGE_ERROR = 2
DATA_ERROR = 3


# Defaults applied after parsing; the flags themselves use SUPPRESS so that a
# value parsed before the subcommand is not clobbered by the subparser.
GLOBAL_DEFAULTS = {"field": None, "format": "json", "quiet": False}


def _global_flags() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument(
        "--field", type=int, default=argparse.SUPPRESS, help="prime field override"
    )
    g.add_argument(
        "--format", choices=("json", "csv"), default=argparse.SUPPRESS
    )
    g.add_argument(
        "--quiet",
        action="store_true",
        default=argparse.SUPPRESS,
        help="suppress report bodies",
    )
    return g


def build_parser() -> argparse.ArgumentParser:
    g = _global_flags()
    ap = argparse.ArgumentParser(
        prog="mpmorse",
        description="critical counts, Betti tables, spectral pages, and the "
        "inequalities binding them, for multi-filtered cell complexes",
        parents=[g],
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("validate", help="run both validators on a file", parents=[g])
    sp.add_argument("file")

    sp = sub.add_parser("betti", help="Betti table over the grid", parents=[g])
    sp.add_argument("file")
    sp.add_argument("--grades", default=None, help="semicolon-separated grades, e.g. 1,0;1,1")

    sp = sub.add_parser("critical", help="critical counts over the grid", parents=[g])
    sp.add_argument("file")

    sp = sub.add_parser("pages", help="spectral pages at one grade", parents=[g])
    sp.add_argument("file")
    sp.add_argument("--grade", required=True, help="comma-separated grade")

    sp = sub.add_parser("check", help="verify every identity and inequality", parents=[g])
    sp.add_argument("file", nargs="?", default="-")
    sp.add_argument("--strict", action="store_true", help="extra internal span checks")
    sp.add_argument("--figures", default=None, metavar="DIR", help="render PNGs here")

    sp = sub.add_parser("example", help="emit a named example fixture", parents=[g])
    sp.add_argument("name", help=", ".join(sorted(EXAMPLES)))
    sp.add_argument("-o", "--output", default=None)

    sp = sub.add_parser("random", help="emit a seeded random filtration", parents=[g])
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--params", type=int, required=True)
    sp.add_argument("--cells", type=int, default=40)
    sp.add_argument("--max-dim", type=int, default=3)
    sp.add_argument("--grade-max", type=int, default=3)
    sp.add_argument("-o", "--output", default=None)
    return ap


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load(path: str, field: int | None) -> MultiFiltration:
    return parse_mfcc(_read_text(path), field_override=field)


def _emit(text: str, output: str | None, quiet: bool) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    elif not quiet:
        sys.stdout.write(text)


def _parse_grade_arg(s: str, n: int) -> tuple[int, ...]:
    parts = [x for x in s.split(",") if x != ""]
    if len(parts) != n:
        raise ValueError(f"grade needs {n} coordinates, got {s!r}")
    return tuple(int(x) for x in parts)


def _cmd_validate(args) -> int:
    try:
        f = _load(args.file, args.field)
    except MfccValidationError as e:
        payload = {"ok": False, "error": str(e)}
        if not args.quiet:
            print(json.dumps(payload, sort_keys=True, indent=2))
        return 1
    payload = {
        "ok": True,
        "params": f.n,
        "field": f.p,
        "cells": f.complex.n_cells,
        "dim": f.complex.dim,
    }
    if not args.quiet:
        print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def _cmd_betti(args) -> int:
    f = _load(args.file, args.field)
    engine = FiltrationHomology(f)
    if args.grades:
        grid = [_parse_grade_arg(g, f.n) for g in args.grades.split(";") if g]
    else:
        grid = f.evaluation_grid()
    qtop = max(f.complex.dim, 0) + 1
    rows = []
    for u in grid:
        for q in range(qtop + 1):
            kz = koszul_at(engine, u, q) if q <= max(engine.qmax, 0) else None
            for p in range(f.n + 1):
                val = kz.xi[p] if kz is not None else 0
                rows.append((",".join(str(x) for x in u), p, q, val))
    if args.format == "csv":
        out = rows_to_csv(["grade", "p", "q", "value"], rows)
    else:
        out = (
            json.dumps(
                [
                    {"u": [int(x) for x in g.split(",")], "p": p, "q": q, "value": v}
                    for (g, p, q, v) in rows
                ],
                sort_keys=True,
                indent=2,
            )
            + "\n"
        )
    if not args.quiet:
        sys.stdout.write(out)
    return 0


def _cmd_critical(args) -> int:
    f = _load(args.file, args.field)
    engine = FiltrationHomology(f)
    rows = []
    for u in f.evaluation_grid():
        for q, c in enumerate(engine.critical_counts(u)):
            rows.append((",".join(str(x) for x in u), q, c))
    if args.format == "csv":
        out = rows_to_csv(["grade", "q", "c"], rows)
    else:
        out = (
            json.dumps(
                [
                    {"u": [int(x) for x in g.split(",")], "q": q, "c": c}
                    for (g, q, c) in rows
                ],
                sort_keys=True,
                indent=2,
            )
            + "\n"
        )
    if not args.quiet:
        sys.stdout.write(out)
    return 0


def _cmd_pages(args) -> int:
    f = _load(args.file, args.field)
    engine = FiltrationHomology(f)
    u = _parse_grade_arg(args.grade, f.n)
    pages = compute_pages(engine, u)
    dims = [
        {"r": r, "p": p, "q": q, "dim": pages.dim(r, p, q)}
        for r in range(f.n + 1)
        for p in range(f.n)
        for q in range(pages.qmax + 1)
    ]
    ranks = [
        {"r": r, "p": p, "q": q, "rank": pages.rank(r, p, q)}
        for r in range(f.n)
        for p in range(f.n)
        for q in range(pages.qmax + 1)
    ]
    out = (
        json.dumps(
            {"u": list(u), "dims": dims, "ranks": ranks}, sort_keys=True, indent=2
        )
        + "\n"
    )
    if not args.quiet:
        sys.stdout.write(out)
    return 0


def _cmd_check(args) -> int:
    f = _load(args.file, args.field)
    rep = full_report(f, strict_pages=args.strict)
    if args.figures:
        from .figures import render_report_figures

        render_report_figures(rep, Path(args.figures))
    if not args.quiet:
        sys.stdout.write(report_to_json(rep))
    return 0 if rep.verdict == "PASSED" else 1


def _cmd_example(args) -> int:
    try:
        f, _ = build_example(args.name, p=args.field or 2)
    except KeyError as e:
        print(f"mpmorse: {e.args[0]}", file=sys.stderr)
        return USAGE_ERROR
    _emit(write_mfcc(f), args.output, args.quiet)
    return 0


def _cmd_random(args) -> int:
    spec = RandomSpec(
        seed=args.seed,
        n=args.params,
        max_cells=args.cells,
        max_dim=args.max_dim,
        grade_range=(0, args.grade_max),
        p=args.field or 2,
    )
    f = random_filtration(spec)
    _emit(write_mfcc(f), args.output, args.quiet)
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    handlers = {
        "validate": _cmd_validate,
        "betti": _cmd_betti,
        "critical": _cmd_critical,
        "pages": _cmd_pages,
        "check": _cmd_check,
        "example": _cmd_example,
        "random": _cmd_random,
    }
    try:
        return handlers[args.cmd](args)
    except FileNotFoundError as e:
        print(f"mpmorse: no such file: {e.filename}", file=sys.stderr)
        return USAGE_ERROR
    except ParametersOutOfRange as e:
        print(f"mpmorse: {e}", file=sys.stderr)
        return USAGE_ERROR
    except MfccError as e:
        print(f"mpmorse: {e}", file=sys.stderr)
        return DATA_ERROR
    except ValueError as e:
        # bad --field primes, malformed --grade strings, and the like
        print(f"mpmorse: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
