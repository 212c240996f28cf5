"""Report serialization: schema-stable JSON and flat CSV.

The JSON layout is fixed: top-level keys meta, grades, aggregates, verdict;
every per-grade field is present even when zero, keys are sorted, and
integers are plain ints, so identical inputs give byte-identical output.
Golden-file tests rely on that.
"""

from __future__ import annotations

import io
import json
import csv

from .inequalities import FiltrationReport, GradeReport


def _cmp(lhs: int, rhs: int, flag: bool, names=("lhs", "rhs", "holds")) -> dict:
    return {names[0]: lhs, names[1]: rhs, names[2]: flag}


def grade_report_to_dict(rep: GradeReport, n: int, qtop: int) -> dict:
    xi_rows = [
        [rep.xi.get((p, q), 0) for q in range(qtop + 1)] for p in range(n + 1)
    ]
    return {
        "u": list(rep.u),
        "c": list(rep.c),
        "xi": xi_rows,
        "strong": [_cmp(*row) for row in rep.strong],
        "weak": [_cmp(*row) for row in rep.weak],
        "lower": [
            {
                "c": c,
                "bound": bound,
                "bound_without_R": base,
                "R": r,
                "slack": c - bound,
                "holds": holds,
            }
            for (c, bound, base, r, holds) in rep.lower
        ],
        "upper": [
            {"c": c, "bound": bound, "slack": bound - c, "holds": holds}
            for (c, bound, holds) in rep.upper
        ],
        "relative_euler": _cmp(*rep.relative_euler, names=("lhs", "rhs", "equal")),
        "global_euler": _cmp(*rep.global_euler, names=("lhs", "rhs", "equal")),
        "pointwise": [
            _cmp(*row, names=("lhs", "rhs", "equal")) for row in rep.pointwise
        ],
        "cq_split": [
            _cmp(*row, names=("c", "coker_plus_ker", "equal")) for row in rep.cq_split
        ],
        "rank_i_bound": [_cmp(*row) for row in rep.lem_rank_i],
        "union_merge_bound": [_cmp(*row) for row in rep.union_vs_merge],
        "les_subadditivity": rep.les_depths_ok,
        "strong_top_equality": rep.strong_top_equality,
        "spectral": {
            "e1_koszul": rep.e1_koszul_ok,
            "e2_dims": rep.e2_ok,
            "convergence": rep.convergence_ok,
            "einfty_column": rep.einfty_column_ok,
        },
        "ok": rep.ok,
    }


def report_to_dict(rep: FiltrationReport) -> dict:
    qtop = max(rep.dim, 0) + 1
    grades = [grade_report_to_dict(g, rep.n, qtop) for g in rep.grades]
    lo = [min(g.u[k] for g in rep.grades) for k in range(rep.n)] if rep.grades else []
    hi = [max(g.u[k] for g in rep.grades) for k in range(rep.n)] if rep.grades else []
    return {
        "meta": {
            "params": rep.n,
            "field": rep.p,
            "cells": rep.n_cells,
            "dim": rep.dim,
            "grid_lo": lo,
            "grid_hi": hi,
        },
        "grades": grades,
        "aggregates": {
            "chi_pairs_total": rep.chi_pairs_total,
            "chi_modules_total": rep.chi_modules_total,
            "equal": rep.aggregates_equal,
        },
        "verdict": rep.verdict,
        "counterexample": rep.counterexample,
    }


def report_to_json(rep: FiltrationReport) -> str:
    return json.dumps(report_to_dict(rep), sort_keys=True, indent=2) + "\n"


def _grade_key(u) -> str:
    return ",".join(str(x) for x in u)


def betti_rows(rep: FiltrationReport) -> list[tuple[str, int, int, int]]:
    """Flat (grade, p, q, value) rows including zeros, grid order."""
    qtop = max(rep.dim, 0) + 1
    rows = []
    for g in rep.grades:
        for p in range(rep.n + 1):
            for q in range(qtop + 1):
                rows.append((_grade_key(g.u), p, q, g.xi.get((p, q), 0)))
    return rows


def critical_rows(rep: FiltrationReport) -> list[tuple[str, int, int]]:
    rows = []
    for g in rep.grades:
        for q, c in enumerate(g.c):
            rows.append((_grade_key(g.u), q, c))
    return rows


def rows_to_csv(header: list[str], rows: list[tuple]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()
