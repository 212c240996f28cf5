"""Multiparameter filtrations with one entrance grade per cell.

A filtration assigns each cell of a complex a grade in Z^n (componentwise
non-negative).  The sublevel complex at u consists of all cells whose grade
is componentwise <= u; monotonicity (faces enter no later than cofaces)
makes every sublevel set closed.

Because each cell enters at a single grade, sublevels of intersections
behave: the intersection of the one-step-down sublevels over directions in
sigma equals the sublevel at u - e_sigma, where e_sigma is the indicator
vector of sigma.  below_intersection exploits that; check=True verifies it
against the literal intersection.

Grades are plain int tuples.  negative coordinates are legal in queries
(sublevels just shrink to nothing) but not as entrance grades.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .complexes import CellComplex, Subcomplex

Grade = tuple[int, ...]


class EmptyFiltrationError(ValueError):
    """Raised when an operation needs at least one cell."""


def grade_leq(u: Grade, v: Grade) -> bool:
    """Componentwise u <= v."""
    return all(a <= b for a, b in zip(u, v))


def minus_e(u: Grade, sigma: Iterable[int]) -> Grade:
    """u - e_sigma for a set of 1-based directions."""
    out = list(u)
    for j in sigma:
        out[j - 1] -= 1
    return tuple(out)


@dataclass(frozen=True)
class FiltrationValidation:
    """Validation outcome: arity, negativity, and monotonicity violations."""

    bad_arity: tuple[int, ...]
    negative: tuple[int, ...]
    non_monotone: tuple[tuple[int, int], ...]
    missing: tuple[int, ...]
    extra: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not (
            self.bad_arity or self.negative or self.non_monotone or self.missing or self.extra
        )


class MultiFiltration:
    """A one-critical n-parameter filtration of a cell complex."""

    def __init__(self, complex: CellComplex, n: int, entrance: Mapping[int, Grade]):
        if n < 1:
            raise ValueError(f"number of parameters must be >= 1, got {n}")
        self.complex = complex
        self.n = n
        self.entrance: dict[int, Grade] = {cid: tuple(g) for cid, g in entrance.items()}
        ids = [c.id for c in complex.cells]
        self._ids = np.array(ids, dtype=np.int64)
        rows = []
        for cid in ids:
            g = self.entrance.get(cid)
            rows.append(g if g is not None and len(g) == n else (0,) * n)
        self._grades = (
            np.array(rows, dtype=np.int64) if rows else np.zeros((0, n), dtype=np.int64)
        )
        self._members_cache: dict[Grade, frozenset[int]] = {}

    @property
    def p(self) -> int:
        return self.complex.p

    def validate(self) -> FiltrationValidation:
        """Checks grade arity, non-negativity, coverage, and monotonicity."""
        cell_ids = {c.id for c in self.complex.cells}
        missing = tuple(sorted(cell_ids - self.entrance.keys()))
        extra = tuple(sorted(self.entrance.keys() - cell_ids))
        bad_arity = tuple(
            sorted(cid for cid, g in self.entrance.items() if len(g) != self.n)
        )
        negative = tuple(
            sorted(
                cid
                for cid, g in self.entrance.items()
                if len(g) == self.n and any(x < 0 for x in g)
            )
        )
        non_monotone = []
        for (t, s) in self.complex.incidence:
            gt = self.entrance.get(t)
            gs = self.entrance.get(s)
            if gt is None or gs is None or len(gt) != self.n or len(gs) != self.n:
                continue
            if not grade_leq(gs, gt):
                non_monotone.append((t, s))
        return FiltrationValidation(
            bad_arity, negative, tuple(sorted(non_monotone)), missing, extra
        )

    def members(self, u: Grade) -> frozenset[int]:
        """Ids of cells with entrance grade componentwise <= u."""
        u = tuple(u)
        got = self._members_cache.get(u)
        if got is None:
            if self._grades.shape[0] == 0:
                got = frozenset()
            else:
                mask = np.all(self._grades <= np.array(u, dtype=np.int64), axis=1)
                got = frozenset(int(i) for i in self._ids[mask])
            self._members_cache[u] = got
        return got

    def sublevel(self, u: Grade) -> Subcomplex:
        return Subcomplex(self.complex, self.members(u))

    def cells_entering_at(self, u: Grade) -> tuple[int, ...]:
        u = tuple(u)
        return tuple(sorted(cid for cid, g in self.entrance.items() if g == u))

    def below_union(self, u: Grade) -> Subcomplex:
        """Union over directions j of the sublevel at u - e_j.

        Equals sublevel(u) minus the cells entering exactly at u; both
        descriptions are computed and compared, since that equality is the
        structural face of one-criticality this package leans on.
        """
        u = tuple(u)
        union: set[int] = set()
        for j in range(1, self.n + 1):
            union |= self.members(minus_e(u, (j,)))
        direct = self.members(u) - set(self.cells_entering_at(u))
        assert union == direct, "one-criticality violated: union != sublevel minus entrants"
        return Subcomplex(self.complex, frozenset(union))

    def below_intersection(self, u: Grade, sigma: Iterable[int], check: bool = False) -> Subcomplex:
        """Intersection over j in sigma of sublevels at u - e_j.

        Computed as the single sublevel at u - e_sigma; with check=True the
        literal intersection is formed and compared.
        """
        sig = tuple(sorted(set(int(j) for j in sigma)))
        if not sig:
            raise ValueError("sigma must be non-empty")
        if sig[0] < 1 or sig[-1] > self.n:
            raise ValueError(f"directions out of range 1..{self.n}: {sig}")
        fast = self.members(minus_e(u, sig))
        if check:
            lit: frozenset[int] | None = None
            for j in sig:
                mj = self.members(minus_e(u, (j,)))
                lit = mj if lit is None else (lit & mj)
            assert lit == fast, "intersection of one-step sublevels disagrees with single grade"
        return Subcomplex(self.complex, fast)

    def grade_box(self) -> tuple[Grade, Grade]:
        """Componentwise (min, max) over entrance grades."""
        if not self.entrance:
            raise EmptyFiltrationError("no cells, so no grade box")
        lo = tuple(int(x) for x in self._grades.min(axis=0))
        hi = tuple(int(x) for x in self._grades.max(axis=0))
        return lo, hi

    def evaluation_grid(self) -> list[Grade]:
        """All grades in the closed box [min - 1, max], lexicographic.

        Outside this box every Betti number and critical count vanishes:
        below min - 1 some coordinate empties every involved sublevel, and
        above max the extra direction is saturated, so the Koszul complex
        tensors with an acyclic factor.
        """
        lo, hi = self.grade_box()
        ranges = [range(a - 1, b + 1) for a, b in zip(lo, hi)]
        return [tuple(g) for g in itertools.product(*ranges)]

    def __repr__(self) -> str:
        return (
            f"MultiFiltration(n={self.n}, cells={self.complex.n_cells}, p={self.p})"
        )


def evaluation_grid(f: MultiFiltration) -> list[Grade]:
    return f.evaluation_grid()


def grade_box(f: MultiFiltration) -> tuple[Grade, Grade]:
    return f.grade_box()
