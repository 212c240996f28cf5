"""Morse-type inequalities and Euler identities, checked grade by grade.

Every check is an integer comparison between quantities the rest of the
package computes independently: critical counts from relative homology,
Betti numbers from the Koszul complex, differential ranks from the spectral
sequence.  The flags recorded in a GradeReport are the literal comparisons
of the recorded numbers; nothing is inferred.

The bounds, with xi_p^q taken as 0 for negative indices:

* strong, for each q:
    sum_{i<=q} (-1)^(q+i) c_i(u)
      >= sum_{i<=q} (-1)^(q+i) (xi_0^i(u) - sum_{p=1}^{i+1} xi_p^{i+1-p}(u))
* weak, for each q:
    c_q(u) >= xi_0^q(u) - sum_{p=1}^{q+1} xi_p^{q+1-p}(u)
* improved lower bound, with R built from spectral differential ranks:
    c_q(u) >= xi_0^q(u) + xi_1^{q-1}(u) - sum_{i=1}^{n-1} xi_{i+1}^{q-i}(u) + R
    R = sum_{r=2}^{n-1} ( sum_{i=1}^{r-1} rank d^r_{i,q-i}
                        + sum_{i=r+1}^{n-1} rank d^r_{i,q-i}
                        + sum_{i=1}^{n-1} rank d^r_{i+r,q-i-r+1} )
* upper bound:
    c_q(u) <= sum_{i=0}^{n} xi_i^{q-i}(u)
* relative Euler identity:
    sum_q (-1)^q c_q(u) == sum_{p,q} (-1)^(p+q) xi_p^q(u)
* global Euler identity:
    chi(X^u) == sum_{p,q} (-1)^(p+q) sum_{v <= u} xi_p^q(v)

Plus the structural identities: c_q(u) = dim coker i_q + dim ker i_{q-1}
for the union inclusion i, the pointwise dimension identity, rank bounds
for i via the merge map, and exactness subadditivity along the pair's long
exact sequence at every truncation depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fieldmat import rank
from .filtration import Grade, MultiFiltration
from .koszul import BettiTable, FiltrationHomology, betti_table, koszul_at, pointwise_dimension
from .spectral import (
    SpectralPages,
    check_convergence,
    check_e1_is_koszul,
    check_e2_dims,
    check_einfty_column,
    compute_pages,
)


def check_strong(c: list[int], xi, u: Grade, q: int) -> tuple[int, int, bool]:
    """Strong inequality at degree q; xi is a (p, q) -> int accessor."""
    lhs = sum((-1) ** (q + i) * c[i] for i in range(q + 1))
    rhs = 0
    for i in range(q + 1):
        term = xi(0, i) - sum(xi(p, i + 1 - p) for p in range(1, i + 2))
        rhs += (-1) ** (q + i) * term
    return lhs, rhs, lhs >= rhs


def check_weak(c: list[int], xi, u: Grade, q: int) -> tuple[int, int, bool]:
    lhs = c[q]
    rhs = xi(0, q) - sum(xi(p, q + 1 - p) for p in range(1, q + 2))
    return lhs, rhs, lhs >= rhs


def check_relative_euler(c: list[int], xi, n: int, qtop: int) -> tuple[int, int, bool]:
    lhs = sum((-1) ** q * c[q] for q in range(qtop + 1))
    rhs = sum(
        (-1) ** (p + q) * xi(p, q) for p in range(n + 1) for q in range(qtop + 1)
    )
    return lhs, rhs, lhs == rhs


def check_global_euler(
    engine: FiltrationHomology, table: BettiTable, u: Grade
) -> tuple[int, int, bool]:
    lhs = sum(
        (-1) ** q * engine.homology_at(u).dim(q) for q in range(engine.qmax + 1)
    )
    rhs = sum(
        (-1) ** (p + q) * table.sum_below(p, q, u)
        for p in range(engine.n + 1)
        for q in range(max(engine.qmax, 0) + 1)
    )
    return lhs, rhs, lhs == rhs


def remainder_R(pages: SpectralPages, n: int, q: int) -> int:
    """The non-negative correction of the improved lower bound."""
    total = 0
    for r in range(2, n):
        for i in range(1, r):
            total += pages.rank(r, i, q - i)
        for i in range(r + 1, n):
            total += pages.rank(r, i, q - i)
        for i in range(1, n):
            total += pages.rank(r, i + r, q - i - r + 1)
    return total


def lower_bound(
    c: list[int], xi, pages: SpectralPages, n: int, q: int
) -> tuple[int, int, int, int, bool]:
    """(c_q, bound, bound without R, R, holds)."""
    base = xi(0, q) + xi(1, q - 1) - sum(xi(i + 1, q - i) for i in range(1, n))
    r = remainder_R(pages, n, q)
    bound = base + r
    return c[q], bound, base, r, c[q] >= bound


def upper_bound(c: list[int], xi, n: int, q: int) -> tuple[int, int, bool]:
    bound = sum(xi(i, q - i) for i in range(n + 1))
    return c[q], bound, c[q] <= bound


def les_subadditivity(hun: list[int], hu: list[int], c: list[int], depth: int) -> bool:
    """Prop-style alternating inequality for the pair's LES, truncated at depth."""
    a = sum((-1) ** (depth + i) * hun[i] for i in range(depth + 1))
    cc = sum((-1) ** (depth + i) * c[i] for i in range(depth + 1))
    b = sum((-1) ** (depth + i) * hu[i] for i in range(depth + 1))
    return a + cc >= b


@dataclass
class GradeReport:
    """All numbers and flags computed at a single grade."""

    u: Grade
    c: list[int]
    xi: dict[tuple[int, int], int]
    strong: list[tuple[int, int, bool]]
    weak: list[tuple[int, int, bool]]
    lower: list[tuple[int, int, int, int, bool]]
    upper: list[tuple[int, int, bool]]
    relative_euler: tuple[int, int, bool]
    global_euler: tuple[int, int, bool]
    pointwise: list[tuple[int, int, bool]]
    cq_split: list[tuple[int, int, bool]]
    lem_rank_i: list[tuple[int, int, bool]]
    union_vs_merge: list[tuple[int, int, bool]]
    les_depths_ok: bool
    strong_top_equality: bool
    e1_koszul_ok: bool
    e2_ok: bool
    convergence_ok: bool
    einfty_column_ok: bool

    def failures(self) -> list[str]:
        """Names of violated checks, empty when everything holds."""
        out = []
        for name, rows in (
            ("strong", self.strong),
            ("weak", self.weak),
            ("upper", self.upper),
            ("pointwise", self.pointwise),
            ("cq_split", self.cq_split),
            ("lem_rank_i", self.lem_rank_i),
            ("union_vs_merge", self.union_vs_merge),
        ):
            for q, row in enumerate(rows):
                if not row[-1]:
                    out.append(f"{name}[q={q}]")
        for q, row in enumerate(self.lower):
            if not row[-1]:
                out.append(f"lower[q={q}]")
            if row[3] < 0:
                out.append(f"lower_R_negative[q={q}]")
        for name, row in (
            ("relative_euler", self.relative_euler),
            ("global_euler", self.global_euler),
        ):
            if not row[-1]:
                out.append(name)
        for name, flag in (
            ("les_subadditivity", self.les_depths_ok),
            ("strong_top_equality", self.strong_top_equality),
            ("e1_koszul", self.e1_koszul_ok),
            ("e2_dims", self.e2_ok),
            ("convergence", self.convergence_ok),
            ("einfty_column", self.einfty_column_ok),
        ):
            if not flag:
                out.append(name)
        return out

    @property
    def ok(self) -> bool:
        return not self.failures()


@dataclass
class FiltrationReport:
    """Per-grade reports plus the global aggregate identity."""

    n: int
    p: int
    n_cells: int
    dim: int
    grades: list[GradeReport]
    chi_pairs_total: int
    chi_modules_total: int
    counterexample: str | None = field(default=None)

    @property
    def aggregates_equal(self) -> bool:
        return self.chi_pairs_total == self.chi_modules_total

    @property
    def verdict(self) -> str:
        if self.counterexample is None and self.aggregates_equal:
            return "PASSED"
        return "FAILED"


def grade_report(
    engine: FiltrationHomology,
    table: BettiTable,
    u: Grade,
    strict_pages: bool = False,
) -> GradeReport:
    """Runs every check at one grade."""
    u = tuple(u)
    n = engine.n
    qmax = max(engine.qmax, 0)
    qtop = qmax + 1
    c = engine.critical_counts(u)

    def xi(p: int, q: int) -> int:
        if q < 0 or p < 0:
            return 0
        return table.get(p, q, u)

    pages = compute_pages(engine, u, strict=strict_pages)
    xi_slice = {
        (p, q): xi(p, q) for p in range(n + 1) for q in range(qtop + 1)
    }

    strong = [check_strong(c, xi, u, q) for q in range(qtop + 1)]
    weak = [check_weak(c, xi, u, q) for q in range(qtop + 1)]
    lower = [lower_bound(c, xi, pages, n, q) for q in range(qtop + 1)]
    upper = [upper_bound(c, xi, n, q) for q in range(qtop + 1)]
    rel = check_relative_euler(c, xi, n, qtop)
    glob = check_global_euler(engine, table, u)
    pw = []
    for q in range(qtop + 1):
        lhs, rhs = pointwise_dimension(engine, table, u, q)
        pw.append((lhs, rhs, lhs == rhs))

    mu = engine.f.members(u)
    mun = engine.union_members(u)
    hu = [engine.homology_members(mu).dim(q) for q in range(qtop + 2)]
    hun = [engine.homology_members(mun).dim(q) for q in range(qtop + 2)]
    irank = [rank(engine.induced_members(mun, mu, q)) for q in range(qtop + 2)]

    cq_split = []
    for q in range(qtop + 1):
        coker = hu[q] - irank[q]
        kerpart = (hun[q - 1] - irank[q - 1]) if q >= 1 else 0
        cq_split.append((c[q], coker + kerpart, c[q] == coker + kerpart))

    lem_rank_i = []
    union_vs_merge = []
    for q in range(qtop + 1):
        kz = koszul_at(engine, u, q)
        eps_rank = rank(engine.merge_into_union(u, q))
        bound = kz.merge_rank + hun[q] - eps_rank
        lem_rank_i.append((irank[q], bound, irank[q] <= bound))
        ub = kz.merge_rank + sum(xi(i, q - i + 1) for i in range(1, n + 1))
        holds = hun[q] <= ub and (n != 2 or hun[q] == ub)
        union_vs_merge.append((hun[q], ub, holds))

    les_ok = all(les_subadditivity(hun, hu, c, d) for d in range(qtop + 1))
    top_lhs, top_rhs, _ = strong[qtop]
    strong_top = top_lhs == top_rhs

    return GradeReport(
        u=u,
        c=list(c),
        xi=xi_slice,
        strong=strong,
        weak=weak,
        lower=lower,
        upper=upper,
        relative_euler=rel,
        global_euler=glob,
        pointwise=pw,
        cq_split=cq_split,
        lem_rank_i=lem_rank_i,
        union_vs_merge=union_vs_merge,
        les_depths_ok=les_ok,
        strong_top_equality=strong_top,
        e1_koszul_ok=check_e1_is_koszul(engine, u, pages),
        e2_ok=check_e2_dims(engine, u, pages),
        convergence_ok=check_convergence(engine, u, pages),
        einfty_column_ok=check_einfty_column(engine, u, pages),
    )


def full_report(f: MultiFiltration, strict_pages: bool = False) -> FiltrationReport:
    """Every check at every grade of the evaluation grid."""
    engine = FiltrationHomology(f)
    grid = f.evaluation_grid()
    table = betti_table(engine, grid)
    grades = []
    counterexample = None
    for u in grid:
        rep = grade_report(engine, table, u, strict_pages=strict_pages)
        grades.append(rep)
        if counterexample is None:
            bad = rep.failures()
            if bad:
                counterexample = f"grade {u}: {', '.join(bad)}"
    chi_pairs = sum(r.relative_euler[0] for r in grades)
    qmax = max(engine.qmax, 0)
    chi_modules = 0
    for q in range(qmax + 2):
        for p in range(f.n + 1):
            sgn = (-1) ** (p + q)
            chi_modules += sgn * sum(r.xi.get((p, q), 0) for r in grades)
    return FiltrationReport(
        n=f.n,
        p=f.p,
        n_cells=f.complex.n_cells,
        dim=f.complex.dim,
        grades=grades,
        chi_pairs_total=chi_pairs,
        chi_modules_total=chi_modules,
        counterexample=counterexample,
    )
