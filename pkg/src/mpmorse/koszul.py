"""Sublevel homology, inclusion-induced maps, and the Koszul complex.

FiltrationHomology is the workhorse: it memoizes homology per distinct
member set and induced maps per (smaller set, larger set, degree) triple.
Distinct grades whose relevant sublevels coincide therefore share all work,
which is what makes sweeping a whole evaluation grid affordable.

The Koszul complex at a grade u in homological degree q has

    K_i = direct sum over size-i direction subsets sigma of H_q(X^{u - e_sigma})

with blocks ordered lexicographically.  The differential component from the
block of sigma to the block of sigma minus its l-th element (1-based, in
increasing order) is (-1)^(i - l) times the inclusion-induced map.  The
multigraded Betti number xi_p^q(u) is dim ker d_p - rank d_{p+1}; in
particular xi_0 counts homology born at u and the rank of d_1 is the rank
of the merge map from one-step-down sublevels into X^u.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .complexes import HomologyData, Subcomplex, chain_inclusion, relative_homology_dims
from .fieldmat import FpMatrix, induced_on_quotient, rank
from .filtration import Grade, MultiFiltration, grade_leq, minus_e


class DifferentialError(AssertionError):
    """Raised when an assembled differential fails d*d == 0."""


def direction_subsets(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """subsets[i] = all size-i subsets of {1..n} in lexicographic order."""
    return tuple(
        tuple(itertools.combinations(range(1, n + 1), i)) for i in range(n + 1)
    )


class FiltrationHomology:
    """Memoized homology and induced maps over the sublevels of a filtration."""

    def __init__(self, filtration: MultiFiltration):
        self.f = filtration
        self.n = filtration.n
        self.p = filtration.p
        self.qmax = filtration.complex.dim
        self.subsets = direction_subsets(self.n)
        self._subs: dict[frozenset[int], Subcomplex] = {}
        self._hom: dict[frozenset[int], HomologyData] = {}
        self._ind: dict[tuple[frozenset[int], frozenset[int], int], FpMatrix] = {}
        self._koszul: dict[tuple, "KoszulComplexAtGrade"] = {}
        self._rel: dict[tuple[frozenset[int], frozenset[int]], list[int]] = {}

    def sub(self, members: frozenset[int]) -> Subcomplex:
        got = self._subs.get(members)
        if got is None:
            got = Subcomplex(self.f.complex, members)
            self._subs[members] = got
        return got

    def homology_members(self, members: frozenset[int]) -> HomologyData:
        got = self._hom.get(members)
        if got is None:
            got = self.sub(members).homology()
            self._hom[members] = got
        return got

    def homology_at(self, u: Grade) -> HomologyData:
        return self.homology_members(self.f.members(u))

    def union_members(self, u: Grade) -> frozenset[int]:
        out: set[int] = set()
        for j in range(1, self.n + 1):
            out |= self.f.members(minus_e(u, (j,)))
        return frozenset(out)

    def union_homology(self, u: Grade) -> HomologyData:
        return self.homology_members(self.union_members(u))

    def induced_members(
        self, small: frozenset[int], big: frozenset[int], q: int
    ) -> FpMatrix:
        """Induced map H_q(small) -> H_q(big) for nested member sets."""
        key = (small, big, q)
        got = self._ind.get(key)
        if got is None:
            dom = self.homology_members(small)
            cod = self.homology_members(big)
            if not (0 <= q < len(dom.spaces)):
                got = FpMatrix.zeros(cod.dim(q), 0, self.p)
            else:
                inc = chain_inclusion(self.sub(small), self.sub(big), q)
                got = induced_on_quotient(inc, dom.spaces[q], cod.spaces[q])
            self._ind[key] = got
        return got

    def induced(self, v: Grade, w: Grade, q: int) -> FpMatrix:
        """Induced map H_q(X^v) -> H_q(X^w) for v componentwise <= w."""
        if not grade_leq(v, w):
            raise ValueError(f"grades not comparable: {v} !<= {w}")
        return self.induced_members(self.f.members(v), self.f.members(w), q)

    def merge_into_top(self, u: Grade, q: int) -> FpMatrix:
        """Blocks [H_q(X^{u-e_1}) ... H_q(X^{u-e_n})] -> H_q(X^u), side by side."""
        mu = self.f.members(u)
        blocks = [
            self.induced_members(self.f.members(minus_e(u, (j,))), mu, q)
            for j in range(1, self.n + 1)
        ]
        rows = self.homology_members(mu).dim(q)
        out = np.hstack([b.a for b in blocks]) if blocks else np.zeros((rows, 0))
        return FpMatrix(out, self.p)

    def merge_into_union(self, u: Grade, q: int) -> FpMatrix:
        """Same blocks, but mapping into the union of one-step-down sublevels."""
        mu = self.union_members(u)
        blocks = [
            self.induced_members(self.f.members(minus_e(u, (j,))), mu, q)
            for j in range(1, self.n + 1)
        ]
        rows = self.homology_members(mu).dim(q)
        out = np.hstack([b.a for b in blocks]) if blocks else np.zeros((rows, 0))
        return FpMatrix(out, self.p)

    def critical_counts(self, u: Grade) -> list[int]:
        """c_q(u) = dim H_q(sublevel at u, union one step down), q = 0..dim+1.

        The relative chain complex consists of exactly the cells entering at
        u; that equality is asserted inside below_union.
        """
        x = self.f.members(u)
        a = self.f.below_union(u).members
        key = (x, a)
        got = self._rel.get(key)
        if got is None:
            got = relative_homology_dims(self.sub(x), self.sub(a))
            self._rel[key] = got
        return got

    def koszul_config(self, u: Grade) -> tuple:
        """Cache key: the member sets of every X^{u - e_sigma}, empty set first."""
        parts = []
        for size in self.subsets:
            for sigma in size:
                parts.append(self.f.members(minus_e(u, sigma)))
        return tuple(parts)


@dataclass
class KoszulComplexAtGrade:
    """The Koszul complex of one-step-down inclusions at a fixed (u, q)."""

    u: Grade
    q: int
    n: int
    p: int
    block_dims: tuple[tuple[int, ...], ...]
    d: dict[int, FpMatrix]
    ranks: tuple[int, ...]
    xi: tuple[int, ...]

    def dim(self, i: int) -> int:
        if 0 <= i <= self.n:
            return sum(self.block_dims[i])
        return 0

    def rank_d(self, i: int) -> int:
        if 1 <= i <= self.n:
            return self.ranks[i - 1]
        return 0

    @property
    def merge_rank(self) -> int:
        """Rank of d_1, i.e. of the merge map into H_q(X^u)."""
        return self.rank_d(1)


def koszul_at(engine: FiltrationHomology, u: Grade, q: int) -> KoszulComplexAtGrade:
    """Builds (with caching) the Koszul complex at grade u in degree q."""
    u = tuple(u)
    key = (engine.koszul_config(u), q)
    got = engine._koszul.get(key)
    if got is not None:
        return got

    n = engine.n
    subsets = engine.subsets
    members = [
        [engine.f.members(minus_e(u, sigma)) for sigma in subsets[i]]
        for i in range(n + 1)
    ]
    block_dims = tuple(
        tuple(engine.homology_members(ms).dim(q) for ms in members[i])
        for i in range(n + 1)
    )
    offsets = []
    for i in range(n + 1):
        off = [0]
        for d in block_dims[i]:
            off.append(off[-1] + d)
        offsets.append(off)
    index_of = [
        {sigma: k for k, sigma in enumerate(subsets[i])} for i in range(n + 1)
    ]

    d: dict[int, FpMatrix] = {}
    for i in range(1, n + 1):
        rows = offsets[i - 1][-1]
        cols = offsets[i][-1]
        a = np.zeros((rows, cols), dtype=np.int64)
        for k, sigma in enumerate(subsets[i]):
            src = members[i][k]
            c0 = offsets[i][k]
            for l in range(1, i + 1):
                tau = sigma[: l - 1] + sigma[l:]
                kt = index_of[i - 1][tau]
                dst = members[i - 1][kt]
                blk = engine.induced_members(src, dst, q)
                if blk.rows == 0 or blk.cols == 0:
                    continue
                sign = (-1) ** (i - l)
                r0 = offsets[i - 1][kt]
                a[r0 : r0 + blk.rows, c0 : c0 + blk.cols] = (sign * blk.a) % engine.p
        d[i] = FpMatrix(a, engine.p)

    for i in range(2, n + 1):
        if not (d[i - 1] @ d[i]).is_zero():
            raise DifferentialError(f"Koszul d_{i-1} d_{i} != 0 at u={u}, q={q}")

    ranks = tuple(rank(d[i]) for i in range(1, n + 1))
    xi = []
    for pdeg in range(n + 1):
        if pdeg == 0:
            ker = sum(block_dims[0])
        else:
            ker = d[pdeg].cols - ranks[pdeg - 1]
        nxt = ranks[pdeg] if pdeg < n else 0
        xi.append(ker - nxt)
    top_dim = engine.homology_members(engine.f.members(u)).dim(q)
    assert xi[0] == top_dim - ranks[0], "xi_0 must equal new homology at u"

    got = KoszulComplexAtGrade(
        u=u,
        q=q,
        n=n,
        p=engine.p,
        block_dims=block_dims,
        d=d,
        ranks=ranks,
        xi=tuple(xi),
    )
    engine._koszul[key] = got
    return got


class BettiTable:
    """xi_p^q(u) over an evaluation grid, with zero default off the table."""

    def __init__(self, n: int, qmax: int, entries: dict[tuple[int, int, Grade], int]):
        self.n = n
        self.qmax = qmax
        self.entries = {k: v for k, v in entries.items() if v}

    def get(self, p: int, q: int, u: Grade) -> int:
        return self.entries.get((p, q, tuple(u)), 0)

    def sum_below(self, p: int, q: int, u: Grade) -> int:
        """Sum of xi_p^q(v) over stored grades v componentwise <= u."""
        u = tuple(u)
        return sum(
            v
            for (pp, qq, g), v in self.entries.items()
            if pp == p and qq == q and grade_leq(g, u)
        )

    def nonzero(self) -> list[tuple[int, int, Grade, int]]:
        return sorted((p, q, u, v) for (p, q, u), v in self.entries.items())


def betti_table(engine: FiltrationHomology, grid: list[Grade] | None = None) -> BettiTable:
    """Evaluates every xi_p^q(u) over the grid (default: the evaluation box)."""
    if grid is None:
        grid = engine.f.evaluation_grid()
    entries: dict[tuple[int, int, Grade], int] = {}
    qmax = max(engine.qmax, 0)
    for u in grid:
        for q in range(qmax + 1):
            kz = koszul_at(engine, u, q)
            for p in range(engine.n + 1):
                val = kz.xi[p]
                if val:
                    entries[(p, q, tuple(u))] = val
    return BettiTable(engine.n, qmax, entries)


def pointwise_dimension(engine: FiltrationHomology, table: BettiTable, u: Grade, q: int) -> tuple[int, int]:
    """(dim H_q(X^u), alternating sum over v <= u of xi_j^q(v)).

    Equality of the two numbers at every grade is the pointwise dimension
    identity for one-critical filtrations.
    """
    lhs = engine.homology_at(u).dim(q)
    rhs = sum(
        (-1) ** j * table.sum_below(j, q, u) for j in range(engine.n + 1)
    )
    return lhs, rhs
