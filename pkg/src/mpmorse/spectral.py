"""Mayer-Vietoris double complex and its spectral sequence, page by page.

At a grade u the one-step-down sublevels X^{u - e_j}, j = 1..n, cover their
union.  The associated double complex has

    C_{p,q} = direct sum over size-(p+1) direction subsets sigma
              of the q-chains of X^{u - e_sigma},

columns p = 0..n-1, blocks in lexicographic sigma order.  The horizontal
component from sigma to sigma minus its l-th element is (-1)^(|sigma| - l)
times chain inclusion; the vertical component on column p is (-1)^p times
the cell boundary.  Squares then anticommute and the total complex is a
chain complex whose homology is that of the union.

Pages are computed from the column filtration by the standard coset
formula.  With F_p the span of columns <= p and d the total differential,

    Z^r_{p,q} = {a in F_p : d(a) in F_{p-r}},
    E^r_{p,q} = (Z^r_{p,q} + F_{p-1}) / (d(Z^{r-1}_{p+r-1,q-r+2}) + F_{p-1}),

and d^r sends the class of a to the class of d(a).  Representatives are
chosen deterministically: reduced-echelon elimination over the denominator
generators first, then the Z^r kernel basis columns in order.  Everything
downstream (dimension tables, differential ranks) is therefore reproducible.

Degenerate block indices yield zero spaces, matching the convention that an
empty sublevel contributes a zero block rather than shrinking the index set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .complexes import Subcomplex, chain_inclusion
from .fieldmat import FpMatrix, kernel_basis, rank, rref, solve_many
from .filtration import Grade, minus_e
from .koszul import FiltrationHomology, koszul_at


class PageError(AssertionError):
    """Raised when an internal spectral sequence consistency check fails."""


@dataclass
class DoubleComplexAtGrade:
    """The assembled double complex and its total differentials at one grade.

    sigmas[p] lists the direction subsets indexing the blocks of column p.
    total_dim[k] and the offset tables describe T_k = sum of C_{p, k-p};
    D[k] is the total differential T_k -> T_{k-1} with all signs in place.
    """

    n: int
    p: int
    qmax: int
    sigmas: tuple[tuple[tuple[int, ...], ...], ...]
    block_dim: dict[tuple[int, int], int]
    total_dim: dict[int, int]
    col_start: dict[tuple[int, int], int]
    col_end: dict[tuple[int, int], int]
    D: dict[int, FpMatrix]

    @property
    def k_top(self) -> int:
        return self.n - 1 + max(self.qmax, 0)

    def cdim(self, p: int, q: int) -> int:
        return self.block_dim.get((p, q), 0)

    def f_end(self, k: int, p: int) -> int:
        """End offset (exclusive) of the filtration F_p inside T_k."""
        if p < 0:
            return 0
        p = min(p, self.n - 1)
        while p >= 0:
            if (k, p) in self.col_end:
                return self.col_end[(k, p)]
            p -= 1
        return 0


def double_complex_at(engine: FiltrationHomology, u: Grade) -> DoubleComplexAtGrade:
    """Builds the double complex of the one-step-down cover at grade u."""
    n = engine.n
    fld = engine.p
    qmax = max(engine.qmax, 0)
    sigmas = tuple(
        tuple(itertools.combinations(range(1, n + 1), psz + 1)) for psz in range(n)
    )
    subs: dict[tuple[int, ...], Subcomplex] = {}
    for col in sigmas:
        for sigma in col:
            subs[sigma] = engine.sub(engine.f.members(minus_e(u, sigma)))
    ncells: dict[tuple[tuple[int, ...], int], int] = {}
    for sigma, s in subs.items():
        for q in range(qmax + 1):
            ncells[(sigma, q)] = len(s.cells_of_dim(q))
    block_dim: dict[tuple[int, int], int] = {}
    intra: dict[tuple[int, int], dict[tuple[int, ...], int]] = {}
    for p in range(n):
        for q in range(qmax + 1):
            off = 0
            table = {}
            for sigma in sigmas[p]:
                table[sigma] = off
                off += ncells[(sigma, q)]
            if off:
                block_dim[(p, q)] = off
            intra[(p, q)] = table

    total_dim: dict[int, int] = {}
    col_start: dict[tuple[int, int], int] = {}
    col_end: dict[tuple[int, int], int] = {}
    k_top = n - 1 + qmax
    for k in range(k_top + 1):
        off = 0
        for p in range(n):
            q = k - p
            d = block_dim.get((p, q), 0) if 0 <= q <= qmax else 0
            col_start[(k, p)] = off
            off += d
            col_end[(k, p)] = off
        total_dim[k] = off

    D: dict[int, FpMatrix] = {}
    for k in range(1, k_top + 1):
        a = np.zeros((total_dim.get(k - 1, 0), total_dim[k]), dtype=np.int64)
        for p in range(n):
            q = k - p
            if not (0 <= q <= qmax) or block_dim.get((p, q), 0) == 0:
                continue
            cbase = col_start[(k, p)]
            # Vertical component: (-1)^p times the boundary, block per sigma.
            if q - 1 >= 0:
                rbase = col_start[(k - 1, p)]
                vsign = (-1) ** p
                for sigma in sigmas[p]:
                    b = subs[sigma].boundary_matrix(q)
                    if b.rows and b.cols:
                        r0 = rbase + intra[(p, q - 1)][sigma]
                        c0 = cbase + intra[(p, q)][sigma]
                        a[r0 : r0 + b.rows, c0 : c0 + b.cols] = (vsign * b.a) % fld
            # Horizontal component: sigma -> sigma minus l-th element.
            if p - 1 >= 0:
                rbase = col_start[(k - 1, p - 1)]
                for sigma in sigmas[p]:
                    src = subs[sigma]
                    if not src.cells_of_dim(q):
                        continue
                    for l in range(1, len(sigma) + 1):
                        tau = sigma[: l - 1] + sigma[l:]
                        dst = subs[tau]
                        inc = chain_inclusion(src, dst, q)
                        if inc.rows == 0 or inc.cols == 0:
                            continue
                        sign = (-1) ** (len(sigma) - l)
                        r0 = rbase + intra[(p - 1, q)][tau]
                        c0 = cbase + intra[(p, q)][sigma]
                        a[r0 : r0 + inc.rows, c0 : c0 + inc.cols] = (
                            a[r0 : r0 + inc.rows, c0 : c0 + inc.cols] + sign * inc.a
                        ) % fld
        D[k] = FpMatrix(a, fld)

    dc = DoubleComplexAtGrade(
        n=n,
        p=fld,
        qmax=qmax,
        sigmas=sigmas,
        block_dim=block_dim,
        total_dim=total_dim,
        col_start=col_start,
        col_end=col_end,
        D=D,
    )
    for k in range(2, k_top + 1):
        if not (dc.D[k - 1] @ dc.D[k]).is_zero():
            raise PageError(f"total differential fails d*d = 0 at k={k}, grade {tuple(u)}")
    return dc


@dataclass
class SpectralPages:
    """Dimension and differential-rank tables of the pages E^0..E^n.

    dim(r, p, q) returns 0 off the stored support and clamps r above n,
    where the sequence has stabilised; rank(r, p, q) is the rank of
    d^r: E^r_{p,q} -> E^r_{p-r, q+r-1}, zero for r >= n.
    """

    n: int
    qmax: int
    dims: dict[tuple[int, int, int], int]
    ranks: dict[tuple[int, int, int], int]

    def dim(self, r: int, p: int, q: int) -> int:
        if r < 0:
            raise ValueError(f"page index must be >= 0, got {r}")
        r = min(r, self.n)
        return self.dims.get((r, p, q), 0)

    def rank(self, r: int, p: int, q: int) -> int:
        if r >= self.n:
            return 0
        return self.ranks.get((r, p, q), 0)

    def infinity_dim(self, p: int, q: int) -> int:
        return self.dim(self.n, p, q)


def _zspace(
    dc: DoubleComplexAtGrade,
    cache: dict[tuple[int, int, int], np.ndarray],
    r: int,
    p: int,
    k: int,
) -> np.ndarray:
    """Basis columns of Z^r_{p, k-p}, embedded in T_k coordinates."""
    key = (r, p, k)
    got = cache.get(key)
    if got is not None:
        return got
    tdim = dc.total_dim.get(k, 0)
    if tdim == 0 or p < 0:
        out = np.zeros((tdim, 0), dtype=np.int64)
        cache[key] = out
        return out
    c = dc.f_end(k, p)
    if c == 0:
        out = np.zeros((tdim, 0), dtype=np.int64)
        cache[key] = out
        return out
    rcut = dc.f_end(k - 1, p - r) if (k - 1) in dc.total_dim else 0
    dk = dc.D.get(k)
    if dk is None or dk.rows == 0:
        sub = FpMatrix.zeros(0, c, dc.p)
    else:
        sub = FpMatrix(dk.a[rcut:, :c], dc.p)
    kern = kernel_basis(sub)
    out = np.zeros((tdim, kern.cols), dtype=np.int64)
    out[:c, :] = kern.a
    cache[key] = out
    return out


def compute_pages(
    engine: FiltrationHomology, u: Grade, strict: bool = False
) -> SpectralPages:
    """Computes every page dimension and differential rank at grade u.

    Results are cached per configuration of the one-step-down member sets,
    so grades with identical covers share a single computation.  strict=True
    adds span-level sanity checks (denominator inside numerator) on top of
    the always-on page recursion and d*d = 0 assertions.
    """
    u = tuple(u)
    key = tuple(
        engine.f.members(minus_e(u, sigma))
        for i in range(1, engine.n + 1)
        for sigma in itertools.combinations(range(1, engine.n + 1), i)
    )
    cache = getattr(engine, "_pages", None)
    if cache is None:
        cache = {}
        engine._pages = cache
    got = cache.get(key)
    if got is not None:
        return got

    dc = double_complex_at(engine, u)
    pages = _pages_from_double(dc, strict=strict)
    cache[key] = pages
    return pages


def _unit_columns(tdim: int, upto: int) -> np.ndarray:
    out = np.zeros((tdim, upto), dtype=np.int64)
    for j in range(upto):
        out[j, j] = 1
    return out


def _pages_from_double(dc: DoubleComplexAtGrade, strict: bool) -> SpectralPages:
    n, fld, qmax = dc.n, dc.p, dc.qmax
    dims: dict[tuple[int, int, int], int] = {}
    ranks: dict[tuple[int, int, int], int] = {}
    slots = [(p, q) for p in range(n) for q in range(qmax + 1)]

    for (p, q) in slots:
        d0 = dc.cdim(p, q)
        if d0:
            dims[(0, p, q)] = d0

    # rank d^0 = rank of the vertical slice C_{p,q} -> C_{p,q-1}.
    for (p, q) in slots:
        if q == 0 or dc.cdim(p, q) == 0 or dc.cdim(p, q - 1) == 0:
            continue
        k = p + q
        rs, re = dc.col_start[(k - 1, p)], dc.col_end[(k - 1, p)]
        cs, ce = dc.col_start[(k, p)], dc.col_end[(k, p)]
        rk = rank(FpMatrix(dc.D[k].a[rs:re, cs:ce], fld))
        if rk:
            ranks[(0, p, q)] = rk

    zcache: dict[tuple[int, int, int], np.ndarray] = {}
    reps_of: dict[tuple[int, int, int], np.ndarray] = {}
    denom_of: dict[tuple[int, int, int], np.ndarray] = {}

    for r in range(1, n + 1):
        for (p, q) in slots:
            prev = dims.get((r - 1, p, q), 0)
            if prev == 0:
                # Subquotient of the zero space; record nothing.
                reps_of[(r, p, q)] = np.zeros((dc.total_dim.get(p + q, 0), 0), dtype=np.int64)
                continue
            k = p + q
            tdim = dc.total_dim.get(k, 0)
            zg = _zspace(dc, zcache, r, p, k)
            # Denominator: d(Z^{r-1} at (p+r-1, q-r+2)) plus all of F_{p-1}.
            zup = _zspace(dc, zcache, r - 1, p + r - 1, k + 1)
            if zup.shape[1] and (k + 1) in dc.D:
                dz = (dc.D[k + 1].a @ zup) % fld
            else:
                dz = np.zeros((tdim, 0), dtype=np.int64)
            funits = _unit_columns(tdim, dc.f_end(k, p - 1))
            denom = np.hstack([dz, funits])
            denom_of[(r, p, q)] = denom
            aug = FpMatrix(np.hstack([denom, zg]), fld)
            _, pivots = rref(aug)
            a = denom.shape[1]
            kept = [j - a for j in pivots if j >= a]
            reps = zg[:, kept]
            reps_of[(r, p, q)] = reps
            if reps.shape[1]:
                dims[(r, p, q)] = reps.shape[1]
            if strict:
                num = FpMatrix(
                    np.hstack([_unit_columns(tdim, dc.f_end(k, p - 1)), zg]), fld
                )
                both = FpMatrix(np.hstack([num.a, denom]), fld)
                if rank(num) != rank(both):
                    raise PageError(
                        f"denominator escapes numerator at r={r}, (p,q)=({p},{q})"
                    )

    # Ranks of d^r for r = 1..n-1 (zero beyond by bidegree reasons).
    for r in range(1, n):
        for (p, q) in slots:
            s = dims.get((r, p, q), 0)
            tp, tq = p - r, q + r - 1
            t = dims.get((r, tp, tq), 0)
            if s == 0 or t == 0:
                continue
            k = p + q
            src = reps_of[(r, p, q)]
            imgs = (dc.D[k].a @ src) % fld
            frame = FpMatrix(
                np.hstack([reps_of[(r, tp, tq)], denom_of[(r, tp, tq)]]), fld
            )
            got = solve_many(frame, FpMatrix(imgs, fld))
            assert got is not None
            x, ok = got
            if not all(ok):
                raise PageError(
                    f"d^{r} image leaves the page at (p,q)=({p},{q}), targets {ok}"
                )
            rk = rank(FpMatrix(x.a[:t, :], fld))
            if rk:
                ranks[(r, p, q)] = rk

    pages = SpectralPages(n=n, qmax=qmax, dims=dims, ranks=ranks)

    # Page recursion: passing to the next page kills exactly the image and
    # coimage of d^r.  Holding at every slot certifies the coset machinery.
    for r in range(n):
        for (p, q) in slots:
            nxt = pages.dim(r + 1, p, q)
            cur = pages.dim(r, p, q)
            out_rk = pages.rank(r, p, q) if r >= 1 else ranks.get((0, p, q), 0)
            in_rk = (
                pages.rank(r, p + r, q - r + 1)
                if r >= 1
                else ranks.get((0, p, q + 1), 0)
            )
            if nxt != cur - out_rk - in_rk:
                raise PageError(
                    f"page recursion fails at r={r}, (p,q)=({p},{q}): "
                    f"{nxt} != {cur} - {out_rk} - {in_rk}"
                )
    return pages


def check_e1_is_koszul(
    engine: FiltrationHomology, u: Grade, pages: SpectralPages
) -> bool:
    """E^1 columns match the Koszul complex away from its augmentation.

    dim E^1_{p,q} must equal dim K_{p+1} in degree q, and for p >= 1 the
    rank of d^1 must equal the rank of the Koszul differential d_{p+1}.
    """
    for q in range(pages.qmax + 1):
        kz = koszul_at(engine, u, q)
        for p in range(engine.n):
            if pages.dim(1, p, q) != kz.dim(p + 1):
                return False
            if p >= 1 and pages.rank(1, p, q) != kz.rank_d(p + 1):
                return False
    return True


def check_e2_dims(engine: FiltrationHomology, u: Grade, pages: SpectralPages) -> bool:
    """E^2 dimensions against merge rank and Betti numbers.

    dim E^2_{0,q} = rank(merge at u in degree q) + xi_1^q(u) and, for
    1 <= p <= n-1, dim E^2_{p,q} = xi_{p+1}^q(u).
    """
    for q in range(pages.qmax + 1):
        kz = koszul_at(engine, u, q)
        if pages.dim(2, 0, q) != kz.merge_rank + kz.xi[1]:
            return False
        for p in range(1, engine.n):
            if pages.dim(2, p, q) != kz.xi[p + 1]:
                return False
    return True


def check_convergence(engine: FiltrationHomology, u: Grade, pages: SpectralPages) -> bool:
    """Anti-diagonal sums of the last page give the union's homology."""
    union = engine.union_homology(u)
    for k in range(pages.n + pages.qmax + 1):
        total = sum(
            pages.infinity_dim(p, k - p) for p in range(pages.n)
        )
        if total != union.dim(k):
            return False
    return True


def check_einfty_column(engine: FiltrationHomology, u: Grade, pages: SpectralPages) -> bool:
    """E^infinity at p = 0 equals the rank of the merge into the union."""
    for q in range(pages.qmax + 1):
        if pages.infinity_dim(0, q) != rank(engine.merge_into_union(u, q)):
            return False
    return True
