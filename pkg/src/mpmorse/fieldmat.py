"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced to [0, p).  Everything
here is deterministic: elimination always picks the first usable pivot in
row/column order, so kernel bases, image bases, and completed bases come out
the same on every run.  That stability is load-bearing; downstream code
freezes basis-dependent output (coset representatives, report files) into
golden tests.

No floating point anywhere.  Inverses are computed with Fermat's little
theorem, which is fine for the small p used here.
"""

from __future__ import annotations

import numpy as np


class FieldError(ValueError):
    """Raised for invalid field parameters or shape mismatches."""


class RepresentationError(RuntimeError):
    """Raised when a vector expected to lie in a span does not.

    Signals a broken precondition in quotient constructions, e.g. a chain
    map that fails to send cycles to cycles.
    """


def validate_prime(p: int) -> int:
    """Checks that p is a prime >= 2 and returns it.

    Trial division is enough: fields used in anger here are tiny (2, 3, 5...).
    """
    if not isinstance(p, int) or p < 2:
        raise FieldError(f"field order must be an integer >= 2, got {p!r}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise FieldError(f"field order must be prime, got {p}")
        d += 1
    return p


def _inv_mod(a: int, p: int) -> int:
    return pow(a, p - 2, p)


class FpMatrix:
    """An immutable-by-convention matrix over F_p.

    Wraps an int64 numpy array reduced mod p.  Rows and columns may be zero;
    empty matrices are first-class citizens because chain groups routinely
    vanish in low or high degrees.
    """

    __slots__ = ("a", "p")

    def __init__(self, a, p: int):
        validate_prime(p)
        arr = np.asarray(a, dtype=np.int64)
        if arr.ndim != 2:
            raise FieldError(f"expected a 2-d array, got shape {arr.shape}")
        self.a = np.mod(arr, p)
        self.p = p

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def is_zero(self) -> bool:
        return bool(np.all(self.a == 0))

    def copy(self) -> "FpMatrix":
        return FpMatrix(self.a.copy(), self.p)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.a.T.copy(), self.p)

    def column(self, j: int) -> "FpMatrix":
        return FpMatrix(self.a[:, j : j + 1].copy(), self.p)

    def take_columns(self, js) -> "FpMatrix":
        return FpMatrix(self.a[:, list(js)].copy(), self.p)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix((self.a * (c % self.p)) % self.p, self.p)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise FieldError(f"cannot multiply {self.shape} by {other.shape}")
        # int64 product: entries < p^2 * cols stays far below 2^63 for small p.
        return FpMatrix(self.a @ other.a, self.p)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise FieldError(f"shape mismatch {self.shape} vs {other.shape}")
        return FpMatrix(self.a + other.a, self.p)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise FieldError(f"shape mismatch {self.shape} vs {other.shape}")
        return FpMatrix(self.a - other.a, self.p)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(-self.a, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(
            np.array_equal(self.a, other.a)
        )

    def __hash__(self):
        return hash((self.p, self.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.shape})"

    def _check_field(self, other: "FpMatrix") -> None:
        if self.p != other.p:
            raise FieldError(f"field mismatch: {self.p} vs {other.p}")


def hstack(mats: list[FpMatrix], p: int | None = None) -> FpMatrix:
    """Concatenates matrices side by side; all must share a row count."""
    if not mats:
        if p is None:
            raise FieldError("hstack of no matrices needs an explicit field")
        return FpMatrix.zeros(0, 0, p)
    q = mats[0].p
    rows = mats[0].rows
    for m in mats:
        if m.p != q or m.rows != rows:
            raise FieldError("hstack needs matching field and row count")
    return FpMatrix(np.hstack([m.a for m in mats]), q)


def vstack(mats: list[FpMatrix], p: int | None = None) -> FpMatrix:
    """Concatenates matrices top to bottom; all must share a column count."""
    if not mats:
        if p is None:
            raise FieldError("vstack of no matrices needs an explicit field")
        return FpMatrix.zeros(0, 0, p)
    q = mats[0].p
    cols = mats[0].cols
    for m in mats:
        if m.p != q or m.cols != cols:
            raise FieldError("vstack needs matching field and column count")
    return FpMatrix(np.vstack([m.a for m in mats]), q)


def block_diagonal(mats: list[FpMatrix], p: int) -> FpMatrix:
    """Places matrices along the diagonal, zero elsewhere."""
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        if m.p != p:
            raise FieldError("block_diagonal needs a uniform field")
        out[r : r + m.rows, c : c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return FpMatrix(out, p)


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with deterministic pivoting.

    Scans columns left to right; within a column takes the first nonzero
    entry at or below the current row.  Returns the reduced matrix and the
    list of pivot column indices.
    """
    r = np.mod(a.astype(np.int64, copy=True), p)
    m, n = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            r[[row, i]] = r[[i, row]]
        inv = _inv_mod(int(r[row, col]), p)
        r[row] = (r[row] * inv) % p
        other = r[:, col].copy()
        other[row] = 0
        mask = other != 0
        if np.any(mask):
            r[mask] = (r[mask] - np.outer(other[mask], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, list[int]]:
    """Reduced row echelon form of m together with its pivot columns."""
    r, pivots = _rref(m.a, m.p)
    return FpMatrix(r, m.p), pivots


def rank(m: FpMatrix) -> int:
    """Rank over F_p.  rank of an empty matrix is 0."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref(m.a, m.p)[1])


def kernel_basis(m: FpMatrix) -> FpMatrix:
    """Basis of the right null space, as columns.

    Uses the standard free-column construction from the reduced echelon
    form, emitting one basis vector per free column in ascending column
    order.  Shape is (cols, nullity).
    """
    n = m.cols
    if n == 0:
        return FpMatrix.zeros(0, 0, m.p)
    if m.rows == 0:
        return FpMatrix.identity(n, m.p)
    r, pivots = _rref(m.a, m.p)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, c in enumerate(pivots):
            out[c, k] = (-r[i, f]) % m.p
    return FpMatrix(out, m.p)


def image_basis(m: FpMatrix) -> FpMatrix:
    """Basis of the column space: the original columns at pivot positions.

    Pivot columns of the echelon form are exactly the columns not in the
    span of earlier ones, so this is the greedy left-to-right choice.
    """
    if m.rows == 0 or m.cols == 0:
        return FpMatrix.zeros(m.rows, 0, m.p)
    _, pivots = _rref(m.a, m.p)
    return m.take_columns(pivots)


def solve_in_span(basis: FpMatrix, target: FpMatrix) -> FpMatrix | None:
    """Coefficients x with basis @ x == target, or None if unsolvable.

    target may have several columns; None is returned if any of them fails,
    use solve_many for per-column resolution.  When basis columns are
    linearly independent the coefficients are unique.
    """
    got = solve_many(basis, target)
    if got is None:
        return None
    x, ok = got
    if not all(ok):
        return None
    return x


def solve_many(basis: FpMatrix, targets: FpMatrix) -> tuple[FpMatrix, list[bool]] | None:
    """Solves basis @ X == targets column by column.

    Returns (X, ok) where ok[j] says whether column j was solvable; columns
    that fail are zero in X.  Returns None only on shape/field mismatch via
    exception; the Optional is kept for symmetry with solve_in_span.
    Coefficients are taken from the reduced echelon form of the augmented
    matrix, which makes them unique when basis has independent columns and
    deterministic otherwise.
    """
    basis._check_field(targets)
    if basis.rows != targets.rows:
        raise FieldError(f"row mismatch {basis.shape} vs {targets.shape}")
    k = basis.cols
    t = targets.cols
    if t == 0:
        return FpMatrix.zeros(k, 0, basis.p), []
    if basis.rows == 0:
        # Everything is trivially solvable with zero coefficients.
        return FpMatrix.zeros(k, t, basis.p), [True] * t
    aug = np.hstack([basis.a, targets.a])
    r, pivots = _rref(aug, basis.p)
    x = np.zeros((k, t), dtype=np.int64)
    ok = [True] * t
    base_pivots = [c for c in pivots if c < k]
    for j in range(t):
        if (k + j) in pivots:
            ok[j] = False
            continue
        for i, c in enumerate(base_pivots):
            x[c, j] = r[i, k + j]
    return FpMatrix(x, basis.p), ok


class EchelonSpan:
    """Incremental span tracker over F_p.

    Keeps a reduced echelon basis of everything added so far.  add() reports
    whether the vector increased the span; contains() tests membership
    without mutating.  Used for greedy basis completion, where scan order
    decides which generators survive.
    """

    def __init__(self, ambient_dim: int, p: int):
        validate_prime(p)
        self.n = ambient_dim
        self.p = p
        self._rows: list[np.ndarray] = []
        self._pivot_of_row: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, v: np.ndarray) -> np.ndarray:
        w = np.mod(v.astype(np.int64, copy=True), self.p)
        for row, piv in zip(self._rows, self._pivot_of_row):
            c = w[piv]
            if c:
                w = (w - c * row) % self.p
        return w

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self._reduce(v))

    def add(self, v: np.ndarray) -> bool:
        """Adds v to the span; True iff the rank grew."""
        w = self._reduce(v)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        w = (w * _inv_mod(int(w[piv]), self.p)) % self.p
        # Back-substitute into existing rows to stay fully reduced.
        for i, row in enumerate(self._rows):
            c = row[piv]
            if c:
                self._rows[i] = (row - c * w) % self.p
        self._rows.append(w)
        self._pivot_of_row.append(piv)
        return True


def complete_basis(base: FpMatrix, candidates: FpMatrix) -> FpMatrix:
    """Extends span(base) by greedily chosen candidate columns.

    Scans candidate columns left to right and keeps those that enlarge the
    span.  Returns the kept original columns (not their reductions), so the
    result is a transversal of span(base) inside span(base + candidates).
    """
    base._check_field(candidates)
    if base.rows != candidates.rows:
        raise FieldError("ambient dimension mismatch in complete_basis")
    span = EchelonSpan(base.rows, base.p)
    for j in range(base.cols):
        span.add(base.a[:, j])
    kept: list[int] = []
    for j in range(candidates.cols):
        if span.add(candidates.a[:, j]):
            kept.append(j)
    return candidates.take_columns(kept)


def induced_quotient_map(
    f: FpMatrix,
    dom_cycles: FpMatrix,
    dom_boundaries: FpMatrix,
    cod_cycles: FpMatrix,
    cod_boundaries: FpMatrix,
) -> FpMatrix:
    """Matrix of the map induced by f on cycles/boundaries quotients.

    Both quotients use the deterministic representative scheme: complete the
    boundary basis by cycle basis columns in order.  Raises
    RepresentationError if f fails to carry dom cycles into the codomain
    cycle space modulo boundaries, i.e. if f is not a chain map on the part
    that matters.
    """
    dom = quotient_space(dom_cycles, dom_boundaries)
    cod = quotient_space(cod_cycles, cod_boundaries)
    return induced_on_quotient(f, dom, cod)


class QuotientSpace:
    """A subquotient cycles/boundaries with a frozen representative basis.

    reps columns are cycle-basis columns that extend the boundary basis, so
    dim = reps.cols and every cycle is uniquely (reps | boundaries)-expressible.
    """

    __slots__ = ("cycles", "boundaries", "reps", "p")

    def __init__(self, cycles: FpMatrix, boundaries: FpMatrix, reps: FpMatrix):
        self.cycles = cycles
        self.boundaries = boundaries
        self.reps = reps
        self.p = cycles.p

    @property
    def dim(self) -> int:
        return self.reps.cols

    @property
    def ambient_dim(self) -> int:
        return self.reps.rows


def quotient_space(cycles: FpMatrix, boundaries: FpMatrix) -> QuotientSpace:
    """Builds the subquotient with its canonical representative basis."""
    cycles._check_field(boundaries)
    if cycles.rows != boundaries.rows:
        raise FieldError("cycles and boundaries live in different ambients")
    reps = complete_basis(boundaries, cycles)
    return QuotientSpace(cycles, boundaries, reps)


def induced_on_quotient(f: FpMatrix, dom: QuotientSpace, cod: QuotientSpace) -> FpMatrix:
    """Matrix (cod.dim x dom.dim) of the induced map on subquotients."""
    if f.cols != dom.ambient_dim or f.rows != cod.ambient_dim:
        raise FieldError(
            f"map shape {f.shape} does not match ambients {dom.ambient_dim} -> {cod.ambient_dim}"
        )
    targets = f @ dom.reps
    frame = hstack([cod.reps, cod.boundaries], f.p)
    got = solve_many(frame, targets)
    assert got is not None
    x, ok = got
    bad = [j for j, good in enumerate(ok) if not good]
    if bad:
        raise RepresentationError(
            f"images of representative columns {bad} are not cycles modulo boundaries"
        )
    return FpMatrix(x.a[: cod.dim, :], f.p)
