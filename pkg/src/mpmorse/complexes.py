"""Finite cell complexes with explicit incidence numbers.

A complex is a set of cells, each with a dimension, plus an incidence
function kappa on ordered cell pairs subject to two conditions:

(i)  kappa(tau, sigma) != 0 only when dim tau == dim sigma + 1;
(ii) for every pair (tau, sigma), sum over rho of
     kappa(tau, rho) * kappa(rho, sigma) == 0.

Condition (ii) is d*d == 0 in disguise, so chain complexes and homology come
for free once kappa validates.  Cells are ordered by (dim, id) everywhere;
all matrices respect that order, which keeps bases reproducible.

Subcomplexes are views onto a parent complex given by a member id set.  All
homological computation happens on subcomplexes; the full complex is just
the view with every cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .fieldmat import FpMatrix, QuotientSpace, image_basis, kernel_basis, quotient_space, validate_prime


class NotASubcomplexError(ValueError):
    """Raised when a member set is not closed under taking faces."""


@dataclass(frozen=True, order=True)
class Cell:
    """A single cell.  Ordering is (dim, id) to match matrix layouts."""

    sort_index: tuple[int, int] = field(init=False, repr=False, compare=True)
    id: int = field(compare=False)
    dim: int = field(compare=False)

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError(f"cell {self.id} has negative dimension {self.dim}")
        object.__setattr__(self, "sort_index", (self.dim, self.id))


@dataclass(frozen=True)
class ComplexValidation:
    """Outcome of incidence validation.

    bad_dimension: pairs violating condition (i), including unknown ids.
    bad_square: pairs (tau, sigma) where the composite sum is nonzero.
    """

    bad_dimension: tuple[tuple[int, int], ...]
    bad_square: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.bad_dimension and not self.bad_square


@dataclass(frozen=True)
class HomologyData:
    """Homology of a (sub)complex in its own chain coordinates.

    spaces[q] is the cycles/boundaries quotient in degree q with its frozen
    representative basis; indices run 0..top where top is the parent
    complex dimension.
    """

    spaces: tuple[QuotientSpace, ...]

    def dim(self, q: int) -> int:
        if 0 <= q < len(self.spaces):
            return self.spaces[q].dim
        return 0

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)


class CellComplex:
    """An immutable cell complex over F_p."""

    def __init__(
        self,
        cells: Iterable[Cell],
        incidence: Mapping[tuple[int, int], int],
        p: int = 2,
    ):
        validate_prime(p)
        cell_list = sorted(cells)
        ids = [c.id for c in cell_list]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate cell ids: {dupes}")
        self.p = p
        self.cells: tuple[Cell, ...] = tuple(cell_list)
        self._by_id: dict[int, Cell] = {c.id: c for c in self.cells}
        inc: dict[tuple[int, int], int] = {}
        for (t, s), coeff in incidence.items():
            c = coeff % p
            if c:
                inc[(t, s)] = c
        self.incidence: dict[tuple[int, int], int] = inc
        self._of_dim: dict[int, tuple[Cell, ...]] = {}
        for c in self.cells:
            self._of_dim.setdefault(c.dim, ())
        for d in self._of_dim:
            self._of_dim[d] = tuple(c for c in self.cells if c.dim == d)
        # Faces of each cell, for closure checks and restricted boundaries.
        self._faces: dict[int, tuple[tuple[int, int], ...]] = {c.id: () for c in self.cells}
        by_tau: dict[int, list[tuple[int, int]]] = {}
        for (t, s), coeff in sorted(inc.items()):
            by_tau.setdefault(t, []).append((s, coeff))
        for t, pairs in by_tau.items():
            if t in self._faces:
                self._faces[t] = tuple(pairs)

    @property
    def dim(self) -> int:
        """Top cell dimension; -1 for the empty complex."""
        return max((c.dim for c in self.cells), default=-1)

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def cell(self, cid: int) -> Cell:
        return self._by_id[cid]

    def cells_of_dim(self, q: int) -> tuple[Cell, ...]:
        return self._of_dim.get(q, ())

    def faces(self, cid: int) -> tuple[tuple[int, int], ...]:
        """(face id, coefficient) pairs of a cell, sorted by face id."""
        return self._faces[cid]

    def validate(self) -> ComplexValidation:
        """Checks incidence conditions (i) and (ii) exhaustively."""
        bad_dim: list[tuple[int, int]] = []
        for (t, s) in self.incidence:
            if t not in self._by_id or s not in self._by_id:
                bad_dim.append((t, s))
                continue
            if self._by_id[t].dim != self._by_id[s].dim + 1:
                bad_dim.append((t, s))
        by_first: dict[int, list[tuple[int, int]]] = {}
        for (t, s), coeff in self.incidence.items():
            by_first.setdefault(t, []).append((s, coeff))
        sums: dict[tuple[int, int], int] = {}
        for t, mids in by_first.items():
            for (r, c1) in mids:
                for (s, c2) in by_first.get(r, ()):
                    key = (t, s)
                    sums[key] = (sums.get(key, 0) + c1 * c2) % self.p
        bad_square = sorted(k for k, v in sums.items() if v)
        return ComplexValidation(tuple(sorted(bad_dim)), tuple(bad_square))

    def subcomplex(self, members: Iterable[int]) -> "Subcomplex":
        ms = frozenset(members)
        unknown = ms - self._by_id.keys()
        if unknown:
            raise KeyError(f"unknown cell ids: {sorted(unknown)}")
        return Subcomplex(self, ms)

    def full(self) -> "Subcomplex":
        return Subcomplex(self, frozenset(self._by_id))

    def boundary_matrix(self, q: int) -> FpMatrix:
        return self.full().boundary_matrix(q)

    def homology(self) -> HomologyData:
        return self.full().homology()

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells)

    def __repr__(self) -> str:
        return f"CellComplex(n_cells={self.n_cells}, dim={self.dim}, p={self.p})"


class Subcomplex:
    """A subset of a complex's cells, viewed as a chain complex.

    The view does not itself enforce closure under faces; call is_closed()
    or rely on construction (sublevel sets are closed by monotonicity).
    Boundary matrices restrict kappa to member cells, which is only a chain
    complex when the set is closed, or when used as a relative (quotient)
    complex by the caller.
    """

    def __init__(self, parent: CellComplex, members: frozenset[int]):
        self.parent = parent
        self.members = members
        self._of_dim: dict[int, tuple[Cell, ...]] = {}
        self._index: dict[int, dict[int, int]] = {}

    @property
    def p(self) -> int:
        return self.parent.p

    @property
    def n_cells(self) -> int:
        return len(self.members)

    def cells_of_dim(self, q: int) -> tuple[Cell, ...]:
        if q not in self._of_dim:
            self._of_dim[q] = tuple(
                c for c in self.parent.cells_of_dim(q) if c.id in self.members
            )
        return self._of_dim[q]

    def index_of_dim(self, q: int) -> dict[int, int]:
        if q not in self._index:
            self._index[q] = {c.id: i for i, c in enumerate(self.cells_of_dim(q))}
        return self._index[q]

    def is_closed(self) -> tuple[tuple[int, int], ...]:
        """Pairs (cell, missing face) witnessing a closure failure; empty if closed."""
        bad = []
        for cid in self.members:
            for (f, _) in self.parent.faces(cid):
                if f not in self.members:
                    bad.append((cid, f))
        return tuple(sorted(bad))

    def boundary_matrix(self, q: int) -> FpMatrix:
        """kappa restricted to member cells: (q-1)-cells by q-cells."""
        rows = self.cells_of_dim(q - 1)
        cols = self.cells_of_dim(q)
        a = np.zeros((len(rows), len(cols)), dtype=np.int64)
        row_index = self.index_of_dim(q - 1)
        for j, c in enumerate(cols):
            for (f, coeff) in self.parent.faces(c.id):
                i = row_index.get(f)
                if i is not None:
                    a[i, j] = coeff
        return FpMatrix(a, self.p)

    def homology(self) -> HomologyData:
        """Cycles/boundaries quotients in degrees 0..parent.dim."""
        top = self.parent.dim
        spaces = []
        for q in range(max(top, -1) + 1):
            bq = self.boundary_matrix(q)
            bq1 = self.boundary_matrix(q + 1)
            if q == 0:
                cycles = FpMatrix.identity(bq.cols, self.p)
            else:
                cycles = kernel_basis(bq)
            boundaries = image_basis(bq1)
            spaces.append(quotient_space(cycles, boundaries))
        return HomologyData(tuple(spaces))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subcomplex):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"Subcomplex({len(self.members)} of {self.parent.n_cells} cells)"


def chain_inclusion(small: Subcomplex, big: Subcomplex, q: int) -> FpMatrix:
    """Chain-level inclusion matrix on q-chains, big-cells by small-cells."""
    if small.parent is not big.parent:
        raise ValueError("chain_inclusion needs subcomplexes of the same parent")
    extra = small.members - big.members
    if extra:
        raise NotASubcomplexError(f"cells {sorted(extra)[:5]} not in the larger subcomplex")
    rows = big.cells_of_dim(q)
    cols = small.cells_of_dim(q)
    a = np.zeros((len(rows), len(cols)), dtype=np.int64)
    big_index = big.index_of_dim(q)
    for j, c in enumerate(cols):
        a[big_index[c.id], j] = 1
    return FpMatrix(a, small.p)


def relative_homology_dims(x: Subcomplex, a: Subcomplex) -> list[int]:
    """Dimensions of H_q(x, a) for q = 0 .. parent.dim + 1.

    Computed on the literal quotient complex: delete a's cells from x's
    boundary matrices.  Requires a to be a closed subcomplex of x; raises
    NotASubcomplexError otherwise (closure of a inside x is what makes the
    quotient a chain complex).
    """
    if x.parent is not a.parent:
        raise NotASubcomplexError("relative pair must share a parent complex")
    extra = a.members - x.members
    if extra:
        raise NotASubcomplexError(f"subspace cells {sorted(extra)[:5]} missing from the total space")
    bad = a.is_closed()
    if bad:
        raise NotASubcomplexError(f"subspace not closed under faces: {bad[:5]}")
    rel = Subcomplex(x.parent, x.members - a.members)
    top = x.parent.dim
    dims = []
    for q in range(max(top, -1) + 2):
        bq = rel.boundary_matrix(q)
        bq1 = rel.boundary_matrix(q + 1)
        if q == 0:
            cycles = FpMatrix.identity(bq.cols, x.p)
        else:
            cycles = kernel_basis(bq)
        boundaries = image_basis(bq1)
        dims.append(quotient_space(cycles, boundaries).dim)
    return dims


@dataclass(frozen=True)
class SimplicialBuild:
    """Result of from_simplices: the complex, simplex-to-id map, added faces."""

    complex: CellComplex
    id_of: dict[frozenset[int], int]
    added: tuple[tuple[int, ...], ...]


def from_simplices(
    simplices: Iterable[Iterable[int]],
    p: int = 2,
    vertex_order: list[int] | None = None,
) -> SimplicialBuild:
    """Builds a simplicial complex with standard alternating incidence.

    Simplices are given as vertex collections; missing faces are added
    automatically and reported in the result.  Vertices are compared by
    vertex_order position when given, else by their natural order.  The face
    obtained by deleting the vertex in position i (0-based, in vertex order)
    gets coefficient (-1)^i.
    """
    pos: dict[int, int] = {}
    if vertex_order is not None:
        pos = {v: i for i, v in enumerate(vertex_order)}

    def key(v: int) -> int:
        if vertex_order is not None:
            if v not in pos:
                raise ValueError(f"vertex {v} missing from vertex_order")
            return pos[v]
        return v

    given: set[frozenset[int]] = set()
    for s in simplices:
        fs = frozenset(int(v) for v in s)
        if not fs:
            raise ValueError("empty simplex")
        given.add(fs)
    closed: set[frozenset[int]] = set()
    stack = list(given)
    while stack:
        s = stack.pop()
        if s in closed:
            continue
        closed.add(s)
        if len(s) > 1:
            for v in s:
                stack.append(s - {v})
    added = tuple(
        sorted(
            (tuple(sorted(s, key=key)) for s in closed - given),
            key=lambda t: (len(t), t),
        )
    )
    ordered = sorted(closed, key=lambda s: (len(s), tuple(sorted(s, key=key))))
    id_of = {s: i for i, s in enumerate(ordered)}
    cells = [Cell(id=i, dim=len(s) - 1) for s, i in id_of.items()]
    incidence: dict[tuple[int, int], int] = {}
    for s, i in id_of.items():
        if len(s) == 1:
            continue
        verts = sorted(s, key=key)
        for k in range(len(verts)):
            face = frozenset(verts) - {verts[k]}
            incidence[(i, id_of[face])] = (-1) ** k
    return SimplicialBuild(CellComplex(cells, incidence, p=p), id_of, added)


def simplex_faces(verts: Iterable[int]) -> list[tuple[int, ...]]:
    """All nonempty sub-tuples of a vertex tuple, handy for tests."""
    vs = tuple(sorted(verts))
    out = []
    for r in range(1, len(vs) + 1):
        out.extend(itertools.combinations(vs, r))
    return out
