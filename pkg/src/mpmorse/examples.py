"""Named example filtrations and a seeded random generator.

The named builders realize the sharpness constructions for the lower and
upper bounds: filtrations of the boundary of the 3-simplex, of the
octahedron (a sphere with a square equator), and of the boundary of the
4-simplex (a 3-sphere with a 2-sphere equator), plus the cross-polytope
family fig1_n that achieves equality in the improved lower bound at
q = n - 1 for n = 1, 2, 3.

Each builder returns the filtration together with the expected values at
its top grade: critical counts, the nonzero Betti entries, and which bounds
are attained with equality.  Tests compare those numbers against the engine
exhaustively (all unlisted entries must be zero at that grade).

Grade assignments follow a one-per-direction pattern: a cell meant to be
missing from the one-step-down sublevel along direction j enters at u - e_j,
and shared faces enter at the meet of their cofaces' grades.  This is the
monotone assignment with no cell entering at the top grade itself, which is
what makes the lower-bound examples critical-point-free there.

The random generator samples an Erdos-Renyi graph, takes its clique complex
up to max_dim, trims maximal simplices until at most max_cells remain, and
grades each vertex uniformly in range; a simplex enters at the
coordinatewise maximum of its vertices.  Monotonicity and one-criticality
hold by construction, and identical seeds give identical filtrations.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .complexes import Cell, CellComplex, from_simplices
from .fieldmat import FieldError, validate_prime
from .filtration import Grade, MultiFiltration

GradedSimplices = list[tuple[tuple[int, ...], Grade]]


class ParametersOutOfRange(ValueError):
    """Raised by random_filtration for parameters outside documented limits."""


@dataclass(frozen=True)
class Expected:
    """Ground-truth values at the top grade of a named example."""

    u: Grade
    c: dict[int, int]
    xi: dict[tuple[int, int], int]
    tight_lower: tuple[int, ...] = ()
    tight_upper: tuple[int, ...] = ()


def _simplicial_filtration(graded: GradedSimplices, n: int, p: int) -> MultiFiltration:
    build = from_simplices([s for s, _ in graded], p=p)
    if build.added:
        raise ValueError(f"builder listed incomplete simplices; missing {build.added}")
    entrance = {build.id_of[frozenset(s)]: tuple(g) for s, g in graded}
    f = MultiFiltration(build.complex, n, entrance)
    v = f.validate()
    if not v.ok:
        raise ValueError(f"builder produced an invalid filtration: {v}")
    return f


def _lower_i_simplices() -> GradedSimplices:
    zero = (0, 0, 0)
    graded: GradedSimplices = [((v,), zero) for v in (1, 2, 3, 4)]
    graded += [(e, zero) for e in ((1, 2), (1, 3), (2, 3))]
    graded.append(((1, 2, 3), zero))
    graded.append(((1, 4), (0, 0, 1)))
    graded.append(((2, 4), (0, 1, 0)))
    graded.append(((3, 4), (1, 0, 0)))
    graded.append(((1, 2, 4), (0, 1, 1)))
    graded.append(((1, 3, 4), (1, 0, 1)))
    graded.append(((2, 3, 4), (1, 1, 0)))
    return graded


def _lower_ii_simplices() -> GradedSimplices:
    zero = (0, 0, 0)
    graded: GradedSimplices = [((v,), zero) for v in (1, 2, 3, 4)]
    graded += [(e, zero) for e in itertools.combinations((1, 2, 3, 4), 2)]
    graded.append(((1, 2, 3), zero))
    graded.append(((1, 2, 4), (0, 1, 1)))
    graded.append(((1, 3, 4), (1, 0, 1)))
    graded.append(((2, 3, 4), (1, 1, 0)))
    return graded


def lower_i(p: int = 2) -> tuple[MultiFiltration, Expected]:
    """Sphere grown from one filled face and the vertex set; n = 3.

    The boundary of the 3-simplex, face 123 and all vertices present from
    the start, each remaining face entering one step below the top grade in
    its own direction and edges at the meets.  At u = (1,1,1) nothing is
    critical while xi_0^2 = xi_3^0 = 1, so the improved lower bound for c_2
    is attained: 0 >= 1 + 0 - 0 - 1.
    """
    f = _simplicial_filtration(_lower_i_simplices(), n=3, p=p)
    exp = Expected(u=(1, 1, 1), c={}, xi={(0, 2): 1, (3, 0): 1}, tight_lower=(2,))
    return f, exp


def lower_ii(p: int = 2) -> tuple[MultiFiltration, Expected]:
    """Sphere grown from one filled face and the full 1-skeleton; n = 3.

    Like lower_i but with every edge present from the start, so the three
    missing faces close independent 1-cycles.  At u = (1,1,1):
    xi_0^2 = xi_2^1 = 1, no critical cells, bound attained as 0 >= 1 - 1.
    """
    f = _simplicial_filtration(_lower_ii_simplices(), n=3, p=p)
    exp = Expected(u=(1, 1, 1), c={}, xi={(0, 2): 1, (2, 1): 1}, tight_lower=(2,))
    return f, exp


def _cross_polytope(axes: int) -> list[tuple[int, ...]]:
    """Boundary-of-cross-polytope simplices on 2*axes vertices.

    Axis a contributes the antipodal vertex pair (2a-1, 2a); a simplex picks
    at most one vertex per axis.  axes = 1, 2, 3 give two points, a square,
    an octahedron.
    """
    out: list[tuple[int, ...]] = []
    for r in range(1, axes + 1):
        for axset in itertools.combinations(range(1, axes + 1), r):
            for choice in itertools.product((0, 1), repeat=r):
                out.append(tuple(2 * a - 1 + c for a, c in zip(axset, choice)))
    return out


def fig1(n: int, p: int = 2) -> tuple[MultiFiltration, Expected]:
    """Sphere S^(n-1) over an equator S^(n-2) one step down; n = 1, 2, 3.

    The cross-polytope sphere on n axes; the sub-cross-polytope on the first
    n - 1 axes enters at the origin, everything else at u = e_1, so only
    direction 1 has a non-empty one-step-down sublevel.  c_{n-1}(u) = 2 and
    the improved lower bound holds with equality in degree q = n - 1.
    """
    if n not in (1, 2, 3):
        raise ParametersOutOfRange(f"fig1 is built for n in 1..3, got {n}")
    u = tuple(1 if i == 0 else 0 for i in range(n))
    zero = (0,) * n
    equator = {frozenset(s) for s in _cross_polytope(n - 1)}
    graded = [
        (s, zero if frozenset(s) in equator else u) for s in _cross_polytope(n)
    ]
    f = _simplicial_filtration(graded, n=n, p=p)
    if n == 1:
        xi = {(0, 0): 2}
    else:
        xi = {(0, n - 1): 1, (1, n - 2): 1}
    exp = Expected(u=u, c={n - 1: 2}, xi=xi, tight_lower=(n - 1,))
    return f, exp


def lower_iii(p: int = 2) -> tuple[MultiFiltration, Expected]:
    """The octahedron over its square equator: fig1 at n = 3."""
    return fig1(3, p=p)


def upper_i(p: int = 2) -> tuple[MultiFiltration, Expected]:
    """lower_i with the solid 3-cell added at the top grade; n = 3.

    X^u becomes the full 3-simplex and its single critical 3-cell meets the
    upper bound, which degenerates to xi_3^0 = 1.
    """
    u = (1, 1, 1)
    graded = _lower_i_simplices() + [((1, 2, 3, 4), u)]
    f = _simplicial_filtration(graded, n=3, p=p)
    exp = Expected(u=u, c={3: 1}, xi={(3, 0): 1}, tight_upper=(3,))
    return f, exp


def upper_ii(p: int = 2) -> tuple[MultiFiltration, Expected]:
    """lower_ii with the solid 3-cell added at the top grade; n = 3."""
    u = (1, 1, 1)
    graded = _lower_ii_simplices() + [((1, 2, 3, 4), u)]
    f = _simplicial_filtration(graded, n=3, p=p)
    exp = Expected(u=u, c={3: 1}, xi={(2, 1): 1}, tight_upper=(3,))
    return f, exp


def upper_iii(p: int = 2) -> tuple[MultiFiltration, Expected]:
    """A 3-sphere over a 2-sphere equator; n = 3.

    The boundary of the 4-simplex on vertices 1..5; the boundary of the
    3-simplex on 1..4 sits one step down in direction 1, every other cell
    enters at u = (1,0,0).  c_3(u) = 2 meets xi_0^3 + xi_1^2 = 2.
    """
    u = (1, 0, 0)
    zero = (0, 0, 0)
    equator = {
        frozenset(s)
        for r in (1, 2, 3)
        for s in itertools.combinations((1, 2, 3, 4), r)
    }
    graded = []
    for r in (1, 2, 3, 4):
        for s in itertools.combinations((1, 2, 3, 4, 5), r):
            graded.append((s, zero if frozenset(s) in equator else u))
    f = _simplicial_filtration(graded, n=3, p=p)
    exp = Expected(u=u, c={3: 2}, xi={(0, 3): 1, (1, 2): 1}, tight_upper=(3,))
    return f, exp


def disjoint_union(f1: MultiFiltration, f2: MultiFiltration) -> MultiFiltration:
    """Disjoint union of two filtrations over the same n and field.

    Critical counts and Betti numbers add grade by grade, which tests use to
    compose sharpness examples.
    """
    if f1.n != f2.n:
        raise ValueError(f"parameter counts differ: {f1.n} vs {f2.n}")
    if f1.p != f2.p:
        raise ValueError(f"fields differ: {f1.p} vs {f2.p}")
    shift = max((c.id for c in f1.complex.cells), default=-1) + 1
    cells = [Cell(id=c.id, dim=c.dim) for c in f1.complex.cells]
    cells += [Cell(id=c.id + shift, dim=c.dim) for c in f2.complex.cells]
    incidence = dict(f1.complex.incidence)
    for (t, s), coeff in f2.complex.incidence.items():
        incidence[(t + shift, s + shift)] = coeff
    entrance = dict(f1.entrance)
    for cid, g in f2.entrance.items():
        entrance[cid + shift] = g
    return MultiFiltration(CellComplex(cells, incidence, p=f1.p), f1.n, entrance)


EXAMPLES = {
    "lower_i": lower_i,
    "lower_ii": lower_ii,
    "lower_iii": lower_iii,
    "upper_i": upper_i,
    "upper_ii": upper_ii,
    "upper_iii": upper_iii,
    "fig1_1": lambda p=2: fig1(1, p=p),
    "fig1_2": lambda p=2: fig1(2, p=p),
    "fig1_3": lambda p=2: fig1(3, p=p),
}


def build_example(name: str, p: int = 2) -> tuple[MultiFiltration, Expected]:
    """Builds a named example; KeyError lists the valid names."""
    try:
        builder = EXAMPLES[name]
    except KeyError:
        raise KeyError(
            f"unknown example {name!r}; valid names: {', '.join(sorted(EXAMPLES))}"
        ) from None
    return builder(p=p)


@dataclass(frozen=True)
class RandomSpec:
    """Parameters of the seeded generator.

    grade_range applies to every coordinate: vertex grades are sampled
    uniformly in [lo, hi], so entrance grades live in [lo, hi]^n.
    """

    seed: int
    n: int
    max_cells: int = 40
    max_dim: int = 3
    grade_range: tuple[int, int] = (0, 3)
    max_vertices: int = 10
    edge_density: tuple[float, float] = (0.2, 0.75)
    p: int = 2


def random_filtration(spec: RandomSpec) -> MultiFiltration:
    """A valid one-critical filtration from a seeded clique complex.

    Same spec, same filtration: all randomness flows through a single
    random.Random(seed) consumed in a fixed order.
    """
    if not isinstance(spec.seed, int) or isinstance(spec.seed, bool):
        raise ParametersOutOfRange(f"seed must be an integer, got {spec.seed!r}")
    if spec.n not in (1, 2, 3):
        raise ParametersOutOfRange(f"n must be 1..3, got {spec.n}")
    if spec.max_cells < 1:
        raise ParametersOutOfRange(f"max_cells must be >= 1, got {spec.max_cells}")
    if not (0 <= spec.max_dim <= 3):
        raise ParametersOutOfRange(f"max_dim must be 0..3, got {spec.max_dim}")
    lo, hi = spec.grade_range
    if lo < 0 or hi < lo:
        raise ParametersOutOfRange(
            f"grade_range must satisfy 0 <= lo <= hi, got {spec.grade_range}"
        )
    if spec.max_vertices < 1:
        raise ParametersOutOfRange("max_vertices must be >= 1")
    try:
        validate_prime(spec.p)
    except FieldError as e:
        raise ParametersOutOfRange(str(e)) from None

    rng = random.Random(spec.seed)
    nv = rng.randint(1, max(1, min(spec.max_vertices, spec.max_cells)))
    verts = list(range(1, nv + 1))
    density = rng.uniform(*spec.edge_density)
    adj: dict[int, set[int]] = {v: set() for v in verts}
    edges = []
    for i, j in itertools.combinations(verts, 2):
        if rng.random() < density:
            edges.append((i, j))
            adj[i].add(j)
            adj[j].add(i)

    simplices: list[tuple[int, ...]] = [(v,) for v in verts]
    if spec.max_dim >= 1:
        simplices.extend(edges)
        level = edges
        d = 2
        while d <= spec.max_dim and level:
            nxt = []
            for s in level:
                common = set(verts)
                for v in s:
                    common &= adj[v]
                for w in sorted(x for x in common if x > s[-1]):
                    nxt.append(s + (w,))
            simplices.extend(nxt)
            level = nxt
            d += 1

    # Trim the largest, lexicographically last simplex until the budget is
    # met; a maximal-dimension simplex is never a face, so downward closure
    # survives each removal.
    simplices.sort(key=lambda s: (len(s), s))
    while len(simplices) > spec.max_cells:
        simplices.pop()

    vgrade = {v: tuple(rng.randint(lo, hi) for _ in range(spec.n)) for v in verts}
    graded = []
    for s in simplices:
        g = tuple(max(vgrade[v][k] for v in s) for k in range(spec.n))
        graded.append((s, g))
    return _simplicial_filtration(graded, n=spec.n, p=spec.p)
