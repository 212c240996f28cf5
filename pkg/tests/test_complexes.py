"""Cell complexes, simplicial construction, homology of known spaces."""

import pytest

from mpmorse.complexes import (
    Cell,
    CellComplex,
    NotASubcomplexError,
    chain_inclusion,
    from_simplices,
    relative_homology_dims,
)

# minimal 6-vertex closed-surface triangulation with Euler characteristic 1:
# homology distinguishes characteristic 2 from everything else
RP2 = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (3, 4, 6), (3, 5, 6), (2, 4, 6),
]


def homology_dims(cx):
    sub = cx.subcomplex(frozenset(c.id for c in cx.cells))
    h = sub.homology()
    return [h.dim(q) for q in range(max(cx.dim, 0) + 1)]


def test_from_simplices_downward_closure():
    build = from_simplices([(1, 2, 3)], p=2)
    cx = build.complex
    assert cx.n_cells == 7  # 3 vertices, 3 edges, 1 triangle
    assert cx.dim == 2
    assert not cx.validate().ok is False  # validation passes


def test_simplicial_signs_alternate():
    build = from_simplices([(1, 2, 3)], p=5)
    cx = build.complex
    tri = build.id_of[frozenset((1, 2, 3))]
    faces = dict(cx.faces(tri))
    e12 = build.id_of[frozenset((1, 2))]
    e13 = build.id_of[frozenset((1, 3))]
    e23 = build.id_of[frozenset((2, 3))]
    # boundary of [1,2,3] = [2,3] - [1,3] + [1,2]
    assert faces[e23] == 1 and faces[e13] == 4 and faces[e12] == 1


def test_circle_homology():
    cx = from_simplices([(1, 2), (2, 3), (1, 3)], p=2).complex
    assert homology_dims(cx) == [1, 1]


def test_sphere_homology():
    faces = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    cx = from_simplices(faces, p=3).complex
    assert homology_dims(cx) == [1, 0, 1]


def test_disk_homology():
    cx = from_simplices([(1, 2, 3)], p=2).complex
    assert homology_dims(cx) == [1, 0, 0]


@pytest.mark.parametrize("p,expect", [(2, [1, 1, 1]), (3, [1, 0, 0]), (5, [1, 0, 0])])
def test_projective_plane_feels_the_field(p, expect):
    cx = from_simplices(RP2, p=p).complex
    assert cx.euler_characteristic() == 1
    assert homology_dims(cx) == expect


def test_validate_catches_bad_dimension():
    cells = [Cell(id=0, dim=0), Cell(id=1, dim=2)]
    cx = CellComplex(cells, {(1, 0): 1}, p=2)
    rep = cx.validate()
    assert not rep.ok and rep.bad_dimension


def test_validate_catches_broken_square():
    # two edges glued to one vertex so that dd has a 1 left over
    cells = [
        Cell(id=0, dim=0),
        Cell(id=1, dim=0),
        Cell(id=2, dim=1),
        Cell(id=3, dim=2),
    ]
    incidence = {(2, 0): 1, (2, 1): 1, (3, 2): 1}
    cx = CellComplex(cells, incidence, p=2)
    rep = cx.validate()
    assert not rep.ok and rep.bad_square


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError):
        CellComplex([Cell(id=0, dim=0), Cell(id=0, dim=1)], {}, p=2)


def test_subcomplex_closure_check():
    build = from_simplices([(1, 2)], p=2)
    cx = build.complex
    edge = build.id_of[frozenset((1, 2))]
    v1 = build.id_of[frozenset((1,))]
    open_sub = cx.subcomplex(frozenset({edge, v1}))
    assert open_sub.is_closed()  # nonempty tuple of (cell, missing face)
    closed = cx.subcomplex(frozenset(c.id for c in cx.cells))
    assert closed.is_closed() == ()


def test_relative_disk_mod_boundary():
    build = from_simplices([(1, 2, 3)], p=2)
    cx = build.complex
    everything = frozenset(c.id for c in cx.cells)
    boundary = everything - {build.id_of[frozenset((1, 2, 3))]}
    dims = relative_homology_dims(cx.subcomplex(everything), cx.subcomplex(boundary))
    assert dims[:3] == [0, 0, 1]


def test_relative_requires_containment():
    build = from_simplices([(1, 2), (3, 4)], p=2)
    cx = build.complex
    a = cx.subcomplex(frozenset({build.id_of[frozenset((1,))]}))
    x = cx.subcomplex(frozenset({build.id_of[frozenset((3,))]}))
    with pytest.raises(NotASubcomplexError):
        relative_homology_dims(x, a)


def test_chain_inclusion_shape():
    build = from_simplices([(1, 2), (2, 3)], p=2)
    cx = build.complex
    small = cx.subcomplex(frozenset({build.id_of[frozenset((1,))], build.id_of[frozenset((2,))]}))
    big = cx.subcomplex(frozenset(c.id for c in cx.cells))
    inc = chain_inclusion(small, big, 0)
    assert inc.shape == (3, 2)
    assert inc.a.sum() == 2  # one unit entry per included cell


def test_euler_characteristic():
    cx = from_simplices([(1, 2, 3), (3, 4)], p=2).complex
    # 4 vertices, 4 edges, 1 triangle
    assert cx.euler_characteristic() == 4 - 4 + 1
