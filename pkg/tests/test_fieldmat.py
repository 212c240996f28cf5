"""Exact linear algebra over small prime fields."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpmorse.fieldmat import (
    EchelonSpan,
    FieldError,
    FpMatrix,
    complete_basis,
    hstack,
    image_basis,
    kernel_basis,
    quotient_space,
    rank,
    rref,
    solve_in_span,
    solve_many,
    validate_prime,
    vstack,
)

PRIMES = (2, 3, 5)


def matrices(max_dim=6, primes=PRIMES):
    """Strategy producing a random FpMatrix with its prime."""

    @st.composite
    def build(draw):
        p = draw(st.sampled_from(primes))
        r = draw(st.integers(0, max_dim))
        c = draw(st.integers(0, max_dim))
        entries = draw(
            st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c)
        )
        a = np.array(entries, dtype=np.int64).reshape(r, c)
        return FpMatrix(a, p)

    return build()


def test_validate_prime():
    assert validate_prime(2) == 2
    assert validate_prime(13) == 13
    for bad in (0, 1, 4, 9, 15, -3):
        with pytest.raises(FieldError):
            validate_prime(bad)


def test_matmul_mod():
    a = FpMatrix(np.array([[1, 2], [3, 4]]), 5)
    b = FpMatrix(np.array([[2, 0], [1, 3]]), 5)
    c = a @ b
    assert c.a.tolist() == [[4, 1], [0, 2]]


def test_shape_mismatch():
    a = FpMatrix.zeros(2, 3, 5)
    b = FpMatrix.zeros(2, 3, 5)
    with pytest.raises(FieldError):
        a @ b
    with pytest.raises(FieldError):
        a @ FpMatrix.zeros(3, 1, 3)  # wrong field


@given(matrices())
@settings(max_examples=120, deadline=None)
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    if k.cols:
        assert (m @ k).is_zero()


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_transpose(m):
    assert rank(m) == rank(m.transpose())


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rref_idempotent(m):
    r, piv = rref(m)
    r2, piv2 = rref(r)
    assert r == r2 and piv == piv2
    assert rank(m) == len(piv)


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_image_basis_spans_columns(m):
    im = image_basis(m)
    assert im.cols == rank(m)
    for j in range(m.cols):
        x = solve_in_span(im, m.column(j))
        assert x is not None


def test_solve_many_flags():
    basis = FpMatrix(np.array([[1], [0]]), 3)
    targets = FpMatrix(np.array([[1, 0], [0, 1]]), 3)
    x, ok = solve_many(basis, targets)
    assert ok == [True, False]


@given(matrices(max_dim=5))
@settings(max_examples=60, deadline=None)
def test_quotient_dims(m):
    # quotient of the ambient space by the image has codimension rank(m)
    total = FpMatrix.identity(m.rows, m.p)
    q = quotient_space(total, image_basis(m))
    assert q.dim == m.rows - rank(m)


@given(matrices(max_dim=5), matrices(max_dim=5))
@settings(max_examples=80, deadline=None)
def test_composition_rank_identity(f, g):
    # rank g = rank(gf) + dim V - dim(im f + ker g) for f: U->V, g: V->W
    if f.p != g.p:
        f = FpMatrix(f.a, g.p)
    if g.cols != f.rows:
        # reshape f to make the composite defined
        f = FpMatrix.zeros(g.cols, f.cols, g.p)
    mid = hstack([image_basis(f), kernel_basis(g)], p=g.p)
    assert rank(g) == rank(g @ f) + g.cols - rank(mid)


def test_complete_basis_greedy():
    part = FpMatrix(np.array([[1], [1], [0]]), 2)
    pool = FpMatrix.identity(3, 2)
    new = complete_basis(part, pool)
    full = hstack([part, new], p=2)
    assert full.cols == 3 and rank(full) == 3
    # greedy means the earliest pool columns that grow the span are taken
    assert new.a[:, 0].tolist() == [1, 0, 0]


def test_echelon_span_incremental():
    span = EchelonSpan(3, 2)
    v1 = np.array([1, 0, 1])
    v2 = np.array([0, 1, 0])
    assert span.add(v1) and span.add(v2)
    assert not span.add(v1)  # already inside
    assert span.contains(np.array([1, 1, 1]))
    assert span.rank == 2


def test_stack_helpers():
    a = FpMatrix(np.array([[1, 2]]), 3)
    b = FpMatrix(np.array([[2, 1]]), 3)
    assert vstack([a, b], p=3).shape == (2, 2)
    assert hstack([a.transpose(), b.transpose()], p=3).shape == (2, 2)
    assert vstack([], p=3).shape == (0, 0)
