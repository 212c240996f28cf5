"""Mayer-Vietoris double complex and its spectral pages."""

import pytest

from mpmorse.examples import RandomSpec, build_example, random_filtration
from mpmorse.koszul import FiltrationHomology
from mpmorse.spectral import (
    check_convergence,
    check_e1_is_koszul,
    check_e2_dims,
    check_einfty_column,
    compute_pages,
    double_complex_at,
)


def test_total_differential_squares_to_zero():
    f = random_filtration(RandomSpec(seed=13, n=2))
    eng = FiltrationHomology(f)
    for u in [(1, 1), (2, 2), (3, 3)]:
        dc = double_complex_at(eng, u)
        for k in range(1, dc.k_top + 1):
            prod = dc.D[k - 1] @ dc.D[k] if k - 1 in dc.D and k in dc.D else None
            if prod is not None:
                assert prod.is_zero(), (u, k)


@pytest.mark.parametrize("name", ["lower_i", "lower_ii", "fig1_3"])
def test_structural_page_checks_on_fixtures(name):
    f, exp = build_example(name)
    eng = FiltrationHomology(f)
    pages = compute_pages(eng, exp.u)
    assert check_e1_is_koszul(eng, exp.u, pages)
    assert check_e2_dims(eng, exp.u, pages)
    assert check_convergence(eng, exp.u, pages)
    assert check_einfty_column(eng, exp.u, pages)


@pytest.mark.parametrize("seed,n", [(2, 2), (4, 3), (8, 2)])
def test_structural_page_checks_on_randoms(seed, n):
    f = random_filtration(RandomSpec(seed=seed, n=n, max_cells=25))
    eng = FiltrationHomology(f)
    for u in f.evaluation_grid():
        pages = compute_pages(eng, u)
        assert check_e1_is_koszul(eng, u, pages), u
        assert check_e2_dims(eng, u, pages), u
        assert check_convergence(eng, u, pages), u
        assert check_einfty_column(eng, u, pages), u


def test_strict_mode_agrees():
    f = random_filtration(RandomSpec(seed=6, n=2, max_cells=20))
    eng = FiltrationHomology(f)
    u = f.grade_box()[1]
    loose = compute_pages(eng, u)
    eng2 = FiltrationHomology(f)  # fresh cache so strict actually recomputes
    strict = compute_pages(eng2, u, strict=True)
    qmax = max(eng.qmax, 0)
    for r in range(f.n + 1):
        for p in range(f.n):
            for q in range(qmax + 1):
                assert loose.dim(r, p, q) == strict.dim(r, p, q)


def test_page_clamping_past_n():
    f, exp = build_example("fig1_2")
    eng = FiltrationHomology(f)
    pages = compute_pages(eng, exp.u)
    for p in range(f.n):
        for q in range(max(eng.qmax, 0) + 1):
            assert pages.dim(7, p, q) == pages.dim(f.n, p, q)
            assert pages.rank(f.n, p, q) == 0
            assert pages.infinity_dim(p, q) == pages.dim(f.n, p, q)


def test_octahedron_page_collapse():
    # at u = (1,0,0) only the sigma = {1} sublevel (the equator circle) is
    # nonempty, so the whole sequence lives in column p = 0
    f, exp = build_example("fig1_3")
    eng = FiltrationHomology(f)
    pages = compute_pages(eng, exp.u)
    assert pages.dim(1, 0, 0) == 1 and pages.dim(1, 0, 1) == 1  # H_*(circle)
    assert pages.dim(1, 1, 0) == 0  # deeper intersections are empty
    assert pages.dim(2, 0, 1) == 1  # merge rank 0 + xi_1^1 = 1
    assert pages.infinity_dim(0, 1) == 1  # survives to H_1 of the union
    assert pages.rank(0, 0, 1) == 3  # vertical rank: 4 edges onto 4 vertices


def test_pages_cached_by_configuration():
    f, _ = build_example("lower_i")
    eng = FiltrationHomology(f)
    a = compute_pages(eng, (1, 1, 1))
    b = compute_pages(eng, (1, 1, 1))
    assert a is b
    # grades with identical sublevel configurations share the page object
    hi = f.grade_box()[1]
    above = (hi[0] + 1, hi[1] + 1, hi[2] + 1)
    beyond = (hi[0] + 2, hi[1] + 2, hi[2] + 2)
    assert compute_pages(eng, above) is not None
    assert compute_pages(eng, beyond) is compute_pages(eng, above)
