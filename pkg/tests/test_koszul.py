"""Koszul blocks, Betti tables, critical counts."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from oracles import persistence_bars, xi_from_bars

from mpmorse.examples import RandomSpec, build_example, random_filtration
from mpmorse.koszul import (
    FiltrationHomology,
    betti_table,
    direction_subsets,
    koszul_at,
    pointwise_dimension,
)


def engine_xi(engine, u):
    """Nonzero (p, q) -> xi at one grade through the public path."""
    out = {}
    for q in range(max(engine.qmax, 0) + 1):
        kz = koszul_at(engine, u, q)
        for p, v in enumerate(kz.xi):
            if v:
                out[(p, q)] = v
    return out


def test_direction_subsets_layout():
    subs = direction_subsets(3)
    assert subs[0] == ((),)
    assert subs[1] == ((1,), (2,), (3,))
    assert subs[2] == ((1, 2), (1, 3), (2, 3))
    assert subs[3] == ((1, 2, 3),)


def test_fixture_xi_lower_i():
    f, exp = build_example("lower_i")
    eng = FiltrationHomology(f)
    assert engine_xi(eng, exp.u) == exp.xi
    assert eng.critical_counts(exp.u)[:3] == [0, 0, 0]


def test_fixture_xi_upper_ii():
    f, exp = build_example("upper_ii")
    eng = FiltrationHomology(f)
    assert engine_xi(eng, exp.u) == exp.xi
    assert eng.critical_counts(exp.u)[3] == 1


def test_xi_zero_one_step_above_ceiling():
    f, _ = build_example("lower_ii")
    eng = FiltrationHomology(f)
    _, hi = f.grade_box()
    above = (hi[0] + 1,) + hi[1:]
    assert engine_xi(eng, above) == {}
    assert not any(eng.critical_counts(above))


def test_xi_zero_below_floor():
    f, _ = build_example("fig1_2")
    eng = FiltrationHomology(f)
    assert engine_xi(eng, (-1, -1)) == {}


@pytest.mark.parametrize("seed", [3, 11, 17])
def test_xi_matches_persistence_oracle(seed):
    f = random_filtration(RandomSpec(seed=seed, n=1))
    eng = FiltrationHomology(f)
    bars = persistence_bars(f)
    for u in f.evaluation_grid():
        assert engine_xi(eng, u) == xi_from_bars(bars, u[0]), u


@pytest.mark.parametrize("seed", [5, 9])
def test_xi0_is_cokernel_of_merge(seed):
    f = random_filtration(RandomSpec(seed=seed, n=2))
    eng = FiltrationHomology(f)
    for u in f.evaluation_grid():
        for q in range(max(eng.qmax, 0) + 1):
            kz = koszul_at(eng, u, q)
            assert kz.xi[0] == eng.homology_at(u).dim(q) - kz.merge_rank


def test_koszul_caching_returns_same_object():
    f, _ = build_example("lower_i")
    eng = FiltrationHomology(f)
    a = koszul_at(eng, (1, 1, 1), 0)
    b = koszul_at(eng, (1, 1, 1), 0)
    assert a is b


def test_betti_table_sum_below():
    f, _ = build_example("fig1_2")
    eng = FiltrationHomology(f)
    table = betti_table(eng)
    # the square's 1-cycle is born once below (1, 0); nothing at the origin
    assert table.sum_below(0, 1, (1, 1)) == 1
    assert table.sum_below(0, 1, (0, 0)) == 0
    assert table.get(1, 0, (1, 0)) == 1


def test_pointwise_dimension_identity():
    f = random_filtration(RandomSpec(seed=21, n=2))
    eng = FiltrationHomology(f)
    table = betti_table(eng)
    for u in f.evaluation_grid():
        for q in range(max(eng.qmax, 0) + 1):
            lhs, rhs = pointwise_dimension(eng, table, u, q)
            assert lhs == rhs, (u, q)


def test_critical_counts_of_entering_cells():
    f, _ = build_example("fig1_1")
    eng = FiltrationHomology(f)
    assert eng.critical_counts((1,))[0] == 2
    assert not any(eng.critical_counts((0,)))
