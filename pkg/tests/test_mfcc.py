"""The .mfcc text format: parsing, validation, canonical output."""

import pytest

from mpmorse.examples import RandomSpec, build_example, random_filtration
from mpmorse.mfcc import (
    MfccMixedModesError,
    MfccSyntaxError,
    MfccValidationError,
    documents_equal,
    parse_mfcc,
    write_mfcc,
)

GOOD_CELLS = """\
# a segment entering edge-last
mfcc version=1 params=2 field=2
cell 0 dim=0 grade=0,0
cell 1 dim=0 grade=1,0
cell 2 dim=1 grade=1,1 bd=0:1,1:1
"""

GOOD_SIMPLICES = """\
mfcc version=1 params=1 field=3
simplex 1 grade=0
simplex 2 grade=0
simplex 3 grade=1
simplex 1 2 grade=1
simplex 2 3
simplex 1 3 grade=2
"""


def test_parse_cell_mode():
    f = parse_mfcc(GOOD_CELLS)
    assert f.n == 2 and f.p == 2
    assert f.complex.n_cells == 3
    assert f.entrance[2] == (1, 1)


def test_parse_simplex_mode_autocompletes():
    f = parse_mfcc(GOOD_SIMPLICES)
    assert f.complex.n_cells == 6
    by_grade = sorted(f.entrance.values())
    # edge 2-3 inherits max(0, 1) = 1
    assert by_grade == [(0,), (0,), (1,), (1,), (1,), (2,)]


def test_missing_header():
    with pytest.raises(MfccSyntaxError):
        parse_mfcc("cell 0 dim=0 grade=0\n")


def test_header_field_must_be_prime():
    with pytest.raises(MfccSyntaxError):
        parse_mfcc("mfcc version=1 params=1 field=4\n")


def test_unknown_version():
    with pytest.raises(MfccSyntaxError):
        parse_mfcc("mfcc version=2 params=1 field=2\n")


def test_mixed_modes_rejected():
    text = GOOD_CELLS + "simplex 9 grade=0,0\n"
    with pytest.raises(MfccMixedModesError):
        parse_mfcc(text)


def test_duplicate_cell_id():
    text = GOOD_CELLS + "cell 2 dim=0 grade=0,0\n"
    with pytest.raises(MfccSyntaxError):
        parse_mfcc(text)


def test_malformed_bd_entry():
    bad = GOOD_CELLS.replace("bd=0:1,1:1", "bd=0:1,1")
    with pytest.raises(MfccSyntaxError):
        parse_mfcc(bad)


def test_wrong_grade_arity():
    bad = GOOD_CELLS.replace("grade=1,1", "grade=1")
    with pytest.raises(MfccSyntaxError):
        parse_mfcc(bad)


def test_validation_failure_is_itemized():
    # edge before its endpoint: monotonicity violation
    text = GOOD_CELLS.replace("cell 1 dim=0 grade=1,0", "cell 1 dim=0 grade=2,0")
    with pytest.raises(MfccValidationError) as e:
        parse_mfcc(text)
    assert "monoton" in str(e.value) or "entering after" in str(e.value)


def test_vertex_without_grade_rejected():
    text = "mfcc version=1 params=1 field=2\nsimplex 1\nsimplex 2 grade=0\nsimplex 1 2\n"
    with pytest.raises(MfccValidationError):
        parse_mfcc(text)


def test_field_override():
    f = parse_mfcc(GOOD_CELLS, field_override=5)
    assert f.p == 5


def test_balanced_coefficients_survive_override():
    f, _ = build_example("upper_iii", p=3)
    text = write_mfcc(f)
    assert ":-1" in text  # balanced form, not 2
    g = parse_mfcc(text, field_override=7)
    assert g.p == 7 and g.complex.validate().ok


@pytest.mark.parametrize("name", ["lower_i", "upper_iii", "fig1_3"])
def test_round_trip_fixtures(name):
    f, _ = build_example(name)
    text = write_mfcc(f)
    g = parse_mfcc(text)
    assert documents_equal(f, g)
    assert write_mfcc(g) == text


@pytest.mark.parametrize("seed", range(6))
def test_round_trip_randoms(seed):
    f = random_filtration(RandomSpec(seed=seed, n=2, p=3))
    g = parse_mfcc(write_mfcc(f))
    assert documents_equal(f, g)


def test_simplex_round_trip_via_cells():
    f = parse_mfcc(GOOD_SIMPLICES)
    g = parse_mfcc(write_mfcc(f))  # canonical form is cell mode
    assert documents_equal(f, g)


def test_comments_and_blank_lines_ignored():
    noisy = "\n\n# hello\n" + GOOD_CELLS + "\n   # trailing\n\n"
    f = parse_mfcc(noisy)
    assert f.complex.n_cells == 3
