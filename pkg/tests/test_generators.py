"""Generator specs: substitutions, Sturmian, Toeplitz, matrix SFTs, rays."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftcover import (
    ConstructionError,
    MatrixSFT,
    Ray,
    SturmianSpec,
    SubstitutionSystem,
    ToeplitzSpec,
    language_from_generator,
    looks_periodic,
    validate_table,
)

FIB_PREFIX_16 = "0100101001001010"  # fixed point of 0->01, 1->0
TM_PREFIX_16 = "0110100110010110"  # fixed point of 0->01, 1->10
PD_PREFIX_16 = "0100110100100110"  # period-doubling Toeplitz word of "01?"


def test_substitution_fixed_points(fib, tm):
    assert fib.prefix(16) == FIB_PREFIX_16
    assert tm.prefix(16) == TM_PREFIX_16
    # prefix stability: longer prefixes extend shorter ones
    assert fib.prefix(400)[:100] == fib.prefix(100)


def test_substitution_validation():
    with pytest.raises(ConstructionError):
        SubstitutionSystem.from_map({"0": "01", "1": "0"}, "1")  # no fixed point
    with pytest.raises(ConstructionError):
        SubstitutionSystem.from_map({"0": "01"}, "0")  # rule leaves alphabet
    with pytest.raises(ConstructionError):
        SubstitutionSystem.from_map({"0": "", "1": "0"}, "0")  # empty image


def test_primitivity(fib, tm):
    assert fib.is_primitive()
    assert tm.is_primitive()
    assert not SubstitutionSystem.from_map({"0": "00", "1": "1"}, "0").is_primitive()


def test_characteristic_sturmian_equals_fibonacci(fib):
    spec = SturmianSpec.characteristic([1])
    assert spec.prefix(200) == fib.prefix(200)


def test_sturmian_slope_value():
    alpha = SturmianSpec.characteristic([1]).slope()
    assert abs(float(alpha) - 0.3819660113) < 1e-9  # 1/phi^2


def test_mechanical_word_exact(mech_ray):
    assert mech_ray.prefix(20) == "01010010010100100101"
    # mechanical word of the Fibonacci slope stays inside the Fibonacci language
    fib = SubstitutionSystem.from_map({"0": "01", "1": "0"}, "0")
    table = language_from_generator(fib, 20)
    probe = mech_ray.prefix(400)
    for i in range(0, 380, 7):
        assert table.admits(probe[i : i + 20])


def test_sturmian_validation():
    with pytest.raises(ConstructionError):
        SturmianSpec.characteristic([])
    with pytest.raises(ConstructionError):
        SturmianSpec.characteristic([1, 0])


def test_toeplitz_word(toeplitz):
    assert toeplitz.prefix(16) == PD_PREFIX_16
    assert toeplitz.prefix(81)[:27] == toeplitz.prefix(27)
    assert not looks_periodic(toeplitz.prefix(96))


def test_toeplitz_validation():
    with pytest.raises(ConstructionError):
        ToeplitzSpec("01")  # no hole: periodic limit
    with pytest.raises(ConstructionError):
        ToeplitzSpec("?01")  # leading hole
    with pytest.raises(ConstructionError):
        ToeplitzSpec("??")


def test_matrix_sft_words(golden, full_shift):
    assert [len(golden.words_of_length(n)) for n in range(1, 11)] == [
        2, 3, 5, 8, 13, 21, 34, 55, 89, 144,
    ]
    assert all("11" not in w for w in golden.words_of_length(6))
    assert len(full_shift.words_of_length(6)) == 64
    assert "11" not in golden.prefix(64)


def test_matrix_sft_validation():
    with pytest.raises(ConstructionError):
        MatrixSFT(((1, 1),))  # not square
    with pytest.raises(ConstructionError):
        MatrixSFT(((0, 0), (1, 1)))  # dead row
    with pytest.raises(ConstructionError):
        MatrixSFT(((1, 0), (1, 0)))  # dead column


def test_looks_periodic():
    assert looks_periodic("010101010101")
    assert not looks_periodic("0100101001001010")


def test_ray_prepend_and_shift(fib):
    ray = Ray(fib, 0, "0")
    assert ray.prefix(5) == "0" + fib.prefix(4)
    assert ray.shift(1).prefix(6) == fib.prefix(6)
    assert ray.shift(3).prefix(6) == fib.prefix(8)[2:]


@settings(max_examples=60, deadline=None)
@given(
    prepend=st.sampled_from(["", "0", "10", "001"]),
    a=st.integers(min_value=0, max_value=8),
    n=st.integers(min_value=1, max_value=40),
)
def test_ray_shift_prefix_law(prepend, a, n):
    fib = SubstitutionSystem.from_map({"0": "01", "1": "0"}, "0")
    ray = Ray(fib, 2, prepend)
    assert ray.shift(a).prefix(n) == ray.prefix(a + n)[a:]


def test_language_certificates(fib_table_small, golden_table):
    cert = fib_table_small.certificate
    assert cert["method"] == "prefix-doubling"
    assert cert["tags"]["primitive"] and not cert["tags"]["periodic"]
    assert cert["tags"]["minimal_candidate"]
    assert golden_table.certificate["method"] == "paths"


def test_language_tables_are_valid(fib_table_small, toeplitz_table, golden_table):
    assert validate_table(fib_table_small) == []
    assert validate_table(toeplitz_table) == []
    assert validate_table(golden_table) == []


def test_language_from_generator_rejects_bad_horizon(fib):
    with pytest.raises(ConstructionError):
        language_from_generator(fib, 0)
