"""Exact quadratic arithmetic used for mechanical words."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftcover.errors import ConstructionError
from shiftcover.quadratic import Surd, cf_value, periodic_cf_value


def _is_zero(x: Surd) -> bool:
    return x.a == 0 and x.b == 0


def test_golden_ratio_satisfies_its_polynomial():
    phi = periodic_cf_value([1])  # [1; 1, 1, ...] = (1 + sqrt 5) / 2
    assert _is_zero(phi * phi - phi - 1)
    assert abs(float(phi) - 1.6180339887) < 1e-9


def test_cf_value_slope():
    # [0; 2, 1, 1, ...] = 1/phi^2 = (3 - sqrt 5)/2, root of x^2 - 3x + 1
    x = cf_value([2], [1])
    assert _is_zero(x * x - 3 * x + 1)
    assert 0 < float(x) < 1


def test_silver_ratio():
    s = periodic_cf_value([2])  # 1 + sqrt 2, root of x^2 - 2x - 1
    assert _is_zero(s * s - 2 * s - 1)


def test_bad_periods_rejected():
    with pytest.raises(ConstructionError):
        periodic_cf_value([])
    with pytest.raises(ConstructionError):
        periodic_cf_value([0, 1])


def test_mixed_radicands_rejected():
    with pytest.raises(ValueError):
        Surd(Fraction(1), Fraction(1), 2) + Surd(Fraction(1), Fraction(1), 3)


small_fraction = st.fractions(
    min_value=-8, max_value=8, max_denominator=12
)


@settings(max_examples=120, deadline=None)
@given(a=small_fraction, b=small_fraction, d=st.sampled_from([2, 3, 5, 6, 7, 10]))
def test_floor_is_exact(a, b, d):
    x = Surd(a, b, d)
    f = x.floor()
    assert (x - f).sign() >= 0
    assert (x - (f + 1)).sign() < 0


@settings(max_examples=80, deadline=None)
@given(a=small_fraction, b=small_fraction, d=st.sampled_from([2, 3, 5]))
def test_sign_is_antisymmetric_and_matches_float(a, b, d):
    x = Surd(a, b, d)
    assert (-x).sign() == -x.sign()
    approx = float(x)
    if abs(approx) > 1e-6:
        assert x.sign() == (1 if approx > 0 else -1)


def test_field_operations():
    x = Surd(Fraction(1, 2), Fraction(3, 2), 5)
    y = Surd(Fraction(2), Fraction(-1), 5)
    assert _is_zero((x * y) / y - x)
    assert _is_zero((x + y) - y - x)
    assert _is_zero(1 / (1 / x) - x)
