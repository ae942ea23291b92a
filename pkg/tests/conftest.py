"""Shared session fixtures: generators, language tables, workspaces."""

from fractions import Fraction

import pytest

from shiftcover import (
    MatrixSFT,
    Ray,
    SturmianSpec,
    SubstitutionSystem,
    ToeplitzSpec,
    Workspace,
    language_from_generator,
)


@pytest.fixture(scope="session")
def fib():
    return SubstitutionSystem.from_map({"0": "01", "1": "0"}, "0")


@pytest.fixture(scope="session")
def fib_table(fib):
    return language_from_generator(fib, 120)


@pytest.fixture(scope="session")
def fib_table_small(fib):
    return language_from_generator(fib, 40)


@pytest.fixture(scope="session")
def fib_ws(fib, fib_table):
    return Workspace("fibonacci", fib, fib_table, horizon=72)


@pytest.fixture(scope="session")
def tm():
    return SubstitutionSystem.from_map({"0": "01", "1": "10"}, "0")


@pytest.fixture(scope="session")
def tm_table(tm):
    return language_from_generator(tm, 120)


@pytest.fixture(scope="session")
def tm_ws(tm, tm_table):
    return Workspace("thue-morse", tm, tm_table, horizon=72)


@pytest.fixture(scope="session")
def toeplitz():
    return ToeplitzSpec("01?")


@pytest.fixture(scope="session")
def toeplitz_table(toeplitz):
    return language_from_generator(toeplitz, 40)


@pytest.fixture(scope="session")
def golden():
    return MatrixSFT(((1, 1), (1, 0)))


@pytest.fixture(scope="session")
def golden_table(golden):
    return language_from_generator(golden, 26)


@pytest.fixture(scope="session")
def full_shift():
    return MatrixSFT(((1, 1), (1, 1)))


@pytest.fixture(scope="session")
def full_table(full_shift):
    return language_from_generator(full_shift, 16)


@pytest.fixture(scope="session")
def mech_ray():
    return Ray(SturmianSpec.mechanical([1], Fraction(1, 2)))
