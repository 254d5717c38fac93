from fractions import Fraction

import pytest

from hopfheap.catalog import QI, cyclic_group_algebra, sweedler_algebra, trig_heap
from hopfheap.heap import heap_from_hopf
from hopfheap.kernel import Scalar, SparseTensor

I = Scalar(0, 1, -1)


def vec(*coords):
    return SparseTensor.vector(list(coords))


def half(n=1):
    return Scalar(Fraction(n, 2))


@pytest.fixture(scope="session")
def trig():
    return trig_heap(QI)


@pytest.fixture(scope="session")
def x_plus():
    """theta + i*u on the (u, theta) basis."""
    return vec(I, 1)


@pytest.fixture(scope="session")
def x_minus():
    return vec(-I, 1)


@pytest.fixture(scope="session")
def z2():
    return cyclic_group_algebra(2, QI)


@pytest.fixture(scope="session")
def z3():
    return cyclic_group_algebra(3, QI)


@pytest.fixture(scope="session")
def sweedler():
    return sweedler_algebra(QI)


@pytest.fixture(scope="session")
def hp_z2(z2):
    return heap_from_hopf(z2)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
