import math
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from twistguide import cross_section as cs, potential as pt, twist as tw  # noqa: E402


@pytest.fixture(scope="session")
def square():
    return cs.Rectangle(math.pi, math.pi)


@pytest.fixture(scope="session")
def square_moments(square):
    _, chi = cs.first_eigenpair(square, 1.5)
    return cs.moments(square, chi)


@pytest.fixture
def make_spec(square_moments):
    def make(beta=1.5, c=0.5, offset=math.pi / 2):
        return pt.PotentialSpec(square_moments, beta, tw.Tanh(c, offset))
    return make


# one summary line per acceptance criterion, filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
