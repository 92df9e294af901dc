import os
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from preheight.rational_core import enumerate_rationals  # noqa: E402

ACCEPTANCE_LINES = []


def rationals(max_height=100):
    return st.builds(
        Fraction,
        st.integers(-max_height, max_height),
        st.integers(1, max_height),
    )


@pytest.fixture(scope="session")
def rationals_1000():
    return list(enumerate_rationals(1000))


@pytest.fixture(scope="session")
def preimage_oracle(rationals_1000):
    from oracles import PreimageOracle

    return PreimageOracle(rationals_1000, max_depth=8)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
