from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from structurable import _exact as ex
from structurable import brown as br

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def rationals(height: int = 9):
    return st.builds(
        lambda n, d: ex.normalize(ex.obj([Fraction(n, d)]))[0],
        st.integers(-height, height), st.integers(1, height),
    )


def vectors(n: int, height: int = 9):
    return st.lists(rationals(height), min_size=n, max_size=n).map(ex.obj)


@pytest.fixture(scope="session")
def split():
    return br.split_context(1)


@pytest.fixture(scope="session")
def quad():
    return br.quadratic_context(2)


@pytest.fixture(scope="session")
def alb(split):
    return split.albert
