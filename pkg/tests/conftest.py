from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from dualfive.exactlin import p_factor


@pytest.fixture(scope="session")
def P():
    return p_factor()


def unit_fractions(max_den: int = 60):
    """Rationals in the closed interval [0, 1]."""
    return st.integers(1, max_den).flatmap(
        lambda d: st.integers(0, d).map(lambda n: Fraction(n, d)))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
