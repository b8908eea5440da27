import itertools
import sys

import pytest


def brute_lee(u, v, m):
    """Reference Lee distance written from the symmetric representation."""
    total = 0
    for a, b in zip(u, v):
        x = (a - b) % m
        if x > m // 2:
            x -= m
        total += abs(x)
    return total


def brute_ball(center, rho, m):
    return [v for v in itertools.product(range(m), repeat=len(center))
            if brute_lee(center, v, m) <= rho]


@pytest.fixture
def lee_oracle():
    return brute_lee


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
