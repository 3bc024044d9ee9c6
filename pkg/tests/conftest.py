import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402


@pytest.fixture(scope="session")
def oracle_zeros():
    """Zeros of J_k, k <= 10, first ten each, from the series/bisection oracle."""
    return {(k, n): v for k in range(11) for n, v in enumerate(oracles.bessel_zeros(k, 11), start=1)}


@pytest.fixture(scope="session")
def oracle_prime_zeros():
    """Zeros of J_k', k <= 10 (k = 0 skips the origin), first ten each."""
    table = {}
    for k in range(11):
        zeros = oracles.bessel_prime_zeros(k, 11 if k else 12)
        if k == 0:
            zeros = [z for z in zeros if z > 0.5]
        table.update({(k, n): v for n, v in enumerate(zeros[:10], start=1)})
    return table


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
