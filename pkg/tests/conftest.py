import numpy as np
import pytest

from zernike_bessel.besselquad import integrate

# lines collected by the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LINES = []


def signed_triple(factors, power=0, tol=1e-10):
    """Bessel-product integral allowing negative orders via J_{-k} = (-1)^k J_k."""
    sign = 1
    fixed = []
    for k, c in factors:
        if k < 0 and k % 2:
            sign = -sign
        fixed.append((abs(k), c))
    return sign * integrate(fixed, power=power, tol=tol)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
