import numpy as np
import pytest

from selfsim import SimilaritySystem


def random_system(rng, n=None, d_max=0.6, c_scale=1.0, b_scale=1.0, c_zero=False):
    """Random validated system with max|d_k| <= d_max (so r_p <= d_max for all p)."""
    if n is None:
        n = int(rng.integers(2, 5))
    a = rng.dirichlet(np.full(n, 2.0))
    a = a / a.sum()
    d = rng.uniform(-d_max, d_max, n)
    c = np.zeros(n) if c_zero else rng.uniform(-c_scale, c_scale, n)
    b = rng.uniform(-b_scale, b_scale, n)
    return SimilaritySystem(a=a, c=c, d=d, beta=b)


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(line)
