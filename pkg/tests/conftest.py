import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


def random_pairs(rng, n, h_range=(-10, 10), s_range=(1, 5)):
    h = rng.integers(h_range[0], h_range[1] + 1, n)
    s = rng.integers(s_range[0], s_range[1] + 1, n)
    return [(int(a), int(b)) for a, b in zip(h, s)]


def random_plain(rng, n, lo=-10, hi=10):
    return [(int(v), 1) for v in rng.integers(lo, hi + 1, n)]


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
