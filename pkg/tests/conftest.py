from functools import lru_cache

import numpy as np
import pytest

from dynpoisson import algebra


@lru_cache(maxsize=None)
def alg(name):
    return algebra(name)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    results = getattr(test_acceptance, "RESULTS", {})
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n].line())
