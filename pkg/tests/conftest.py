import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from starindex import shapes  # noqa: E402
from starindex.geometry import StarPolygon  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def cross():
    return shapes.cross()


@pytest.fixture(scope="session")
def cross_star(cross):
    return StarPolygon(cross, (0.0, 0.0))


@pytest.fixture(scope="session")
def unit_square():
    return shapes.square()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
