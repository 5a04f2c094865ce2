import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from finite_gabor import GroupSpec  # noqa: E402

SMALL_GROUPS = [(4,), (6,), (2, 3), (2, 2)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=SMALL_GROUPS, ids=lambda o: "x".join(map(str, o)))
def group(request):
    return GroupSpec(request.param)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
