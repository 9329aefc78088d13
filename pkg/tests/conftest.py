import random
import sys

import pytest
from hypothesis import strategies as st

from k3lattice import hyperbolic_plane, rank_one
from k3lattice.generators import random_lattice


@pytest.fixture
def U():
    """Hyperbolic plane with polarization H = e + 2f."""
    return hyperbolic_plane((1, 2))


@pytest.fixture
def deg2():
    return rank_one(2)


def lattices(min_rank=1, max_rank=4):
    return st.builds(lambda seed, rank: random_lattice(random.Random(seed), rank),
                     st.integers(0, 2**32), st.integers(min_rank, max_rank))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
