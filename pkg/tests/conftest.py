import numpy as np
import pytest

from brdlab import kernels
from brdlab.costs import TabularCosts
from brdlab.game import Game
from brdlab.generators import random_explicit_game, random_network_game

MODELS = ("tabular", "step", "polynomial", "cost_sharing")
TOL = 1e-9


@pytest.fixture
def g1():
    """Two players, two resources, each player may pick either one."""
    return Game(2, TabularCosts([[0.2, 0.5], [0.3, 0.4]]), strategies=(((0,), (1,)), ((0,), (1,))))


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    previous = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


def small_game(kind, seed, *, network=False, max_n=6, max_m=6):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_n + 1))
    if network:
        return random_network_game(kind, min(n, 3), rng)
    m = int(rng.integers(1, max_m + 1))
    return random_explicit_game(kind, n, m, rng, strategies_per_player=(1, 4))


def random_profile(game, rng):
    from brdlab.oracle import strategy_sets
    return tuple(S[rng.integers(len(S))] for S in strategy_sets(game))


# filled by the acceptance suite, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
