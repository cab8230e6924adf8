import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brdlab import kernels
from brdlab.dynamics import BrdConfig, PivotRule, run_brd
from brdlab.smoothing import PerturbationSpec, perturb

from conftest import MODELS, random_profile, small_game

pytestmark = pytest.mark.skipif("numba" not in kernels.BACKENDS, reason="numba not installed")


def _trace(name, game, start, config):
    previous = kernels.set_backend(name)
    try:
        return run_brd(game, start, config)
    finally:
        kernels.set_backend(previous)


@settings(max_examples=80, deadline=None)
@given(kind=st.sampled_from(MODELS), seed=st.integers(0, 2**32 - 1), rule=st.sampled_from(list(PivotRule)),
       network=st.booleans())
def test_backends_agree(kind, seed, rule, network):
    game = perturb(small_game(kind, seed, network=network, max_n=8, max_m=8), PerturbationSpec(2.0, "low", seed))
    start = random_profile(game, np.random.default_rng(seed))
    config = BrdConfig(0.1, rule, seed=seed)
    assert _trace("numba", game, start, config) == _trace("numpy", game, start, config)


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_set_backend_round_trip():
    previous = kernels.set_backend("numpy")
    assert kernels.backend_name() == "numpy"
    kernels.set_backend(previous)
    assert kernels.backend_name() == previous
