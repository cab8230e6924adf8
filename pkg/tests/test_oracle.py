import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brdlab.costs import TabularCosts
from brdlab.game import Game, potential
from brdlab.oracle import (BudgetExceeded, EnumerationBudget, brute_force_is_alpha_pne,
                           brute_force_min_potential, direct_potential, enumerate_profiles, strategy_sets)

from conftest import MODELS, TOL, small_game


def test_g1_profiles(g1):
    assert list(enumerate_profiles(g1)) == [((0,), (0,)), ((0,), (1,)), ((1,), (0,)), ((1,), (1,))]


def test_profile_count():
    game = Game(3, TabularCosts(np.full((3, 3), 0.5)), strategies=(((0,), (1,), (2,)),) * 3)
    assert sum(1 for _ in enumerate_profiles(game)) == 27


def test_budget():
    game = Game(21, TabularCosts(np.full((2, 21), 0.5)), strategies=(((0,), (1,)),) * 21)
    with pytest.raises(BudgetExceeded):
        enumerate_profiles(game)
    with pytest.raises(BudgetExceeded):
        brute_force_min_potential(game)
    small = Game(3, TabularCosts(np.full((2, 3), 0.5)), strategies=(((0,), (1,)),) * 3)
    with pytest.raises(BudgetExceeded):
        enumerate_profiles(small, EnumerationBudget(max_profiles=7))


def test_min_potential_g1(g1):
    profile, value = brute_force_min_potential(g1)
    # (0,),(1,) and (1,),(0,) both reach 0.5; the first one in enumeration order wins
    assert profile == ((0,), (1,))
    assert value == pytest.approx(0.5, abs=TOL)


def test_alpha_pne_g1(g1):
    s = ((0,), (0,))
    assert brute_force_is_alpha_pne(g1, s, 1.7)
    assert not brute_force_is_alpha_pne(g1, s, 1.6)
    assert brute_force_is_alpha_pne(g1, ((0,), (1,)), 1.0)


def test_rejects_bad_profile(g1):
    with pytest.raises(ValueError):
        brute_force_is_alpha_pne(g1, ((0,), (0, 1)), 1.0)


@settings(max_examples=100, deadline=None)
@given(kind=st.sampled_from(MODELS), seed=st.integers(0, 2**32 - 1), network=st.booleans())
def test_min_potential_is_equilibrium(kind, seed, network):
    game = small_game(kind, seed, network=network)
    profile, value = brute_force_min_potential(game)
    assert brute_force_is_alpha_pne(game, profile, 1.0)
    assert value == pytest.approx(potential(game, profile), abs=TOL)
    assert all(direct_potential(game, p) >= value - TOL for p in enumerate_profiles(game))


def test_strategy_sets_network():
    from brdlab.network import NetworkSpec
    net = NetworkSpec(3, ((0, 1), (1, 2), (0, 2)), ((0, 2),))
    game = Game(1, TabularCosts([[0.1], [0.1], [0.5]]), network=net)
    assert strategy_sets(game) == [[(0, 1), (2,)]]
