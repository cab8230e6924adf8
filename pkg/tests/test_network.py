import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brdlab.costs import TabularCosts
from brdlab.game import Game, player_cost
from brdlab.network import (NetworkSpec, PathEnumerationError, enumerate_simple_paths, first_simple_path,
                            network_best_response)
from brdlab.oracle import direct_cost

from conftest import MODELS, TOL, random_profile, small_game


@pytest.fixture
def parallel():
    net = NetworkSpec(2, ((0, 1), (0, 1)), ((0, 1), (0, 1)))
    return Game(2, TabularCosts([[0.2, 0.5], [0.3, 0.4]]), network=net)


def test_parallel_edges_best_response(parallel, backend):
    path, cost = network_best_response(parallel, ((0,), (0,)), 1)
    assert path == (1,)
    assert cost == pytest.approx(0.3, abs=TOL)


def test_line_graph(backend):
    net = NetworkSpec(3, ((0, 1), (1, 2)), ((0, 2),))
    game = Game(1, TabularCosts([[0.1], [0.2]]), network=net)
    path, cost = network_best_response(game, ((0, 1),), 0)
    assert path == (0, 1)
    assert cost == pytest.approx(0.3, abs=TOL)


def test_enumeration_orders():
    assert enumerate_simple_paths(NetworkSpec(2, ((0, 1), (0, 1)), ()), 0, 1) == [(0,), (1,)]
    assert enumerate_simple_paths(NetworkSpec(3, ((0, 1), (1, 2)), ()), 0, 2) == [(0, 1)]
    # diamond: o=0, a=1, b=2, d=3; edges listed b-side first to exercise ordering
    diamond = NetworkSpec(4, ((0, 2), (2, 3), (0, 1), (1, 3)), ())
    assert enumerate_simple_paths(diamond, 0, 3) == [(0, 1), (2, 3)]


def test_enumeration_cap():
    # k parallel edges in each of 3 stages -> k**3 paths
    edges = tuple((s, s + 1) for s in range(3) for _ in range(4))
    with pytest.raises(PathEnumerationError):
        enumerate_simple_paths(NetworkSpec(4, edges, ()), 0, 3, cap=63)
    assert len(enumerate_simple_paths(NetworkSpec(4, edges, ()), 0, 3, cap=64)) == 64


def test_first_simple_path_is_lexicographic_minimum():
    diamond = NetworkSpec(4, ((0, 2), (2, 3), (0, 1), (1, 3)), ())
    assert first_simple_path(diamond, 0, 3) == (0, 1)


def test_cycles_skipped():
    net = NetworkSpec(3, ((0, 1), (1, 0), (1, 2)), ())
    assert enumerate_simple_paths(net, 0, 2) == [(0, 2)]


def test_unreachable_fails_validation():
    from brdlab.game import validate_game
    net = NetworkSpec(3, ((0, 1),), ((0, 2),))
    game = Game(1, TabularCosts([[0.1]]), network=net)
    assert any("unreachable" in p for p in validate_game(game))


def test_tie_prefers_smallest_edge_sequence(backend):
    # two equal-cost o->d routes; the one starting with edge 0 wins
    net = NetworkSpec(3, ((0, 1), (1, 2), (0, 2)), ((0, 2),))
    game = Game(1, TabularCosts([[0.25], [0.25], [0.5]]), network=net)
    assert network_best_response(game, ((2,),), 0)[0] == (0, 1)


def test_zero_weight_cycle_still_simple(backend):
    # 0 <-> 1 at zero cost, both reach 2; greedy walk must not loop
    net = NetworkSpec(3, ((0, 1), (1, 0), (0, 2), (1, 2)), ((0, 2),))
    game = Game(1, TabularCosts([[0.0], [0.0], [0.5], [0.5]]), network=net)
    path, cost = network_best_response(game, ((2,),), 0)
    assert net.path_problem(0, path) is None
    assert cost == pytest.approx(0.5)


@settings(max_examples=120, deadline=None)
@given(kind=st.sampled_from(MODELS), seed=st.integers(0, 2**32 - 1))
def test_best_response_matches_enumeration(kind, seed):
    game = small_game(kind, seed, network=True)
    rng = np.random.default_rng(seed)
    profile = random_profile(game, rng)
    for i in range(game.n):
        path, cost = network_best_response(game, profile, i)
        assert game.network.path_problem(i, path) is None
        moved = profile[:i] + (path,) + profile[i + 1:]
        assert cost == pytest.approx(player_cost(game, moved, i), abs=TOL)
        o, d = game.network.od_pairs[i]
        costs = [direct_cost(game, profile[:i] + (p,) + profile[i + 1:], i)
                 for p in enumerate_simple_paths(game.network, o, d)]
        assert abs(cost - min(costs)) <= TOL
        assert cost <= player_cost(game, profile, i) + TOL
