"""Brute-force ground truth for small games.

Nothing here touches the cost tables, prefix sums or kernels used by the
dynamics: costs are re-evaluated from the model definition, so a bug in the
fast path cannot hide behind the same bug in its checker.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .game import Game, Profile, Strategy
from .network import PathEnumerationError, enumerate_simple_paths


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_profiles: int = 10**6
    max_paths_per_player: int = 10**4

    def __post_init__(self):
        if self.max_profiles < 1 or self.max_paths_per_player < 1:
            raise ValueError("budgets must be positive")


DEFAULT_BUDGET = EnumerationBudget()


def strategy_sets(game: Game, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[list[Strategy]]:
    """Every player's full strategy list; network paths are enumerated."""
    if not game.is_network:
        return [list(S) for S in game.strategies]
    out = []
    for o, d in game.network.od_pairs:
        try:
            out.append(enumerate_simple_paths(game.network, o, d, budget.max_paths_per_player))
        except PathEnumerationError as exc:
            raise BudgetExceeded(str(exc)) from exc
    return out


def enumerate_profiles(game: Game, budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[Profile]:
    """All profiles, lexicographic in the players' strategy orders (player 1 slowest)."""
    sets = strategy_sets(game, budget)
    count = math.prod(len(S) for S in sets)
    if count > budget.max_profiles:
        raise BudgetExceeded(f"{count} profiles exceed the budget of {budget.max_profiles}")
    return itertools.product(*sets)


def direct_loads(game: Game, profile: Profile) -> list[int]:
    loads = [0] * game.m
    for s in profile:
        for r in s:
            loads[r] += 1
    return loads


def direct_cost(game: Game, profile: Profile, i: int) -> float:
    loads = direct_loads(game, profile)
    return sum(game.costs.resource_cost(r, loads[r]) for r in profile[i])


def direct_potential(game: Game, profile: Profile) -> float:
    loads = direct_loads(game, profile)
    return sum(game.costs.resource_cost(r, j) for r in range(game.m) for j in range(1, loads[r] + 1))


def brute_force_min_potential(game: Game, budget: EnumerationBudget = DEFAULT_BUDGET) -> tuple[Profile, float]:
    """Global potential minimizer; the lexicographically first one among ties."""
    sets = strategy_sets(game, budget)
    count = math.prod(len(S) for S in sets)
    if count > budget.max_profiles:
        raise BudgetExceeded(f"{count} profiles exceed the budget of {budget.max_profiles}")
    m = game.m
    # cumulative[r, l] = c_r(1) + ... + c_r(l), summed term by term
    cumulative = np.zeros((m, game.n + 1))
    for r in range(m):
        acc = 0.0
        for j in range(1, game.n + 1):
            acc += game.costs.resource_cost(r, j)
            cumulative[r, j] = acc
    loads = np.zeros((1, m), dtype=np.int16)
    for S in sets:
        incidence = np.zeros((len(S), m), dtype=np.int16)
        for k, s in enumerate(S):
            incidence[k, list(s)] = 1
        loads = (loads[:, None, :] + incidence[None, :, :]).reshape(-1, m)
    values = cumulative[np.arange(m)[None, :], loads].sum(axis=1)
    best = int(np.argmin(values))
    choice = np.unravel_index(best, [len(S) for S in sets])
    profile = tuple(S[k] for S, k in zip(sets, choice))
    return profile, direct_potential(game, profile)


def brute_force_is_alpha_pne(game: Game, profile, alpha: float,
                             budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """Literal check of ``C_i(s) <= alpha * C_i(s'_i, s_-i)`` for every player and deviation."""
    profile = game.check_profile(profile)
    sets = strategy_sets(game, budget)
    for i, S in enumerate(sets):
        current = direct_cost(game, profile, i)
        for dev in S:
            moved = profile[:i] + (dev,) + profile[i + 1:]
            if current > alpha * direct_cost(game, moved, i):
                return False
    return True
