"""Congestion games, strategy profiles, loads and player costs.

A strategy profile is a tuple with one strategy per player.  In explicit
games a strategy is a sorted tuple of resource indices; in network games it
is the tuple of edge indices along a simple path, in travel order.  Indices
are 0-based throughout; human-facing messages count players and resources
from 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .costs import CostModel
from .network import NetworkSpec

Strategy = tuple[int, ...]
Profile = tuple[Strategy, ...]


class GameValidationError(ValueError):
    """Invalid game or profile.  ``player`` is the 0-based offender, if any."""

    def __init__(self, message, player=None):
        super().__init__(message)
        self.player = player


def _normalize(strategy) -> Strategy:
    return tuple(sorted(int(r) for r in strategy))


@dataclass(frozen=True)
class Game:
    """A congestion game with explicit strategy lists or a network."""

    n: int
    costs: CostModel
    strategies: tuple[tuple[Strategy, ...], ...] | None = None
    network: NetworkSpec | None = None

    def __post_init__(self):
        if (self.strategies is None) == (self.network is None):
            raise GameValidationError("a game needs exactly one of strategies or network")
        if self.strategies is not None:
            object.__setattr__(
                self, "strategies", tuple(tuple(_normalize(s) for s in S) for S in self.strategies))

    @property
    def m(self) -> int:
        return self.costs.m

    @property
    def is_network(self) -> bool:
        return self.network is not None

    @cached_property
    def table(self) -> np.ndarray:
        t = self.costs.table(self.n)
        t.setflags(write=False)
        return t

    @cached_property
    def prefix(self) -> np.ndarray:
        """``prefix[r, l]`` is the sum of ``c_r(1..l)``; column 0 is zero."""
        p = np.zeros((self.m, self.n + 1), dtype=np.float64)
        np.cumsum(self.table, axis=1, out=p[:, 1:])
        p.setflags(write=False)
        return p

    @cached_property
    def strategy_index(self) -> tuple[dict[Strategy, int], ...]:
        return tuple({s: k for k, s in enumerate(S)} for S in self.strategies)

    @cached_property
    def csr(self):
        """``(strat_ptr, res_ptr, res_idx)`` flattening of explicit strategy sets."""
        strat_ptr = np.zeros(self.n + 1, dtype=np.int64)
        strat_ptr[1:] = np.cumsum([len(S) for S in self.strategies])
        flat = [s for S in self.strategies for s in S]
        res_ptr = np.zeros(len(flat) + 1, dtype=np.int64)
        res_ptr[1:] = np.cumsum([len(s) for s in flat])
        res_idx = np.array([r for s in flat for r in s], dtype=np.int64)
        return strat_ptr, res_ptr, res_idx

    def check_profile(self, profile) -> Profile:
        """Normalize ``profile`` and verify every choice is a legal strategy."""
        if len(profile) != self.n:
            raise GameValidationError(f"profile has {len(profile)} strategies for {self.n} players")
        out = []
        for i, s in enumerate(profile):
            s = self.check_strategy(i, s)
            out.append(s)
        return tuple(out)

    def check_strategy(self, i: int, s) -> Strategy:
        if not 0 <= i < self.n:
            raise GameValidationError(f"player index {i} out of range [0, {self.n})", player=i)
        if self.is_network:
            s = tuple(int(e) for e in s)
            problem = self.network.path_problem(i, s)
            if problem:
                raise GameValidationError(f"player {i + 1}: invalid path {s}: {problem}", player=i)
            return s
        s = _normalize(s)
        if s not in self.strategy_index[i]:
            raise GameValidationError(f"player {i + 1}: strategy {s} is not in the strategy set", player=i)
        return s

    def loads_array(self, profile: Profile) -> np.ndarray:
        loads = np.zeros(self.m, dtype=np.int64)
        for s in profile:
            loads[list(s)] += 1
        return loads

    def strategy_positions(self, profile: Profile) -> np.ndarray:
        """Index of each player's choice within its explicit strategy list."""
        return np.array([self.strategy_index[i][s] for i, s in enumerate(profile)], dtype=np.int64)


def validate_game(game: Game) -> list[str]:
    """All invariant violations of ``game``; an empty list means valid."""
    out = []
    if game.n < 1:
        return ["game needs at least one player"]
    if game.m < 1:
        return ["game needs at least one resource"]
    out.extend(game.costs.violations(game.n))
    if game.is_network:
        if game.network.num_edges != game.m:
            out.append(f"network has {game.network.num_edges} edges but the cost model has {game.m} resources")
        out.extend(game.network.violations(game.n))
        return out
    if len(game.strategies) != game.n:
        out.append(f"{len(game.strategies)} strategy sets for {game.n} players")
    for i, S in enumerate(game.strategies):
        if len(S) == 0:
            out.append(f"player {i + 1}: empty strategy set")
        if len(set(S)) != len(S):
            out.append(f"player {i + 1}: duplicate strategies")
        for s in S:
            if len(s) == 0:
                out.append(f"player {i + 1}: empty strategy")
            elif len(set(s)) != len(s):
                out.append(f"player {i + 1}: strategy {s} repeats a resource")
            elif s[0] < 0 or s[-1] >= game.m:
                out.append(f"player {i + 1}: strategy {s} uses a resource outside [0, {game.m})")
    return out


def ensure_valid(game: Game) -> Game:
    problems = validate_game(game)
    if problems:
        raise GameValidationError("; ".join(problems))
    return game


def compute_loads(game: Game, profile: Sequence) -> np.ndarray:
    """Number of players using each resource."""
    return game.loads_array(game.check_profile(profile))


def player_cost(game: Game, profile: Sequence, i: int) -> float:
    """``C_i(s)``: sum of the costs of player ``i``'s resources at the induced loads."""
    profile = game.check_profile(profile)
    if not 0 <= i < game.n:
        raise GameValidationError(f"player index {i} out of range [0, {game.n})", player=i)
    loads = game.loads_array(profile)
    total = 0.0
    for r in profile[i]:
        total += game.table[r, loads[r] - 1]
    return float(total)


def potential(game: Game, profile: Sequence) -> float:
    """Rosenthal potential, read from per-resource prefix sums."""
    loads = compute_loads(game, profile)
    return potential_of_loads(game, loads)


def potential_of_loads(game: Game, loads: np.ndarray) -> float:
    return float(game.prefix[np.arange(game.m), loads].sum())


def potential_difference_check(game: Game, profile: Sequence, i: int, deviation) -> tuple[float, float]:
    """``(Phi(s) - Phi(s'), C_i(s) - C_i(s'))`` for the unilateral deviation ``s'``.

    The two numbers agree for every congestion game; the pair is returned so
    callers can check that.
    """
    profile = game.check_profile(profile)
    deviation = game.check_strategy(i, deviation)
    moved = profile[:i] + (deviation,) + profile[i + 1:]
    d_phi = potential(game, profile) - potential(game, moved)
    d_cost = player_cost(game, profile, i) - player_cost(game, moved, i)
    return d_phi, d_cost


def potential_upper_bound(game: Game) -> float:
    """Model-specific upper bound on the potential over all profiles."""
    return game.costs.potential_upper_bound(game.n)


def min_cost_lower_bound(game: Game) -> float:
    """Model-specific positive lower bound on every player's cost."""
    return game.costs.min_cost_lower_bound(game.n)
