"""Approximate better-response dynamics.

``run_brd`` repeatedly applies alpha-improving moves (``alpha * C_i(s') <
C_i(s)``, strictly) until none exists.  The search for a move doubles as the
equilibrium check: ``find_improving_move`` returns ``None`` exactly when the
profile is an alpha-PNE.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .game import Game, GameValidationError, Profile, Strategy, player_cost
from .lemma import per_run_cap
from .network import response_weights, shortest_path

DEFAULT_ITERATION_CEILING = 10**8


class PivotRule(str, enum.Enum):
    FIRST_IMPROVEMENT = "first"
    BEST_RESPONSE = "best-response"
    MAX_GAIN = "max-gain"
    RANDOM_IMPROVING = "random"


class Status(str, enum.Enum):
    CONVERGED = "converged"
    ITERATION_CAP_HIT = "iteration-cap-hit"


@dataclass(frozen=True)
class BrdConfig:
    epsilon: float
    pivot_rule: PivotRule = PivotRule.FIRST_IMPROVEMENT
    max_iterations: int | None = None
    seed: int = 0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        object.__setattr__(self, "pivot_rule", PivotRule(self.pivot_rule))

    @property
    def alpha(self) -> float:
        return 1.0 + self.epsilon


@dataclass(frozen=True)
class Move:
    player: int
    from_strategy: Strategy
    to_strategy: Strategy
    cost_before: float
    cost_after: float
    potential_after: float


@dataclass
class RunTrace:
    start_profile: Profile
    moves: list[Move]
    final_profile: Profile
    iterations: int
    status: Status
    start_potential: float
    cap: float = field(default=math.inf)

    @property
    def potentials(self) -> list[float]:
        return [self.start_potential] + [mv.potential_after for mv in self.moves]

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


class _State:
    """Mutable working copy of a profile: loads plus the per-player choices."""

    def __init__(self, game: Game, profile: Profile):
        self.game = game
        self.profile = list(profile)
        self.loads = game.loads_array(profile)
        if not game.is_network:
            self.positions = game.strategy_positions(profile)
        self.potential = float(game.prefix[np.arange(game.m), self.loads].sum())

    def current_cost(self, i):
        t = self.game.table
        c = 0.0
        for r in self.profile[i]:
            c += t[r, self.loads[r] - 1]
        return c

    def network_response(self, i):
        g = self.game
        w = response_weights(g.table, self.loads, self.profile[i])
        o, d = g.network.od_pairs[i]
        return shortest_path(g.network, o, d, w)

    def explicit_best_responses(self):
        strat_ptr, res_ptr, res_idx = self.game.csr
        return kernels.active.explicit_best_responses(
            self.loads, self.positions, strat_ptr, res_ptr, res_idx, self.game.table)

    def apply(self, i, new, cost_before, cost_after) -> Move:
        g = self.game
        old = self.profile[i]
        old_set, new_set = set(old), set(new)
        phi = self.potential
        for r in old:
            if r not in new_set:
                phi -= g.table[r, self.loads[r] - 1]
                self.loads[r] -= 1
        for r in new:
            if r not in old_set:
                self.loads[r] += 1
                phi += g.table[r, self.loads[r] - 1]
        self.potential = float(phi)
        self.profile[i] = new
        if not g.is_network:
            self.positions[i] = g.strategy_index[i][new]
        return Move(i, old, new, float(cost_before), float(cost_after), self.potential)


def _search(state: _State, alpha: float, rule: PivotRule, rng) -> tuple | None:
    """Pick ``(player, new_strategy, cost_before, cost_after)`` or ``None``."""
    g = state.game
    if g.is_network:
        return _search_network(state, alpha, rule, rng)
    if rule is PivotRule.FIRST_IMPROVEMENT:
        strat_ptr, res_ptr, res_idx = g.csr
        i, k, old, new = kernels.active.explicit_first_improvement(
            alpha, state.loads, state.positions, strat_ptr, res_ptr, res_idx, g.table)
        if i < 0:
            return None
        return int(i), g.strategies[i][k], old, new
    cur, br, br_cost = state.explicit_best_responses()
    passing = np.flatnonzero(alpha * br_cost < cur)
    if passing.size == 0:
        return None
    i = _choose(rule, passing, cur - br_cost, rng)
    return i, g.strategies[i][br[i]], cur[i], br_cost[i]


def _search_network(state, alpha, rule, rng):
    # Path sets are never listed, so the first-improvement scan runs over
    # best responses, like the best-response pivot.
    lazy = rule in (PivotRule.FIRST_IMPROVEMENT, PivotRule.BEST_RESPONSE)
    n = state.game.n
    cur = np.empty(n)
    br_cost = np.full(n, np.inf)
    paths = [None] * n
    for i in range(n):
        cur[i] = state.current_cost(i)
        paths[i], br_cost[i] = state.network_response(i)
        if lazy and alpha * br_cost[i] < cur[i]:
            return i, paths[i], cur[i], br_cost[i]
    passing = np.flatnonzero(alpha * br_cost < cur)
    if passing.size == 0:
        return None
    i = _choose(rule, passing, cur - br_cost, rng)
    return i, paths[i], cur[i], br_cost[i]


def _choose(rule, passing, gains, rng) -> int:
    if rule in (PivotRule.FIRST_IMPROVEMENT, PivotRule.BEST_RESPONSE):
        return int(passing[0])
    if rule is PivotRule.MAX_GAIN:
        # argmax returns the first maximum, i.e. the lowest player index
        return int(passing[np.argmax(gains[passing])])
    if rng is None:
        raise ValueError("the random pivot rule needs an rng")
    return int(passing[rng.integers(passing.size)])


def is_alpha_pne(game: Game, profile: Sequence, alpha: float) -> bool:
    """True iff no player can cut their cost by more than a factor ``alpha``.

    Checked through best responses: a profile fails the test exactly when
    some player's best response is alpha-improving.
    """
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    state = _State(game, game.check_profile(profile))
    return _search(state, alpha, PivotRule.BEST_RESPONSE, None) is None


def is_alpha_improving(game: Game, profile: Sequence, i: int, deviation, alpha: float) -> bool:
    profile = game.check_profile(profile)
    deviation = game.check_strategy(i, deviation)
    moved = profile[:i] + (deviation,) + profile[i + 1:]
    return alpha * player_cost(game, moved, i) < player_cost(game, profile, i)


def best_response(game: Game, profile: Sequence, i: int) -> Strategy:
    """A cost-minimizing strategy for player ``i`` against ``s_-i``.

    Explicit games return the first minimum in stored order; network games
    return the cheapest path with the smallest edge-index sequence.
    """
    state = _State(game, game.check_profile(profile))
    if not 0 <= i < game.n:
        raise GameValidationError(f"player index {i} out of range [0, {game.n})", player=i)
    if game.is_network:
        return state.network_response(i)[0]
    _, br, _ = state.explicit_best_responses()
    return game.strategies[i][br[i]]


def find_improving_move(game: Game, profile: Sequence, alpha: float,
                        pivot_rule: PivotRule | str = PivotRule.FIRST_IMPROVEMENT,
                        rng: np.random.Generator | None = None) -> Move | None:
    """An alpha-improving move chosen by ``pivot_rule``, or ``None`` at an alpha-PNE."""
    state = _State(game, game.check_profile(profile))
    picked = _search(state, alpha, PivotRule(pivot_rule), rng)
    if picked is None:
        return None
    return state.apply(*picked)


def run_brd(game: Game, start_profile: Sequence, config: BrdConfig) -> RunTrace:
    """Run (1 + epsilon)-better-response dynamics from ``start_profile``.

    Stops at a (1 + epsilon)-PNE or after ``config.max_iterations`` moves.
    The default cap is the instance's worst-case iteration bound (capped at
    1e8), which a converging run never reaches.
    """
    start = game.check_profile(start_profile)
    alpha = config.alpha
    cap = per_run_cap(game, config.epsilon)
    limit = config.max_iterations
    if limit is None:
        limit = int(min(math.ceil(cap), DEFAULT_ITERATION_CEILING)) if math.isfinite(cap) \
            else DEFAULT_ITERATION_CEILING
    rng = np.random.default_rng(config.seed)
    state = _State(game, start)
    start_phi = state.potential
    moves: list[Move] = []
    status = Status.ITERATION_CAP_HIT
    while True:
        picked = _search(state, alpha, config.pivot_rule, rng)
        if picked is None:
            status = Status.CONVERGED
            break
        if len(moves) >= limit:
            break
        moves.append(state.apply(*picked))
    return RunTrace(start, moves, tuple(state.profile), len(moves), status, start_phi, cap)
