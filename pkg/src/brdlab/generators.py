"""Random game skeletons for tests, benchmarks and experiments."""
from __future__ import annotations

import numpy as np

from .costs import CostModel, CostSharingCosts, PolynomialCosts, StepFunctionCosts, TabularCosts
from .game import Game
from .network import NetworkSpec


def _unit(rng, size):
    # uniform on (0, 1]
    return 1.0 - rng.random(size)


def random_costs(kind: str, n: int, m: int, rng: np.random.Generator, *,
                 d: int | None = None, degree: int = 2) -> CostModel:
    """Random cost model with all parameters in (0, 1].

    ``d`` is the total number of break points for step costs (at least one
    per resource, at most ``n`` per resource); ``degree`` bounds polynomials.
    """
    if kind == "tabular":
        return TabularCosts(_unit(rng, (m, n)))
    if kind == "step":
        if d is None:
            counts = rng.integers(1, min(n, 3) + 1, size=m)
        else:
            if not m <= d <= m * n:
                raise ValueError(f"need m <= d <= m*n for step costs, got d = {d}")
            counts = np.ones(m, dtype=np.int64)
            for _ in range(d - m):
                open_ = np.flatnonzero(counts < n)
                counts[rng.choice(open_)] += 1
        breaks, jumps = [], []
        for c in counts:
            rest = np.sort(rng.choice(np.arange(2, n + 1), size=c - 1, replace=False)) if c > 1 else []
            breaks.append([1, *map(int, rest)])
            jumps.append(_unit(rng, c))
        return StepFunctionCosts(breaks, jumps)
    if kind == "polynomial":
        rows = np.zeros((m, degree + 1))
        for r in range(m):
            support = rng.random(degree + 1) < 0.5
            if not support.any():
                support[rng.integers(degree + 1)] = True
            rows[r, support] = _unit(rng, int(support.sum()))
        return PolynomialCosts(rows, degree)
    if kind == "cost_sharing":
        return CostSharingCosts(_unit(rng, m))
    raise ValueError(f"unknown model kind {kind!r}")


def random_explicit_game(kind: str, n: int, m: int, rng: np.random.Generator, *,
                         strategies_per_player: int | tuple[int, int] = (1, 4),
                         max_strategy_size: int | None = None, **cost_kw) -> Game:
    """Explicit game whose players each hold distinct random resource subsets."""
    max_size = m if max_strategy_size is None else min(max_strategy_size, m)
    strategies = []
    for _ in range(n):
        if isinstance(strategies_per_player, tuple):
            lo, hi = strategies_per_player
            k = int(rng.integers(lo, hi + 1))
        else:
            k = strategies_per_player
        k = min(k, 2**m - 1)
        chosen: dict[tuple[int, ...], None] = {}
        while len(chosen) < k:
            size = int(rng.integers(1, max_size + 1))
            s = tuple(sorted(int(r) for r in rng.choice(m, size=size, replace=False)))
            chosen.setdefault(s)
        strategies.append(tuple(chosen))
    return Game(n, random_costs(kind, n, m, rng, **cost_kw), strategies=tuple(strategies))


def random_network(num_players: int, rng: np.random.Generator, *, max_nodes: int = 6,
                   max_edges: int = 10) -> NetworkSpec:
    """Random multigraph with a spanning chain, plus reachable od pairs."""
    v = int(rng.integers(2, max_nodes + 1))
    order = rng.permutation(v)
    edges = [(int(a), int(b)) for a, b in zip(order[:-1], order[1:])]
    extra = int(rng.integers(0, max(max_edges - len(edges), 0) + 1))
    for _ in range(extra):
        t, h = rng.choice(v, size=2, replace=False)
        edges.append((int(t), int(h)))
    edges = [edges[j] for j in rng.permutation(len(edges))]
    probe = NetworkSpec(v, tuple(edges), ())
    pairs = [(o, d) for o in range(v) for d in range(v) if o != d and probe.reachable(o, d)]
    picks = rng.integers(len(pairs), size=num_players)
    return NetworkSpec(v, tuple(edges), tuple(pairs[j] for j in picks))


def random_network_game(kind: str, n: int, rng: np.random.Generator, *, max_nodes: int = 6,
                        max_edges: int = 10, **cost_kw) -> Game:
    net = random_network(n, rng, max_nodes=max_nodes, max_edges=max_edges)
    return Game(n, random_costs(kind, n, net.num_edges, rng, **cost_kw), network=net)
