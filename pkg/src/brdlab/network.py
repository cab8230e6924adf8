"""Network congestion games: strategies are simple origin-destination paths.

Edges of a directed multigraph are the resources (edge ``e`` is resource
``e``), so path sets are never enumerated by the dynamics.  Best responses
are shortest paths under the weights ``c_e(l_e(s_-i) + 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from . import kernels

if TYPE_CHECKING:
    from .game import Game

Path = tuple[int, ...]


class PathEnumerationError(RuntimeError):
    """Raised when simple-path enumeration exceeds its cap."""


class UnreachableError(ValueError):
    pass


@dataclass(frozen=True)
class NetworkSpec:
    """Directed multigraph with per-player origin/destination pairs."""

    num_nodes: int
    edges: tuple[tuple[int, int], ...]
    od_pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(t), int(h)) for t, h in self.edges))
        object.__setattr__(self, "od_pairs", tuple((int(o), int(d)) for o, d in self.od_pairs))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def arrays(self):
        """``(tails, heads, out_ptr, out_edges, in_ptr, in_edges)``, edges ascending per node."""
        tails = np.array([t for t, _ in self.edges], dtype=np.int64)
        heads = np.array([h for _, h in self.edges], dtype=np.int64)
        order = np.arange(len(self.edges), dtype=np.int64)
        out_edges = order[np.argsort(tails, kind="stable")]
        in_edges = order[np.argsort(heads, kind="stable")]
        out_ptr = np.zeros(self.num_nodes + 1, dtype=np.int64)
        in_ptr = np.zeros(self.num_nodes + 1, dtype=np.int64)
        np.cumsum(np.bincount(tails, minlength=self.num_nodes), out=out_ptr[1:])
        np.cumsum(np.bincount(heads, minlength=self.num_nodes), out=in_ptr[1:])
        return tails, heads, out_ptr, out_edges, in_ptr, in_edges

    def reachable(self, origin: int, dest: int) -> bool:
        tails, heads, out_ptr, out_edges, *_ = self.arrays
        seen = {origin}
        stack = [origin]
        while stack:
            u = stack.pop()
            if u == dest:
                return True
            for e in out_edges[out_ptr[u]:out_ptr[u + 1]]:
                v = int(heads[e])
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return False

    def violations(self, n: int) -> list[str]:
        out = []
        for e, (t, h) in enumerate(self.edges):
            if not (0 <= t < self.num_nodes and 0 <= h < self.num_nodes):
                out.append(f"edge {e + 1}: endpoint outside [0, {self.num_nodes})")
        if len(self.od_pairs) != n:
            out.append(f"network: {len(self.od_pairs)} od pairs for {n} players")
        if out:
            return out
        for i, (o, d) in enumerate(self.od_pairs):
            if not (0 <= o < self.num_nodes and 0 <= d < self.num_nodes):
                out.append(f"player {i + 1}: od pair ({o}, {d}) outside the node range")
            elif o == d:
                out.append(f"player {i + 1}: origin equals destination")
            elif not self.reachable(o, d):
                out.append(f"player {i + 1}: destination {d} unreachable from origin {o}")
        return out

    def path_problem(self, i: int, path: Path) -> str | None:
        """Reason ``path`` is not a simple path for player ``i``, or ``None``."""
        o, d = self.od_pairs[i]
        if len(path) == 0:
            return "empty path"
        node = o
        visited = {o}
        for e in path:
            if not 0 <= e < self.num_edges:
                return f"edge index {e} out of range"
            t, h = self.edges[e]
            if t != node:
                return f"edge {e} does not continue the path at node {node}"
            if h in visited:
                return f"path revisits node {h}"
            visited.add(h)
            node = h
        if node != d:
            return f"path ends at node {node}, not destination {d}"
        return None


def enumerate_simple_paths(spec: NetworkSpec, origin: int, dest: int, cap: int = 10_000) -> list[Path]:
    """All simple ``origin -> dest`` paths, ordered lexicographically by edge indices.

    Raises
    ------
    PathEnumerationError
        If more than ``cap`` paths exist; such instances are unsuitable for
        brute-force checking.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    _, heads, out_ptr, out_edges, _, _ = spec.arrays
    paths: list[Path] = []
    prefix: list[int] = []
    on_path = {origin}

    def walk(u):
        if u == dest:
            if len(paths) >= cap:
                raise PathEnumerationError(
                    f"more than {cap} simple paths from {origin} to {dest}; instance too large for enumeration")
            paths.append(tuple(prefix))
            return
        for e in out_edges[out_ptr[u]:out_ptr[u + 1]]:
            v = int(heads[e])
            if v in on_path:
                continue
            on_path.add(v)
            prefix.append(int(e))
            walk(v)
            prefix.pop()
            on_path.remove(v)

    walk(origin)
    return paths


def first_simple_path(spec: NetworkSpec, origin: int, dest: int) -> Path:
    """Lexicographically smallest simple path, found by depth-first search."""
    _, heads, out_ptr, out_edges, _, _ = spec.arrays
    prefix: list[int] = []
    on_path = {origin}

    def walk(u):
        if u == dest:
            return True
        for e in out_edges[out_ptr[u]:out_ptr[u + 1]]:
            v = int(heads[e])
            if v in on_path:
                continue
            on_path.add(v)
            prefix.append(int(e))
            if walk(v):
                return True
            prefix.pop()
            on_path.remove(v)
        return False

    if not walk(origin):
        raise UnreachableError(f"no path from {origin} to {dest}")
    return tuple(prefix)


def response_weights(table: np.ndarray, loads: np.ndarray, current: Path | None) -> np.ndarray:
    """Edge weights ``c_e(l_e(s_-i) + 1)`` for a player currently on ``current``."""
    cols = loads.copy()
    if current:
        cols[list(current)] -= 1
    return table[np.arange(table.shape[0]), cols]


def shortest_path(spec: NetworkSpec, origin: int, dest: int, weights: np.ndarray) -> tuple[Path, float]:
    """Cheapest simple path under ``weights``; ties go to the smallest edge sequence."""
    edges, cost = kernels.active.shortest_path(
        origin, dest, np.ascontiguousarray(weights, dtype=np.float64), spec.num_nodes, *spec.arrays)
    if len(edges) == 0:
        raise UnreachableError(f"destination {dest} unreachable from {origin}")
    return tuple(int(e) for e in edges), float(cost)


def network_best_response(game: "Game", profile, i: int) -> tuple[Path, float]:
    """Best-response path of player ``i`` and its cost against ``s_-i``."""
    profile = game.check_profile(profile)
    loads = game.loads_array(profile)
    weights = response_weights(game.table, loads, profile[i])
    o, d = game.network.od_pairs[i]
    return shortest_path(game.network, o, d, weights)
