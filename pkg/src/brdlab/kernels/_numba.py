"""Compiled inner loops.  Signatures mirror ``_numpy`` exactly."""
import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def explicit_costs(loads, current, strat_ptr, res_ptr, res_idx, table):
    """Cost of every stored strategy against the other players' choices.

    Returns ``(costs, cur_cost)``: ``costs[k]`` for global strategy ``k`` and
    ``cur_cost[i]`` for player ``i``'s current strategy.
    """
    n = current.shape[0]
    m = table.shape[0]
    mark = np.zeros(m, dtype=np.int64)
    costs = np.empty(res_ptr.shape[0] - 1, dtype=np.float64)
    cur_cost = np.empty(n, dtype=np.float64)
    for i in range(n):
        k0 = strat_ptr[i] + current[i]
        for p in range(res_ptr[k0], res_ptr[k0 + 1]):
            mark[res_idx[p]] = 1
        for k in range(strat_ptr[i], strat_ptr[i + 1]):
            c = 0.0
            for p in range(res_ptr[k], res_ptr[k + 1]):
                r = res_idx[p]
                c += table[r, loads[r] - mark[r]]
            costs[k] = c
        cur_cost[i] = costs[k0]
        for p in range(res_ptr[k0], res_ptr[k0 + 1]):
            mark[res_idx[p]] = 0
    return costs, cur_cost


@njit(cache=True)
def explicit_best_responses(loads, current, strat_ptr, res_ptr, res_idx, table):
    """Per player: current cost, local index of the first cheapest strategy, its cost."""
    costs, cur_cost = explicit_costs(loads, current, strat_ptr, res_ptr, res_idx, table)
    n = current.shape[0]
    br = np.empty(n, dtype=np.int64)
    br_cost = np.empty(n, dtype=np.float64)
    for i in range(n):
        best = np.inf
        bk = -1
        for k in range(strat_ptr[i], strat_ptr[i + 1]):
            if costs[k] < best:
                best = costs[k]
                bk = k - strat_ptr[i]
        br[i] = bk
        br_cost[i] = best
    return cur_cost, br, br_cost


@njit(cache=True)
def explicit_first_improvement(alpha, loads, current, strat_ptr, res_ptr, res_idx, table):
    """First ``(player, local strategy)`` in scan order with ``alpha * new < old``.

    Returns ``(-1, -1, 0, 0)`` when the profile is an alpha-PNE.
    """
    n = current.shape[0]
    m = table.shape[0]
    mark = np.zeros(m, dtype=np.int64)
    for i in range(n):
        k0 = strat_ptr[i] + current[i]
        old = 0.0
        for p in range(res_ptr[k0], res_ptr[k0 + 1]):
            r = res_idx[p]
            mark[r] = 1
            old += table[r, loads[r] - 1]
        for k in range(strat_ptr[i], strat_ptr[i + 1]):
            c = 0.0
            for p in range(res_ptr[k], res_ptr[k + 1]):
                r = res_idx[p]
                c += table[r, loads[r] - mark[r]]
            if alpha * c < old:
                return i, k - strat_ptr[i], old, c
        for p in range(res_ptr[k0], res_ptr[k0 + 1]):
            mark[res_idx[p]] = 0
    return -1, -1, 0.0, 0.0


@njit(cache=True)
def distances_to(dest, weights, num_nodes, tails, in_ptr, in_edges):
    """Shortest-path distance from every node to ``dest`` (dense Dijkstra)."""
    dist = np.full(num_nodes, np.inf)
    done = np.zeros(num_nodes, dtype=np.bool_)
    dist[dest] = 0.0
    for _ in range(num_nodes):
        v = -1
        best = np.inf
        for u in range(num_nodes):
            if not done[u] and dist[u] < best:
                best = dist[u]
                v = u
        if v < 0:
            break
        done[v] = True
        for p in range(in_ptr[v], in_ptr[v + 1]):
            e = in_edges[p]
            u = tails[e]
            cand = weights[e] + dist[v]
            if cand < dist[u]:
                dist[u] = cand
    return dist


@njit(cache=True)
def shortest_path(origin, dest, weights, num_nodes, tails, heads, out_ptr, out_edges, in_ptr, in_edges):
    """Cheapest simple ``origin -> dest`` path, lexicographically smallest edge sequence.

    Returns ``(edges, cost)``; ``edges`` is empty when ``dest`` is unreachable.
    """
    dist = distances_to(dest, weights, num_nodes, tails, in_ptr, in_edges)
    path = np.empty(num_nodes, dtype=np.int64)
    if not dist[origin] < np.inf:
        return path[:0].copy(), np.inf
    seen = np.zeros(num_nodes, dtype=np.bool_)
    u = origin
    seen[u] = True
    length = 0
    cost = 0.0
    while u != dest:
        nxt = -1
        for p in range(out_ptr[u], out_ptr[u + 1]):
            e = out_edges[p]
            v = heads[e]
            if not seen[v] and weights[e] + dist[v] == dist[u]:
                nxt = e
                break
        if nxt < 0:
            # zero-weight cycles can strand the greedy walk; fall back to the tree
            return _tree_path(origin, dest, weights, dist, num_nodes, tails, heads, out_ptr, out_edges)
        path[length] = nxt
        length += 1
        cost += weights[nxt]
        u = heads[nxt]
        seen[u] = True
    return path[:length].copy(), cost


@njit(cache=True)
def _tree_path(origin, dest, weights, dist, num_nodes, tails, heads, out_ptr, out_edges):
    # BFS over tight edges; parent pointers form a tree, so the path is simple.
    parent = np.full(num_nodes, -1, dtype=np.int64)
    seen = np.zeros(num_nodes, dtype=np.bool_)
    queue = np.empty(num_nodes, dtype=np.int64)
    queue[0] = origin
    seen[origin] = True
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        for p in range(out_ptr[u], out_ptr[u + 1]):
            e = out_edges[p]
            v = heads[e]
            if not seen[v] and weights[e] + dist[v] == dist[u]:
                seen[v] = True
                parent[v] = e
                queue[tail] = v
                tail += 1
    rev = np.empty(num_nodes, dtype=np.int64)
    length = 0
    v = dest
    while v != origin:
        e = parent[v]
        rev[length] = e
        length += 1
        v = tails[e]
    path = rev[:length][::-1].copy()
    cost = 0.0
    for e in path:
        cost += weights[e]
    return path, cost
