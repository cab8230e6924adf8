"""Vectorized numpy versions of the inner loops; used when numba is off."""
import numpy as np

NAME = "numpy"


def _entry_owner(strat_ptr, res_ptr):
    # player owning each flattened (strategy, resource) entry
    per_strategy = np.repeat(np.arange(strat_ptr.size - 1), np.diff(strat_ptr))
    return np.repeat(per_strategy, np.diff(res_ptr))


def _segment_sums(vals, ptr):
    # Strict left-to-right sums per segment, as the compiled loop does.
    # np.add.reduceat pairs terms differently and can differ in the last bit.
    lengths = np.diff(ptr)
    width = int(lengths.max()) if lengths.size else 0
    pos = np.arange(vals.size) - np.repeat(ptr[:-1], lengths)
    padded = np.zeros((lengths.size, width))
    padded[np.repeat(np.arange(lengths.size), lengths), pos] = vals
    acc = np.zeros(lengths.size)
    for j in range(width):
        acc += padded[:, j]
    return acc


def explicit_costs(loads, current, strat_ptr, res_ptr, res_idx, table):
    n = current.shape[0]
    m = table.shape[0]
    owner = _entry_owner(strat_ptr, res_ptr)
    cur_k = strat_ptr[:-1] + current
    in_cur = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        in_cur[i, res_idx[res_ptr[cur_k[i]]:res_ptr[cur_k[i] + 1]]] = 1
    cols = loads[res_idx] - in_cur[owner, res_idx]
    vals = table[res_idx, cols]
    costs = _segment_sums(vals, res_ptr)
    return costs, costs[cur_k]


def explicit_best_responses(loads, current, strat_ptr, res_ptr, res_idx, table):
    costs, cur_cost = explicit_costs(loads, current, strat_ptr, res_ptr, res_idx, table)
    n = current.shape[0]
    br = np.empty(n, dtype=np.int64)
    for i in range(n):
        br[i] = np.argmin(costs[strat_ptr[i]:strat_ptr[i + 1]])
    return cur_cost, br, costs[strat_ptr[:-1] + br]


def explicit_first_improvement(alpha, loads, current, strat_ptr, res_ptr, res_idx, table):
    costs, cur_cost = explicit_costs(loads, current, strat_ptr, res_ptr, res_idx, table)
    owner = np.repeat(np.arange(current.shape[0]), np.diff(strat_ptr))
    hits = np.flatnonzero(alpha * costs < cur_cost[owner])
    if hits.size == 0:
        return -1, -1, 0.0, 0.0
    k = hits[0]
    i = owner[k]
    return int(i), int(k - strat_ptr[i]), float(cur_cost[i]), float(costs[k])


def distances_to(dest, weights, num_nodes, tails, in_ptr, in_edges):
    dist = np.full(num_nodes, np.inf)
    done = np.zeros(num_nodes, dtype=bool)
    dist[dest] = 0.0
    for _ in range(num_nodes):
        masked = np.where(done, np.inf, dist)
        v = int(np.argmin(masked))
        if not masked[v] < np.inf:
            break
        done[v] = True
        edges = in_edges[in_ptr[v]:in_ptr[v + 1]]
        np.minimum.at(dist, tails[edges], weights[edges] + dist[v])
    return dist


def shortest_path(origin, dest, weights, num_nodes, tails, heads, out_ptr, out_edges, in_ptr, in_edges):
    dist = distances_to(dest, weights, num_nodes, tails, in_ptr, in_edges)
    if not dist[origin] < np.inf:
        return np.empty(0, dtype=np.int64), np.inf
    tight = weights + dist[heads] == dist[tails]
    seen = np.zeros(num_nodes, dtype=bool)
    u = origin
    seen[u] = True
    path = []
    cost = 0.0
    while u != dest:
        cand = out_edges[out_ptr[u]:out_ptr[u + 1]]
        cand = cand[tight[cand] & ~seen[heads[cand]]]
        if cand.size == 0:
            return _tree_path(origin, dest, weights, tight, num_nodes, tails, heads, out_ptr, out_edges)
        e = int(cand[0])
        path.append(e)
        cost += weights[e]
        u = int(heads[e])
        seen[u] = True
    return np.asarray(path, dtype=np.int64), cost


def _tree_path(origin, dest, weights, tight, num_nodes, tails, heads, out_ptr, out_edges):
    parent = np.full(num_nodes, -1, dtype=np.int64)
    seen = np.zeros(num_nodes, dtype=bool)
    seen[origin] = True
    frontier = [origin]
    while frontier:
        nxt = []
        for u in frontier:
            for e in out_edges[out_ptr[u]:out_ptr[u + 1]]:
                v = heads[e]
                if tight[e] and not seen[v]:
                    seen[v] = True
                    parent[v] = e
                    nxt.append(v)
        frontier = nxt
    path = []
    v = dest
    while v != origin:
        path.append(int(parent[v]))
        v = tails[parent[v]]
    path.reverse()
    cost = 0.0
    for e in path:
        cost += weights[e]
    return np.asarray(path, dtype=np.int64), cost
