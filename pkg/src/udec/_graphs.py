"""Small digraph helpers shared by the numeric modules."""

from __future__ import annotations

import numpy as np


def strongly_connected_components(adjacent: np.ndarray) -> list[list[int]]:
    """Tarjan's algorithm (iterative) on a boolean adjacency matrix.

    Returns components as lists of node indices, in reverse topological
    order of the condensation (sinks first).
    """
    adj = np.asarray(adjacent, dtype=bool)
    n = adj.shape[0]
    succ = [np.flatnonzero(adj[i]).tolist() for i in range(n)]

    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            node, child_pos = work[-1]
            if child_pos == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack[node] = True
            advanced = False
            for k in range(child_pos, len(succ[node])):
                nxt = succ[node][k]
                if index[nxt] == -1:
                    work[-1] = (node, k + 1)
                    work.append((nxt, 0))
                    advanced = True
                    break
                if on_stack[nxt]:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == node:
                        break
                components.append(comp)
    return components


def is_strongly_connected(adjacent: np.ndarray) -> bool:
    adj = np.asarray(adjacent, dtype=bool)
    if adj.shape[0] == 0:
        return False
    return len(strongly_connected_components(adj)) == 1
