"""
Compiled graph kernels over the table's index arrays.

All arrays are int64. CSR layouts are (offsets, neighbors) with
offsets of length n + 1.
"""
import numpy as np
from numba import njit, prange


@njit(cache=True, nogil=True)
def _find(parent: np.ndarray, x: int) -> int:
    # path halving
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True, nogil=True)
def union_edges(n: int, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    parent = np.arange(n, dtype=np.int64)
    rank = np.zeros(n, dtype=np.int8)
    for e in range(left.shape[0]):
        a = _find(parent, left[e])
        b = _find(parent, right[e])
        if a == b:
            continue
        if rank[a] < rank[b]:
            a, b = b, a
        parent[b] = a
        if rank[a] == rank[b]:
            rank[a] += 1
    return parent


@njit(cache=True, nogil=True)
def _root_of(parent: np.ndarray, x: int) -> int:
    # no path compression here: parent is shared by the parallel iterations
    while parent[x] != x:
        x = parent[x]
    return x


@njit(cache=True, parallel=True)
def _roots(parent: np.ndarray) -> np.ndarray:
    n = parent.shape[0]
    roots = np.empty(n, dtype=np.int64)
    for i in prange(n):
        roots[i] = _root_of(parent, np.int64(i))
    return roots


@njit(cache=True)
def _label_by_first_member(roots: np.ndarray) -> tuple[np.ndarray, int]:
    n = roots.shape[0]
    ids = np.full(n, -1, dtype=np.int64)
    labels = np.empty(n, dtype=np.int64)
    count = 0
    for i in range(n):
        r = roots[i]
        if ids[r] == -1:
            ids[r] = count
            count += 1
        labels[i] = ids[r]
    return labels, count


def component_labels(n: int, left: np.ndarray, right: np.ndarray) -> tuple[np.ndarray, int]:
    """
    Labels each of 0..n-1 by its connected component under the undirected
    edges left[e] -- right[e]. Component ids are ordered by smallest member.
    """
    if n == 0:
        return np.zeros(0, dtype=np.int64), 0

    parent = union_edges(n, left, right)
    labels, count = _label_by_first_member(_roots(parent))
    return labels, int(count)


@njit(cache=True, nogil=True)
def reachable(n: int, offsets: np.ndarray, neighbors: np.ndarray, start: int) -> np.ndarray:
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    seen[start] = True
    stack[0] = start
    top = 1
    while top > 0:
        top -= 1
        v = stack[top]
        for e in range(offsets[v], offsets[v + 1]):
            w = neighbors[e]
            if not seen[w]:
                seen[w] = True
                stack[top] = w
                top += 1
    return seen


@njit(cache=True, nogil=True)
def strong_components(n: int, offsets: np.ndarray, neighbors: np.ndarray) -> np.ndarray:
    """Tarjan's algorithm without recursion; returns the component id of every vertex."""
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=np.bool_)
    component = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    call_vertex = np.empty(n, dtype=np.int64)
    call_edge = np.empty(n, dtype=np.int64)
    top = 0
    counter = 0
    count = 0

    for root in range(n):
        if index[root] != -1:
            continue

        index[root] = counter
        low[root] = counter
        counter += 1
        stack[top] = root
        top += 1
        on_stack[root] = True
        call_vertex[0] = root
        call_edge[0] = offsets[root]
        depth = 1

        while depth > 0:
            v = call_vertex[depth - 1]
            e = call_edge[depth - 1]
            if e < offsets[v + 1]:
                call_edge[depth - 1] = e + 1
                w = neighbors[e]
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[top] = w
                    top += 1
                    on_stack[w] = True
                    call_vertex[depth] = w
                    call_edge[depth] = offsets[w]
                    depth += 1
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        top -= 1
                        w = stack[top]
                        on_stack[w] = False
                        component[w] = count
                        if w == v:
                            break
                    count += 1
                depth -= 1
                if depth > 0:
                    u = call_vertex[depth - 1]
                    if low[v] < low[u]:
                        low[u] = low[v]

    return component
