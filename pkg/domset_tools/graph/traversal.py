import numpy as np
from numba import njit


@njit(nogil=True)
def _bounded_bfs(indptr, indices, source, k, seen, stamp, queue):
    seen[source] = stamp
    queue[0] = source
    head = 0
    tail = 1
    depth = 0
    while head < tail and depth < k:
        level_end = tail
        while head < level_end:
            v = queue[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                if seen[u] != stamp:
                    seen[u] = stamp
                    queue[tail] = u
                    tail += 1
        depth += 1
    # queue[1:tail] holds every node within distance k, excluding the source
    return tail


@njit(nogil=True)
def _ball(indptr, indices, source, k):
    n = indptr.size - 1
    seen = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    tail = _bounded_bfs(indptr, indices, source, k, seen, 1, queue)
    return np.sort(queue[1:tail])


@njit(nogil=True)
def _ball_sizes(indptr, indices, k, start, stop):
    n = indptr.size - 1
    seen = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    sizes = np.zeros(stop - start, dtype=np.int64)
    for v in range(start, stop):
        tail = _bounded_bfs(indptr, indices, v, k, seen, v + 1, queue)
        sizes[v - start] = tail - 1
    return sizes


@njit(nogil=True)
def _fill_balls(indptr, indices, k, out_indptr, out_indices):
    n = indptr.size - 1
    seen = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for v in range(n):
        tail = _bounded_bfs(indptr, indices, v, k, seen, v + 1, queue)
        out_indices[out_indptr[v]:out_indptr[v + 1]] = np.sort(queue[1:tail])


def ball(indptr: np.ndarray, indices: np.ndarray, source: int,
         k: int) -> np.ndarray:
    """Sorted ids of all nodes within distance ``k`` of ``source``, excluding
    ``source`` itself, found by a depth-bounded breadth-first traversal.

    Args:
        indptr: CSR row pointer array
        indices: CSR column index array
        source: Source node id
        k: Maximum distance

    Returns:
        Sorted node ids
    """
    return _ball(indptr, indices, source, k)


def ball_sizes(indptr: np.ndarray, indices: np.ndarray, k: int) -> np.ndarray:
    """Number of nodes within distance ``k`` of every node (its degree in the
    ``k``-th power graph).

    Args:
        indptr: CSR row pointer array
        indices: CSR column index array
        k: Maximum distance

    Returns:
        Array of ball sizes, indexed by node id
    """
    return _ball_sizes(indptr, indices, k, 0, indptr.size - 1)


def fill_balls(
    indptr: np.ndarray, indices: np.ndarray, k: int, out_indptr: np.ndarray
) -> np.ndarray:
    """Fill the CSR column array of the ``k``-th power graph.

    Args:
        indptr: CSR row pointer array
        indices: CSR column index array
        k: Maximum distance
        out_indptr: Row pointer array of the power graph, as computed from
            :func:`ball_sizes`

    Returns:
        Column index array of the power graph
    """
    out_indices = np.empty(out_indptr[-1], dtype=np.int64)
    _fill_balls(indptr, indices, k, out_indptr, out_indices)
    return out_indices
