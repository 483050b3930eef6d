from typing import List, NamedTuple, Optional

import numpy as np
from joblib import delayed
from numba import njit

from .. import utils
from ..graph import Graph

# Tags are ((raw >> 12) + 0.5) / 2**52, which is exact in float64 and lies
# strictly inside (0, 1).
_TAG_SHIFT = np.uint64(12)
_TAG_SCALE = 2.0**-52
# Philox counter steps produce blocks of four outputs.
_PHILOX_BLOCK = 4


class NodeState(NamedTuple):
    """Snapshot of the algorithm state of a single node.

    ``d`` is the degree, ``r`` the random tag, ``x`` the mark count from the
    previous round (None before any marking) and ``w`` the weight the node
    advertised, which is ``d + r`` initially and ``x + r`` afterwards.
    ``choice`` is the neighbor the node currently marks, or -1 if it has none.
    """
    id: int
    d: int
    r: float
    w: float
    x: Optional[int]
    choice: int


def tags_for_range(seed: int, start: int, stop: int) -> np.ndarray:
    """Random tags of nodes ``start`` to ``stop - 1``. Node ``i`` takes output
    ``i`` of a Philox counter-based stream keyed by ``seed``, so a tag depends
    only on ``(seed, i)``.

    Args:
        seed: Stream key, in ``[0, 2**64)``
        start: First node id
        stop: One past the last node id

    Returns:
        Array of tags strictly inside (0, 1)
    """
    skip, offset = divmod(start, _PHILOX_BLOCK)
    bit_generator = np.random.Philox(key=seed)
    bit_generator.advance(skip)
    raw = bit_generator.random_raw(stop - skip * _PHILOX_BLOCK)[offset:]
    return ((raw >> _TAG_SHIFT).astype(np.float64) + 0.5) * _TAG_SCALE


def assign_tags(graph: Graph, seed: int) -> np.ndarray:
    """Random tag ``0 < r < 1`` of every node of the graph.

    Args:
        graph: The graph
        seed: Stream key, in ``[0, 2**64)``

    Returns:
        Array of tags, indexed by node id
    """
    return tags_for_range(seed, 0, graph.n)


@njit(nogil=True)
def _heavier(u, best, counts, tags):
    if counts[u] != counts[best]:
        return counts[u] > counts[best]
    if tags[u] != tags[best]:
        return tags[u] > tags[best]
    return u > best


@njit(nogil=True)
def _mark(indptr, indices, counts, tags, start, stop, choices):
    for v in range(start, stop):
        best = -1
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            if best < 0 or _heavier(u, best, counts, tags):
                best = u
        choices[v] = best


def _chunks(n: int, n_threads: int) -> List[tuple]:
    bounds = np.linspace(0, n, min(n_threads, max(n, 1)) + 1).astype(int)
    return list(zip(bounds[:-1], bounds[1:]))


def mark(
    graph: Graph,
    counts: np.ndarray,
    tags: np.ndarray,
    n_threads: int = 1,
) -> np.ndarray:
    """Every node marks its heaviest neighbor. Weights are compared as
    ``(counts[u], tags[u], u)`` lexicographically, which orders them exactly as
    ``counts[u] + tags[u]`` with ties going to the larger id. A node never marks
    itself.

    Nodes only read ``counts`` and ``tags``, so they are split into chunks that
    are marked concurrently when ``n_threads > 1``; the result does not depend
    on the split.

    Args:
        graph: The graph
        counts: Integer part of every node's weight
        tags: Random tag of every node
        n_threads: Number of threads. Defaults to 1.

    Returns:
        Chosen neighbor of every node, or -1 for isolated nodes
    """
    counts = np.asarray(counts, dtype=np.int64)
    choices = np.full(graph.n, -1, dtype=np.int64)
    if n_threads == 1:
        _mark(graph.indptr, graph.indices, counts, tags, 0, graph.n, choices)
        return choices

    chunks = _chunks(graph.n, n_threads)
    utils.ParallelWithProgress(
        n_jobs=n_threads, backend='threading', total=len(chunks), disable=True
    )(
        delayed(_mark)(
            graph.indptr, graph.indices, counts, tags, start, stop, choices
        ) for start, stop in chunks
    )
    return choices


def mark_counts(choices: np.ndarray, n: int) -> np.ndarray:
    """Number of times every node was marked.

    Args:
        choices: Chosen neighbor of every node, -1 for none
        n: Number of nodes

    Returns:
        Mark count of every node
    """
    return np.bincount(choices[choices >= 0], minlength=n).astype(np.int64)


def initial_mark(
    graph: Graph, tags: np.ndarray, n_threads: int = 1
) -> np.ndarray:
    """Initial marking: every node marks the neighbor maximizing ``d + r``.

    Args:
        graph: The graph
        tags: Random tag of every node
        n_threads: Number of threads. Defaults to 1.

    Returns:
        Chosen neighbor of every node, or -1 for isolated nodes
    """
    return mark(graph, graph.degrees, tags, n_threads=n_threads)


def refine_round(
    graph: Graph,
    tags: np.ndarray,
    prev_choices: np.ndarray,
    n_threads: int = 1,
) -> np.ndarray:
    """One refinement round. Mark counts ``x`` are taken from the previous
    round's choices, all marks are dropped and every node re-marks the neighbor
    maximizing ``x + r``.

    Args:
        graph: The graph
        tags: Random tag of every node
        prev_choices: Choices of the previous round
        n_threads: Number of threads. Defaults to 1.

    Returns:
        New chosen neighbor of every node, or -1 for isolated nodes
    """
    counts = mark_counts(prev_choices, graph.n)
    return mark(graph, counts, tags, n_threads=n_threads)


def marked_set(choices: np.ndarray) -> np.ndarray:
    """Sorted ids of all nodes chosen by at least one node."""
    return np.unique(choices[choices >= 0])


def node_states(
    graph: Graph,
    tags: np.ndarray,
    choices: np.ndarray,
    counts: Optional[np.ndarray] = None,
) -> List[NodeState]:
    """Snapshot the state of every node.

    Args:
        graph: The graph
        tags: Random tag of every node
        choices: Current choice of every node
        counts: Mark counts the current choices were made with. Defaults to
            None, meaning the choices are the initial marking.

    Returns:
        List of node states, indexed by node id
    """
    degrees = graph.degrees
    states = []
    for v in range(graph.n):
        x = None if counts is None else int(counts[v])
        base = degrees[v] if x is None else x
        states.append(
            NodeState(
                id=v,
                d=int(degrees[v]),
                r=float(tags[v]),
                w=float(base + tags[v]),
                x=x,
                choice=int(choices[v]),
            )
        )
    return states
