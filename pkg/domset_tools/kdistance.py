import time
from typing import Optional

import numpy as np
from joblib import delayed
from numba import njit

from . import utils
from .engine import (
    RunConfig,
    Solution,
    check_isolated,
    simulate_rounds,
    solve,
)
from .engine.marking import (
    _chunks,
    _heavier,
    assign_tags,
    initial_mark,
    mark_counts,
    marked_set,
    refine_round,
)
from .graph import Graph, traversal
from .logging import logger

MATERIALIZE_MAX_EDGES = 1_000_000


class KDistanceError(Exception):
    pass


class KConfig:
    """Parameters of a k-distance run.

    Attributes:
        _k: Neighborhood radius; for internal use only. Use :attr:`k` instead.
        _base: Configuration of the underlying run; for internal use only. Use
            :attr:`base` instead.
        _materialize_power_graph: Whether to build the power graph, or None to
            decide by size; for internal use only.
        _max_edges: Edge budget of a materialized power graph; for internal use
            only. Use :attr:`max_edges` instead.
    """

    def __init__(
        self,
        k: int = 1,
        base: Optional[RunConfig] = None,
        materialize_power_graph: Optional[bool] = None,
        max_edges: Optional[int] = None,
    ):
        """
        Args:
            k: Neighborhood radius. Defaults to 1.
            base: Configuration of the underlying run. Defaults to
                ``RunConfig()``.
            materialize_power_graph: Whether to build the ``k``-th power graph
                and run the base algorithm on it, or query ``k``-hop
                neighborhoods on the fly. Defaults to None, which materializes
                only power graphs within ``max_edges`` edges, or within
                ``MATERIALIZE_MAX_EDGES`` edges when there is no budget.
            max_edges: Maximum number of edges of a materialized power graph.
                Defaults to None, which forced materialization does not limit.

        Raises:
            KDistanceError: If ``k < 1`` or ``max_edges < 0``
        """
        if not isinstance(k, int) or k < 1:
            raise KDistanceError(f'`k` must be a positive integer, got {k!r}')
        if max_edges is not None and max_edges < 0:
            raise KDistanceError('`max_edges` must be non-negative')

        self._k = k
        self._base = base or RunConfig()
        self._materialize_power_graph = materialize_power_graph
        self._max_edges = max_edges

    @property
    def k(self) -> int:
        """Neighborhood radius"""
        return self._k

    @property
    def base(self) -> RunConfig:
        """Configuration of the underlying run"""
        return self._base

    @property
    def max_edges(self) -> Optional[int]:
        """Edge budget of a materialized power graph"""
        return self._max_edges

    def materialize(
        self, graph: Graph, sizes: Optional[np.ndarray] = None
    ) -> bool:
        """Whether the power graph of ``graph`` should be materialized.

        Args:
            graph: The graph
            sizes: Ball sizes of ``graph`` for radius :attr:`k`, if already
                computed. Defaults to None.

        Returns:
            True if forced, or if the power graph fits the edge budget
        """
        if self._materialize_power_graph is not None:
            return self._materialize_power_graph
        if self.k == 1:
            return True
        budget = self.max_edges
        if budget is None:
            budget = MATERIALIZE_MAX_EDGES
        return power_edges(graph, self.k, sizes=sizes) <= budget

    def __repr__(self):
        return (
            f'{self.__class__.__name__}(k={self.k}, base={self.base!r}, '
            f'materialize_power_graph={self._materialize_power_graph}, '
            f'max_edges={self.max_edges})'
        )


def power_edges(
    graph: Graph, k: int, sizes: Optional[np.ndarray] = None
) -> int:
    """Number of edges of the ``k``-th power of a graph, counted from ball
    sizes without building it.
    """
    if sizes is None:
        sizes = traversal.ball_sizes(graph.indptr, graph.indices, k)
    return int(sizes.sum()) // 2


def power_graph(
    graph: Graph, k: int, max_edges: Optional[int] = None
) -> Graph:
    """The ``k``-th power of a graph, which joins every pair of nodes at distance
    at most ``k``. Node ids and labels are unchanged.

    Args:
        graph: The graph
        k: Maximum distance
        max_edges: Maximum number of edges of the result. Defaults to None (no
            limit).

    Returns:
        The power graph

    Raises:
        KDistanceError: If ``k < 1`` or the power graph would have more than
            ``max_edges`` edges
    """
    if k < 1:
        raise KDistanceError(f'`k` must be at least 1, got {k}')
    if k == 1:
        return graph

    sizes = traversal.ball_sizes(graph.indptr, graph.indices, k)
    m_edges = power_edges(graph, k, sizes=sizes)
    if max_edges is not None and m_edges > max_edges:
        raise KDistanceError(
            f'Power graph with k={k} has {m_edges} edges, more than the budget '
            f'of {max_edges}. Use on-the-fly neighborhoods instead.'
        )
    indptr = np.zeros(graph.n + 1, dtype=np.int64)
    np.cumsum(sizes, out=indptr[1:])
    indices = traversal.fill_balls(graph.indptr, graph.indices, k, indptr)
    logger.debug(
        f'Power graph with k={k}: {graph.m_edges} -> {m_edges} edges'
    )
    return Graph(indptr, indices, labels=graph.labels)


@njit(nogil=True)
def _mark_khop(indptr, indices, k, counts, tags, start, stop, choices):
    n = indptr.size - 1
    seen = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for v in range(start, stop):
        tail = traversal._bounded_bfs(indptr, indices, v, k, seen, v + 1, queue)
        best = -1
        for i in range(1, tail):
            u = queue[i]
            if best < 0 or _heavier(u, best, counts, tags):
                best = u
        choices[v] = best


def mark_khop(
    graph: Graph,
    k: int,
    counts: np.ndarray,
    tags: np.ndarray,
    n_threads: int = 1,
) -> np.ndarray:
    """Every node marks the heaviest node within distance ``k``, found by a
    depth-bounded breadth-first traversal, without building the power graph.
    Weights are compared exactly as :func:`domset_tools.engine.mark` does.

    Args:
        graph: The graph
        k: Maximum distance
        counts: Integer part of every node's weight
        tags: Random tag of every node
        n_threads: Number of threads. Defaults to 1.

    Returns:
        Chosen node of every node, or -1 for isolated nodes
    """
    counts = np.asarray(counts, dtype=np.int64)
    choices = np.full(graph.n, -1, dtype=np.int64)
    chunks = _chunks(graph.n, n_threads)
    utils.ParallelWithProgress(
        n_jobs=n_threads, backend='threading', total=len(chunks), disable=True
    )(
        delayed(_mark_khop)(
            graph.indptr, graph.indices, k, counts, tags, start, stop, choices
        ) for start, stop in chunks
    )
    return choices


def solve_kdistance(graph: Graph, config: KConfig) -> Solution:
    """Solve k-distance total domination by running the marking algorithm with
    the nodes within distance ``k`` acting as neighbors. A node's degree is the
    size of its ``k``-neighborhood. The marked set is the same whether the power
    graph is materialized or neighborhoods are queried on the fly, and ``k = 1``
    is exactly :func:`domset_tools.engine.solve`.

    Args:
        graph: The graph
        config: k-distance configuration

    Returns:
        The solution. ``rounds`` is ``k * (2 + m)``, since every marking phase
        takes ``k`` communication rounds.

    Raises:
        EngineError: If the graph is empty
        IsolatedVertexError: If the graph has isolated vertices and the policy
            is ``error``
        KDistanceError: If a materialized power graph exceeds its edge budget
    """
    base, k = config.base, config.k
    if k == 1:
        return solve(graph, base)
    if base.mode == 'distributed-sim':
        return simulate_rounds(graph, base, k=k)[0]

    isolated = check_isolated(graph, base)
    start = time.perf_counter()
    tags = assign_tags(graph, base.seed)
    sizes = traversal.ball_sizes(graph.indptr, graph.indices, k)
    if config.materialize(graph, sizes=sizes):
        power = power_graph(graph, k, max_edges=config.max_edges)
        choices = initial_mark(power, tags, n_threads=base.n_threads)
        for _ in range(base.m):
            choices = refine_round(
                power, tags, choices, n_threads=base.n_threads
            )
    else:
        choices = mark_khop(graph, k, sizes, tags, n_threads=base.n_threads)
        for _ in range(base.m):
            counts = mark_counts(choices, graph.n)
            choices = mark_khop(
                graph, k, counts, tags, n_threads=base.n_threads
            )
    marked = np.union1d(marked_set(choices), isolated)
    elapsed = time.perf_counter() - start

    logger.debug(
        f'Marked {marked.size} of {graph.n} nodes with k={k}, m={base.m}, '
        f'seed={base.seed} in {elapsed:.4f}s'
    )
    return Solution(
        marked=marked,
        m_used=base.m,
        k_used=k,
        seed=base.seed,
        rounds=k * (2 + base.m),
        messages=0,
        elapsed=elapsed,
        mode='sequential',
    )
