import heapq
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

import networkx as nx
import numpy as np
from joblib import delayed
from scipy.sparse.csgraph import connected_components

from . import utils
from .engine import RunConfig, solve
from .graph import Graph, isolated_vertices, traversal
from .logging import logger

EXACT_BUDGET = 24
MTDS_BOUND = 16
MDS_BOUND = 32


class OracleError(Exception):
    pass


class ExactResult(NamedTuple):
    """Minimum dominating (``gamma``) and total dominating (``gamma_t``) set
    sizes with one optimal set each. A value is None if it was not requested, or
    for ``gamma_t``, if the graph has isolated vertices.
    """
    gamma: Optional[int]
    gamma_t: Optional[int]
    witnesses: Dict[str, np.ndarray]


class RatioTrial(NamedTuple):
    """Solution size of one run against the exact optimum."""
    seed: int
    m: int
    n: int
    m_edges: int
    size: int
    gamma: int
    gamma_t: int
    ratio_mds: float
    ratio_mtds: float


def _mask(graph: Graph, s: Iterable[int]) -> np.ndarray:
    mask = np.zeros(graph.n, dtype=bool)
    ids = np.asarray(list(s), dtype=np.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= graph.n):
        raise OracleError(f'Node ids must be in [0, {graph.n})')
    mask[ids] = True
    return mask


def _has_member_neighbor(graph: Graph, mask: np.ndarray) -> np.ndarray:
    return graph.to_scipy().astype(np.int64) @ mask.astype(np.int64) > 0


def is_dominating(graph: Graph, s: Iterable[int]) -> bool:
    """Whether every node outside ``s`` has a neighbor in ``s``.

    Args:
        graph: The graph
        s: Node ids

    Returns:
        True or False
    """
    mask = _mask(graph, s)
    return bool((mask | _has_member_neighbor(graph, mask)).all())


def is_total_dominating(
    graph: Graph, s: Iterable[int], ignore_isolated: bool = False
) -> bool:
    """Whether every node, including the members of ``s``, has a neighbor in
    ``s``.

    Args:
        graph: The graph
        s: Node ids
        ignore_isolated: Whether isolated vertices are exempt. Defaults to False.

    Returns:
        True or False
    """
    covered = _has_member_neighbor(graph, _mask(graph, s))
    if ignore_isolated:
        covered[isolated_vertices(graph)] = True
    return bool(covered.all())


def is_k_dominating(
    graph: Graph,
    s: Iterable[int],
    k: int,
    total: bool = False,
    ignore_isolated: bool = False,
) -> bool:
    """Whether every node is within distance ``k`` of a node in ``s``. If
    ``total``, members of ``s`` must also be within distance ``k`` of another
    member. ``k = 1`` coincides with :func:`is_dominating` and
    :func:`is_total_dominating`.

    Args:
        graph: The graph
        s: Node ids
        k: Maximum distance, at least 1
        total: Whether members need another member within distance ``k``.
            Defaults to False.
        ignore_isolated: Whether isolated vertices are exempt. Defaults to False.

    Returns:
        True or False

    Raises:
        OracleError: If ``k < 1``
    """
    if k < 1:
        raise OracleError(f'`k` must be at least 1, got {k}')
    mask = _mask(graph, s)
    adjacency = graph.to_scipy().astype(np.int64)
    reached = mask.copy()
    frontier = mask.copy()
    for _ in range(k):
        frontier = (adjacency @ frontier.astype(np.int64) > 0) & ~reached
        reached |= frontier

    if total:
        for v in np.flatnonzero(mask):
            ball = traversal.ball(graph.indptr, graph.indices, v, k)
            reached[v] = bool(mask[ball].any())
    if ignore_isolated:
        reached[isolated_vertices(graph)] = True
    return bool(reached.all())


def _popcount(x: int) -> int:
    return bin(x).count('1')


def _minimum_cover(covers: List[int], n: int) -> Tuple[int, ...]:
    """Smallest set of node ids whose cover masks together cover all ``n``
    nodes, by iterative deepening on the size. Every search branches on the
    lowest uncovered node, and states whose uncovered nodes can not be covered
    with the remaining picks are pruned.
    """
    full = (1 << n) - 1
    coverers = [[c for c in range(n) if covers[c] >> u & 1] for u in range(n)]
    max_cover = max(_popcount(cover) for cover in covers)

    def search(uncovered: int, remaining: int, chosen: list,
               failed: Dict[int, int]) -> bool:
        if not uncovered:
            return True
        if remaining == 0 or _popcount(uncovered) > remaining * max_cover:
            return False
        if failed.get(uncovered, -1) >= remaining:
            return False
        u = (uncovered & -uncovered).bit_length() - 1
        for c in coverers[u]:
            chosen.append(c)
            if search(uncovered & ~covers[c], remaining - 1, chosen, failed):
                return True
            chosen.pop()
        failed[uncovered] = remaining
        return False

    for size in range(1, n + 1):
        chosen = []
        if search(full, size, chosen, {}):
            return tuple(sorted(chosen))
    raise OracleError('Nodes can not be covered')


def exact_mds(
    graph: Graph,
    total: Optional[bool] = None,
    budget: int = EXACT_BUDGET,
) -> ExactResult:
    """Exact minimum dominating and total dominating sets of a small graph.

    Args:
        graph: The graph
        total: True to compute only ``gamma_t``, False to compute only
            ``gamma``. Defaults to None, which computes both.
        budget: Maximum number of nodes. Defaults to 24.

    Returns:
        The optimum sizes and witnesses, keyed ``mds`` and ``mtds``

    Raises:
        OracleError: If the graph is empty or has more than ``budget`` nodes,
            or only ``gamma_t`` was requested for a graph with isolated
            vertices
    """
    if graph.n == 0:
        raise OracleError('Graph has no nodes')
    if graph.n > budget:
        raise OracleError(
            f'Graph has {graph.n} nodes, more than the exact budget of {budget}'
        )
    open_covers = [0] * graph.n
    for v in range(graph.n):
        for u in graph.neighbors(v):
            open_covers[v] |= 1 << int(u)
    closed_covers = [cover | 1 << v for v, cover in enumerate(open_covers)]

    gamma = gamma_t = None
    witnesses = {}
    if total is not True:
        witness = _minimum_cover(closed_covers, graph.n)
        gamma = len(witness)
        witnesses['mds'] = np.array(witness, dtype=np.int64)
    if total is not False:
        if isolated_vertices(graph).size:
            if total:
                raise OracleError(
                    'Graphs with isolated vertices have no total dominating set'
                )
        else:
            witness = _minimum_cover(open_covers, graph.n)
            gamma_t = len(witness)
            witnesses['mtds'] = np.array(witness, dtype=np.int64)
    return ExactResult(gamma, gamma_t, witnesses)


def greedy_mds(graph: Graph) -> np.ndarray:
    """Greedy dominating set. Repeatedly picks the node whose closed
    neighborhood covers the most uncovered nodes (the smallest id on ties),
    using a lazily updated max-heap of gains.

    Args:
        graph: The graph

    Returns:
        Sorted ids of the picked nodes
    """
    uncovered = np.ones(graph.n, dtype=bool)
    remaining = graph.n
    heap = [(-(d + 1), v) for v, d in enumerate(graph.degrees.tolist())]
    heapq.heapify(heap)
    picked = []
    while remaining > 0:
        gain, v = heapq.heappop(heap)
        neighbors = graph.neighbors(v)
        current = int(uncovered[neighbors].sum() + uncovered[v])
        if current != -gain:
            heapq.heappush(heap, (-current, v))
            continue
        picked.append(v)
        remaining -= current
        uncovered[neighbors] = False
        uncovered[v] = False
    return np.array(sorted(picked), dtype=np.int64)


def is_triangle_free(graph: Graph) -> bool:
    """Whether the graph has no 3-cycle."""
    adjacency = graph.to_scipy().astype(np.int64)
    return (adjacency @ adjacency).multiply(adjacency).nnz == 0


def is_connected(graph: Graph) -> bool:
    """Whether the graph has exactly one connected component."""
    n_components, _ = connected_components(graph.to_scipy(), directed=False)
    return n_components == 1


def _grid_edges(n: int) -> np.ndarray:
    rows = int(np.floor(np.sqrt(n)))
    cols = int(np.ceil(n / rows))
    edges = []
    for v in range(n):
        if (v + 1) % cols and v + 1 < n:
            edges.append((v, v + 1))
        if v + cols < n:
            edges.append((v, v + cols))
    return np.array(edges, dtype=np.int64).reshape(-1, 2)


def gen_planar_trianglefree(
    seed: int,
    n: int,
    density: float = 0.8,
    max_attempts: int = 100,
) -> Graph:
    """Random connected triangle-free planar graph. The nodes are the first
    ``n`` cells, in row-major order, of a grid with ``floor(sqrt(n))`` rows, and
    every grid edge is kept with probability ``density``. Samples are redrawn
    until connected. If none is connected after ``max_attempts``, the last sample
    is kept and every isolated vertex gets back one of its grid edges.

    Args:
        seed: Random seed
        n: Number of nodes, at least 2
        density: Probability of keeping each grid edge. Defaults to 0.8.
        max_attempts: Maximum number of samples. Defaults to 100.

    Returns:
        The graph

    Raises:
        OracleError: If ``n < 2``, ``density`` is outside (0, 1], or the result
            fails its triangle-free or planarity check
    """
    if n < 2:
        raise OracleError(f'`n` must be at least 2, got {n}')
    if not 0 < density <= 1:
        raise OracleError(f'`density` must be in (0, 1], got {density}')

    rng = np.random.default_rng(seed)
    grid = _grid_edges(n)
    for attempt in range(max_attempts):
        edges = grid[rng.random(len(grid)) < density]
        graph = Graph.from_edges(n, edges)
        if is_connected(graph):
            break
    else:
        logger.debug(
            f'No connected sample in {max_attempts} attempts. '
            'Reconnecting isolated vertices.'
        )
        extra = [
            grid[(grid[:, 0] == v) | (grid[:, 1] == v)][0]
            for v in isolated_vertices(graph)
        ]
        graph = Graph.from_edges(
            n, np.concatenate([edges] + [e.reshape(1, 2) for e in extra])
        )

    if not is_triangle_free(graph):
        raise OracleError('Generated graph has a triangle')
    planar, _ = nx.check_planarity(nx.Graph(graph.edges().tolist()))
    if not planar:
        raise OracleError('Generated graph is not planar')
    return graph


def approx_ratio_trial(
    seed: int,
    m: int,
    graph: Optional[Graph] = None,
    n_range: Tuple[int, int] = (6, 20),
    density: float = 0.8,
    budget: int = EXACT_BUDGET,
) -> RatioTrial:
    """Compare the solution size of one run against the exact optima. With
    ``m = 0`` the ratios on triangle-free planar graphs are bounded by 16 for
    total domination and 32 for domination, and exceeding them is an error.

    Args:
        seed: Seed of both the generated instance and the run
        m: Number of refinement rounds
        graph: Graph to use. Defaults to None, which generates a triangle-free
            planar graph with a number of nodes drawn from ``n_range``.
        n_range: Inclusive range of generated node counts. Defaults to
            ``(6, 20)``.
        density: Edge density of generated graphs. Defaults to 0.8.
        budget: Node budget of the exact solver. Defaults to 24.

    Returns:
        The trial result

    Raises:
        OracleError: If the graph exceeds the exact budget, has isolated
            vertices, or a bound is violated with ``m = 0``
    """
    if graph is None:
        low, high = n_range
        n = int(np.random.default_rng(seed).integers(low, high + 1))
        graph = gen_planar_trianglefree(seed, n, density=density)
    exact = exact_mds(graph, budget=budget)
    if exact.gamma_t is None:
        raise OracleError('Ratio trials require a graph without isolated nodes')

    solution = solve(graph, RunConfig(seed=seed, m=m))
    trial = RatioTrial(
        seed=seed,
        m=m,
        n=graph.n,
        m_edges=graph.m_edges,
        size=solution.size,
        gamma=exact.gamma,
        gamma_t=exact.gamma_t,
        ratio_mds=solution.size / exact.gamma,
        ratio_mtds=solution.size / exact.gamma_t,
    )
    if m == 0 and (trial.ratio_mtds > MTDS_BOUND
                   or trial.ratio_mds > MDS_BOUND):
        raise OracleError(f'Approximation bound violated: {trial}')
    return trial


def run_ratio_trials(
    trials: int,
    m: int,
    seed: int = 0,
    n_range: Tuple[int, int] = (6, 20),
    density: float = 0.8,
    n_threads: int = 1,
    show_progress: bool = False,
) -> List[RatioTrial]:
    """Run ratio trials on generated triangle-free planar graphs with seeds
    ``seed, seed + 1, ...``.

    Args:
        trials: Number of trials
        m: Number of refinement rounds
        seed: First seed. Defaults to 0.
        n_range: Inclusive range of node counts. Defaults to ``(6, 20)``.
        density: Edge density. Defaults to 0.8.
        n_threads: Number of parallel workers. Defaults to 1.
        show_progress: Whether to display a progress bar. Defaults to False.

    Returns:
        Trial results, in seed order

    Raises:
        OracleError: If ``trials < 1`` or a bound is violated
    """
    if trials < 1:
        raise OracleError(f'`trials` must be at least 1, got {trials}')
    return list(
        utils.ParallelWithProgress(
            n_jobs=n_threads,
            total=trials,
            desc='Ratio trials',
            disable=not show_progress,
        )(
            delayed(approx_ratio_trial)(
                seed + i, m, n_range=n_range, density=density
            ) for i in range(trials)
        )
    )


def summarize_trials(trials: List[RatioTrial]) -> List[dict]:
    """Observed maximum and mean ratios, one row per ``m``.

    Args:
        trials: Trial results

    Returns:
        List of summary rows, sorted by ``m``
    """
    rows = []
    for m in sorted({trial.m for trial in trials}):
        group = [trial for trial in trials if trial.m == m]
        rows.append({
            'm': m,
            'trials': len(group),
            'max_ratio_mds': max(trial.ratio_mds for trial in group),
            'max_ratio_mtds': max(trial.ratio_mtds for trial in group),
            'mean_ratio_mds': float(np.mean([t.ratio_mds for t in group])),
            'mean_ratio_mtds': float(np.mean([t.ratio_mtds for t in group])),
            'mean_size': float(np.mean([t.size for t in group])),
        })
    return rows
