import time
from typing import Optional, Tuple

import numpy as np

from .. import utils
from ..graph import Graph, isolated_vertices
from ..logging import logger
from .marking import (
    NodeState,
    assign_tags,
    initial_mark,
    mark,
    mark_counts,
    marked_set,
    node_states,
    refine_round,
    tags_for_range,
)
from .MessageTrace import MessageTrace, RoundMessages
from .RunConfig import RunConfig, RunConfigError
from .Simulator import Message, Simulator, SimulatorError
from .Solution import Solution


class EngineError(Exception):
    pass


class IsolatedVertexError(EngineError):
    pass


def check_isolated(graph: Graph, config: RunConfig) -> np.ndarray:
    """Apply the isolated-vertex policy of a run.

    Args:
        graph: The graph
        config: Run configuration

    Returns:
        Isolated vertices that must be added to the solution. Empty unless the
        policy is ``include``.

    Raises:
        EngineError: If the graph is empty
        IsolatedVertexError: If the graph has isolated vertices and the policy
            is ``error``
    """
    if graph.n == 0:
        raise EngineError('Can not solve an empty graph')
    isolated = isolated_vertices(graph)
    if isolated.size == 0:
        return isolated
    if config.isolated_policy == 'error':
        preview = ', '.join(graph.labels[v] for v in isolated[:5])
        raise IsolatedVertexError(
            f'Graph has {isolated.size} isolated vertices ({preview}'
            f'{", ..." if isolated.size > 5 else ""}). '
            'Use the `include` isolated policy to add them to the solution.'
        )
    logger.warning(
        f'Including {isolated.size} isolated vertices in the solution'
    )
    return isolated


def solve(graph: Graph, config: Optional[RunConfig] = None) -> Solution:
    """Run the marking algorithm. In sequential mode, every node marks its
    heaviest neighbor by weight ``d + r``, then for each of ``m`` refinement
    rounds the mark counts ``x`` of the previous round replace the degrees and
    every node marks again by ``x + r``. The nodes marked in the final round
    form a total dominating set of the non-isolated part of the graph.

    In ``distributed-sim`` mode this delegates to :func:`simulate_rounds`,
    which produces the same marked set.

    Args:
        graph: The graph
        config: Run configuration. Defaults to ``RunConfig()``.

    Returns:
        The solution

    Raises:
        EngineError: If the graph is empty
        IsolatedVertexError: If the graph has isolated vertices and the policy
            is ``error``
    """
    config = config or RunConfig()
    if config.mode == 'distributed-sim':
        return simulate_rounds(graph, config)[0]

    isolated = check_isolated(graph, config)
    start = time.perf_counter()
    tags = assign_tags(graph, config.seed)
    choices = initial_mark(graph, tags, n_threads=config.n_threads)
    for _ in range(config.m):
        choices = refine_round(graph, tags, choices, n_threads=config.n_threads)
    marked = np.union1d(marked_set(choices), isolated)
    elapsed = time.perf_counter() - start

    logger.debug(
        f'Marked {marked.size} of {graph.n} nodes with m={config.m}, '
        f'seed={config.seed} in {elapsed:.4f}s'
    )
    return Solution(
        marked=marked,
        m_used=config.m,
        k_used=1,
        seed=config.seed,
        rounds=2 + config.m,
        messages=0,
        elapsed=elapsed,
        mode='sequential',
    )


def simulate_rounds(
    graph: Graph,
    config: Optional[RunConfig] = None,
    k: int = 1,
) -> Tuple[Solution, MessageTrace]:
    """Run the marking algorithm as a synchronous message-passing simulation.
    Round 1 broadcasts every node's weight (one message per directed edge),
    round 2 sends every node's mark to its choice and each refinement round
    broadcasts ``x + r`` and re-sends marks. A node is marked if it received a
    mark in the final round.

    Args:
        graph: The graph
        config: Run configuration. Its ``mode`` is ignored. Defaults to
            ``RunConfig()``.
        k: Neighborhood radius. Nodes within distance ``k`` act as neighbors.
            Defaults to 1.

    Returns:
        The solution
        Message accounting of the run

    Raises:
        EngineError: If the graph is empty
        IsolatedVertexError: If the graph has isolated vertices and the policy
            is ``error``
    """
    config = config or RunConfig(mode='distributed-sim')
    isolated = check_isolated(graph, config)
    start = time.perf_counter()
    simulator = Simulator(graph, assign_tags(graph, config.seed), k=k)
    simulator.run(config.m)
    marked = np.union1d(np.flatnonzero(simulator.received > 0), isolated)
    elapsed = time.perf_counter() - start

    trace = simulator.trace
    logger.debug(
        f'Simulated {simulator.rounds} rounds with {trace.messages} messages '
        f'({trace.exchanges} exchanges), marked {marked.size} of {graph.n} nodes'
    )
    solution = Solution(
        marked=marked,
        m_used=config.m,
        k_used=k,
        seed=config.seed,
        rounds=simulator.rounds,
        messages=trace.messages,
        elapsed=elapsed,
        mode='distributed-sim',
    )
    return solution, trace


def write_solution(
    solution: Solution,
    path: str,
    graph: Optional[Graph] = None,
    instance: Optional[str] = None,
    emit_marked: bool = True,
) -> str:
    """Write a solution as JSON. The ``marked`` ids (and their original
    ``labels``, when the graph is given) are only written if ``emit_marked`` is
    True.

    Args:
        solution: The solution
        path: Path to the output JSON file
        graph: The graph the solution was computed on. Defaults to None.
        instance: Instance name. Defaults to None.
        emit_marked: Whether to write the marked node ids. Defaults to True.

    Returns:
        Path to the written file
    """
    data = {
        'instance': instance,
        'n': graph.n if graph is not None else None,
        'm_edges': graph.m_edges if graph is not None else None,
        **solution.to_dict(),
    }
    if emit_marked:
        if graph is not None:
            data['labels'] = [graph.labels[v] for v in solution.marked]
    else:
        del data['marked']
    return utils.write_json(data, path, indent=2)


def read_solution(path: str) -> Solution:
    """Read a solution written by :func:`write_solution`.

    Args:
        path: Path to the JSON file

    Returns:
        The solution

    Raises:
        EngineError: If the file does not contain the marked node ids
    """
    data = utils.read_json(path)
    if 'marked' not in data:
        raise EngineError(f'{path} does not contain the marked node ids')
    return Solution(
        marked=np.unique(np.array(data['marked'], dtype=np.int64)),
        m_used=data.get('m', 0),
        k_used=data.get('k', 1),
        seed=data.get('seed', 0),
        rounds=data.get('rounds', 0),
        messages=data.get('messages', 0),
        elapsed=data.get('elapsed_s', 0.0),
        mode=data.get('mode', 'sequential'),
    )
