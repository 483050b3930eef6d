import array
from typing import NamedTuple, Optional, Tuple

import numpy as np

from ..logging import logger
from ..progress import progress
from . import traversal
from .Dimacs import Dimacs
from .EdgeList import EdgeList
from .Graph import Graph, GraphError
from .GraphFile import GraphFile, GraphFileError, GraphRecord
from .LoadOptions import LoadOptions, LoadOptionsError
from .MatrixMarket import MatrixMarket

GRAPH_FILES = {
    'edgelist': EdgeList,
    'dimacs': Dimacs,
    'mtx': MatrixMarket,
}


class LoadStats(NamedTuple):
    """Normalization counts collected while loading a graph."""
    lines: int
    edges_read: int
    self_loops: int
    duplicate_edges: int
    symmetrized: bool


def open_graph_file(path: str, opts: LoadOptions, mode: str = 'r') -> GraphFile:
    """Open a graph file with the reader/writer class of the given format.

    Args:
        path: Path to the graph file
        opts: Load options
        mode: Open mode. Either ``r`` or ``w``. Defaults to ``r``.

    Returns:
        The opened graph file
    """
    return GRAPH_FILES[opts.format](
        path, mode, comment_prefixes=opts.comment_prefixes
    )


def load_graph_with_stats(
    path: str,
    opts: Optional[LoadOptions] = None,
    show_progress: bool = False,
) -> Tuple[Graph, LoadStats]:
    """Load and normalize a graph file. Self-loops are dropped (their nodes are
    kept), duplicate and reversed edges are merged and labels are densified to
    ``[0, n)``. For DIMACS and Matrix Market files node ``i`` (1-based) gets id
    ``i - 1``; for edge lists ids are assigned in order of first appearance.

    Args:
        path: Path to the graph file. May be gzipped.
        opts: Load options. Defaults to options inferred from the file extension.
        show_progress: Whether to display a progress bar. Defaults to False.

    Returns:
        The normalized graph
        Normalization counts

    Raises:
        GraphFileError: If a line could not be parsed
        GraphError: If the graph is empty, or it declares itself directed while
            ``opts.treat_directed_as_undirected`` is False
    """
    opts = opts or LoadOptions.infer(path)
    labels = {}
    us = array.array('q')
    vs = array.array('q')
    with open_graph_file(path, opts) as f:
        for record in progress(f, desc='Parsing graph',
                               disable=not show_progress):
            if record.kind == 'size':
                for i in range(1, int(record.u) + 1):
                    labels.setdefault(str(i), len(labels))
            elif record.kind == 'node':
                labels.setdefault(record.u, len(labels))
            else:
                us.append(labels.setdefault(record.u, len(labels)))
                vs.append(labels.setdefault(record.v, len(labels)))
        lines = f.line
        directed = f.declared_directed

    if directed:
        if not opts.treat_directed_as_undirected:
            raise GraphError(
                f'{path} declares a directed graph and '
                '`treat_directed_as_undirected` is False'
            )
        logger.warning(f'{path} declares a directed graph. Symmetrizing arcs.')

    n = len(labels)
    if n == 0:
        raise GraphError(f'{path} contains no nodes')

    edges = np.column_stack((
        np.frombuffer(us, dtype=np.int64),
        np.frombuffer(vs, dtype=np.int64)
    )) if len(us) else np.empty((0, 2), dtype=np.int64)
    self_loops = int((edges[:, 0] == edges[:, 1]).sum())
    graph = Graph.from_edges(n, edges, labels=list(labels))
    stats = LoadStats(
        lines=lines,
        edges_read=len(us),
        self_loops=self_loops,
        duplicate_edges=len(us) - self_loops - graph.m_edges,
        symmetrized=directed,
    )
    return graph, stats


def load_graph(
    path: str,
    opts: Optional[LoadOptions] = None,
    show_progress: bool = False,
) -> Graph:
    """Load and normalize a graph file. See :func:`load_graph_with_stats` for
    details.

    Args:
        path: Path to the graph file. May be gzipped.
        opts: Load options. Defaults to options inferred from the file extension.
        show_progress: Whether to display a progress bar. Defaults to False.

    Returns:
        The normalized graph
    """
    graph, stats = load_graph_with_stats(
        path, opts=opts, show_progress=show_progress
    )
    if stats.self_loops:
        logger.warning(f'Dropped {stats.self_loops} self-loops from {path}')
    if stats.duplicate_edges:
        logger.warning(
            f'Merged {stats.duplicate_edges} duplicate edges from {path}'
        )
    logger.debug(f'Loaded {path}: {graph}')
    return graph


def write_graph(
    graph: Graph, path: str, opts: Optional[LoadOptions] = None
) -> str:
    """Write a graph to a file. Edge lists use the original labels; DIMACS and
    Matrix Market files use 1-based node ids.

    Args:
        graph: The graph to write
        path: Path to the output file. Gzipped if it ends with ``.gz``.
        opts: Options selecting the format. Defaults to options inferred from
            the file extension.

    Returns:
        Path to the written file
    """
    opts = opts or LoadOptions.infer(path)
    labels = graph.labels if opts.format == 'edgelist' else [
        str(i + 1) for i in range(graph.n)
    ]
    with open_graph_file(path, opts, 'w') as f:
        f.write(GraphRecord('size', str(graph.n), str(graph.m_edges)))
        for v in isolated_vertices(graph):
            f.write(GraphRecord('node', labels[v]))
        for u, v in graph.edges():
            f.write(GraphRecord('edge', labels[u], labels[v]))
    return path


def degree(graph: Graph, v: int) -> int:
    """Degree of node ``v``.

    Raises:
        GraphError: If ``v`` is out of range
    """
    return graph.degree(v)


def khop_neighbors(graph: Graph, v: int, k: int) -> np.ndarray:
    """All nodes within distance ``k`` of ``v``, excluding ``v``, found by a
    depth-bounded breadth-first traversal. ``k = 1`` returns exactly the
    neighbors of ``v``.

    Args:
        graph: The graph
        v: Node id
        k: Maximum distance, at least 1

    Returns:
        Sorted array of node ids

    Raises:
        GraphError: If ``v`` is out of range or ``k < 1``
    """
    if k < 1:
        raise GraphError(f'`k` must be at least 1, got {k}')
    if k == 1:
        return graph.neighbors(v)
    graph._check_node(v)
    return traversal.ball(graph.indptr, graph.indices, v, k)


def isolated_vertices(graph: Graph) -> np.ndarray:
    """Ids of all nodes with degree 0."""
    return np.flatnonzero(graph.degrees == 0)
