from typing import Generator, Iterable, List, NamedTuple, Optional, Set, Union

import numpy as np
from typing_extensions import Literal

from . import utils
from .engine import RunConfig, check_isolated, solve
from .engine.marking import tags_for_range
from .graph import Graph
from .logging import logger
from .progress import progress

UPDATE_OPS = {'+': 'insert', '-': 'delete'}


class DynamicError(Exception):
    pass


class Update(NamedTuple):
    """A single edge update. ``line`` is the line it was read from, if any."""
    op: Literal['insert', 'delete']
    u: str
    v: str
    line: int = 0


class ReplayRow(NamedTuple):
    """Solution size after an update. Step 0 is the initial solution."""
    step: int
    op: Optional[str]
    u: Optional[str]
    v: Optional[str]
    n: int
    m_edges: int
    size: int
    affected: int


class DynamicState:
    """Marking solution with ``m = 0`` maintained under edge insertions and
    deletions. Tags persist across updates and new nodes take the tag of their
    id from the same stream, so the maintained solution always equals a
    from-scratch :func:`domset_tools.engine.solve` on :meth:`snapshot`.

    An update only changes the weight (degree) of its two endpoints, so only the
    endpoints and the nodes adjacent to them re-choose. With ``m > 0`` the
    solution is recomputed from scratch after every update.

    Attributes:
        _config: Run configuration; for internal use only. Use :attr:`config`
            instead.
        _labels: Label of every node; for internal use only.
        _label_index: Dictionary of label to node id; for internal use only.
        _adjacency: Neighbor set of every node; for internal use only.
        _tags: Random tag of every node; for internal use only.
        _choices: Chosen neighbor of every node, -1 for none; for internal use
            only. Only maintained when ``m = 0``.
        _counts: Number of nodes choosing every node; for internal use only.
        _marked: Solution computed from scratch when ``m > 0``; for internal
            use only.
        _last_affected: Nodes re-evaluated by the last update; for internal use
            only. Use :attr:`last_affected` instead.
    """

    def __init__(self, graph: Graph, config: Optional[RunConfig] = None):
        """
        Args:
            graph: Initial graph
            config: Run configuration. Its ``mode`` is ignored. Defaults to
                ``RunConfig()``.

        Raises:
            EngineError: If the graph is empty
            IsolatedVertexError: If the graph has isolated vertices and the
                policy is ``error``
        """
        self._config = config or RunConfig()
        check_isolated(graph, self._config)

        self._labels = list(graph.labels)
        self._label_index = dict(graph.label_index)
        self._adjacency = [
            set(graph.neighbors(v).tolist()) for v in range(graph.n)
        ]
        self._tags = tags_for_range(self._config.seed, 0, graph.n).tolist()
        self._choices = [-1] * graph.n
        self._counts = [0] * graph.n
        self._marked = None
        self._last_affected = set()
        if self.incremental:
            self._rechoose(range(graph.n))
        else:
            self._recompute()

    @classmethod
    def from_graph(
        cls, graph: Graph, config: Optional[RunConfig] = None
    ) -> 'DynamicState':
        """Alias of the constructor."""
        return cls(graph, config)

    @property
    def config(self) -> RunConfig:
        """Run configuration"""
        return self._config

    @property
    def incremental(self) -> bool:
        """Whether updates are maintained incrementally (``m = 0``)"""
        return self._config.m == 0

    @property
    def n(self) -> int:
        """Number of nodes"""
        return len(self._labels)

    @property
    def m_edges(self) -> int:
        """Number of undirected edges"""
        return sum(len(neighbors) for neighbors in self._adjacency) // 2

    @property
    def labels(self) -> List[str]:
        """Label of every node"""
        return list(self._labels)

    @property
    def tags(self) -> np.ndarray:
        """Random tag of every node"""
        return np.array(self._tags, dtype=np.float64)

    @property
    def choices(self) -> np.ndarray:
        """Chosen neighbor of every node, -1 for isolated nodes

        Raises:
            DynamicError: If choices are not maintained (``m > 0``)
        """
        if not self.incremental:
            raise DynamicError('Choices are only maintained for m=0')
        return np.array(self._choices, dtype=np.int64)

    @property
    def marked(self) -> np.ndarray:
        """Sorted ids of the nodes in the current solution"""
        if not self.incremental:
            return self._marked
        marked = [
            v for v in range(self.n)
            if self._counts[v] > 0 or not self._adjacency[v]
        ]
        return np.array(marked, dtype=np.int64)

    @property
    def last_affected(self) -> Set[int]:
        """Nodes re-evaluated by the last update"""
        return set(self._last_affected)

    def id_of(self, label: Union[int, str]) -> int:
        """Node id of a label.

        Raises:
            DynamicError: If the label does not exist
        """
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise DynamicError(f'Unknown node label `{label}`')

    def _add_node(self, label: str) -> int:
        v = self.n
        self._labels.append(label)
        self._label_index[label] = v
        self._adjacency.append(set())
        self._tags.extend(tags_for_range(self._config.seed, v, v + 1).tolist())
        self._choices.append(-1)
        self._counts.append(0)
        logger.debug(f'Added node `{label}` with id {v}')
        return v

    def _choose(self, v: int) -> int:
        adjacency, tags = self._adjacency, self._tags
        if not adjacency[v]:
            return -1
        return max(adjacency[v], key=lambda u: (len(adjacency[u]), tags[u], u))

    def _rechoose(self, nodes: Iterable[int]) -> Set[int]:
        changed = set()
        for v in nodes:
            old, new = self._choices[v], self._choose(v)
            if old == new:
                continue
            if old >= 0:
                self._counts[old] -= 1
            if new >= 0:
                self._counts[new] += 1
            self._choices[v] = new
            changed.add(v)
        return changed

    def _recompute(self):
        self._marked = solve(
            self.snapshot(), self._config.replace(mode='sequential')
        ).marked

    def apply_edge(
        self,
        op: Literal['insert', 'delete'],
        u: Union[int, str],
        v: Union[int, str],
    ) -> 'DynamicState':
        """Insert or delete an edge between two labels and update the solution.
        Inserting an edge may reference a label that does not exist yet, which
        adds a new node.

        Args:
            op: ``insert`` or ``delete``
            u: Label of one endpoint
            v: Label of the other endpoint

        Returns:
            This state, updated

        Raises:
            DynamicError: If the operation is unknown, an inserted edge already
                exists or is a self-loop, a deleted edge does not exist, or a
                deletion would isolate a node under the ``error`` policy. The
                state is unchanged when an error is raised.
        """
        u, v = str(u), str(v)
        if op not in ('insert', 'delete'):
            raise DynamicError(f'Unknown update operation `{op}`')
        if u == v:
            raise DynamicError(f'Self-loop `{u} {v}` is not an edge')

        if op == 'insert':
            if (u in self._label_index and v in self._label_index
                    and self.id_of(v) in self._adjacency[self.id_of(u)]):
                raise DynamicError(f'Edge `{u} {v}` already exists')
            a = self._label_index.get(u)
            a = self._add_node(u) if a is None else a
            b = self._label_index.get(v)
            b = self._add_node(v) if b is None else b
            self._adjacency[a].add(b)
            self._adjacency[b].add(a)
            affected = {a, b} | self._adjacency[a] | self._adjacency[b]
        else:
            a, b = self.id_of(u), self.id_of(v)
            if b not in self._adjacency[a]:
                raise DynamicError(f'Edge `{u} {v}` does not exist')
            lonely = [
                self._labels[w] for w in (a, b) if len(self._adjacency[w]) == 1
            ]
            if lonely and self._config.isolated_policy == 'error':
                raise DynamicError(
                    f'Deleting `{u} {v}` would isolate {", ".join(lonely)}'
                )
            affected = {a, b} | self._adjacency[a] | self._adjacency[b]
            self._adjacency[a].discard(b)
            self._adjacency[b].discard(a)
            for label in lonely:
                logger.warning(
                    f'Node `{label}` is isolated and included in the solution'
                )

        if self.incremental:
            self._rechoose(sorted(affected))
            self._last_affected = affected
        else:
            self._recompute()
            self._last_affected = set(range(self.n))
        return self

    def snapshot(self) -> Graph:
        """Immutable graph of the current state."""
        edges = [(v, u)
                 for v, neighbors in enumerate(self._adjacency)
                 for u in neighbors
                 if v < u]
        return Graph.from_edges(self.n, edges, labels=self._labels)

    def __repr__(self):
        return (
            f'{self.__class__.__name__}(n={self.n}, m_edges={self.m_edges}, '
            f'size={self.marked.size})'
        )


def apply_edge(
    state: DynamicState,
    op: Literal['insert', 'delete'],
    u: Union[int, str],
    v: Union[int, str],
) -> DynamicState:
    """Insert or delete an edge. See :meth:`DynamicState.apply_edge`."""
    return state.apply_edge(op, u, v)


def read_updates(path: str) -> List[Update]:
    """Read an update stream. Every non-blank line not starting with ``#`` is
    ``+ u v`` to insert or ``- u v`` to delete the edge between labels ``u`` and
    ``v``.

    Args:
        path: Path to the update stream. May be gzipped.

    Returns:
        List of updates

    Raises:
        DynamicError: If a line could not be parsed
    """
    updates = []
    with utils.open_as_text(path, 'r') as f:
        for i, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            parts = line.split()
            if len(parts) != 3 or parts[0] not in UPDATE_OPS:
                raise DynamicError(
                    f'{path}, line {i}: expected `+ u v` or `- u v`'
                )
            updates.append(Update(UPDATE_OPS[parts[0]], parts[1], parts[2], i))
    return updates


def replay_updates(
    state: DynamicState,
    updates: Iterable[Update],
    show_progress: bool = False,
) -> Generator[ReplayRow, None, None]:
    """Apply updates one at a time, yielding the solution size after each.

    Args:
        state: The state to update
        updates: Updates to apply, in order
        show_progress: Whether to display a progress bar. Defaults to False.

    Yields:
        The initial size (step 0), then the size after every update

    Raises:
        DynamicError: If an update is invalid. Its line number is included.
    """
    yield ReplayRow(
        0, None, None, None, state.n, state.m_edges, state.marked.size, 0
    )
    updates = progress(
        updates, desc='Replaying updates', disable=not show_progress
    )
    for step, update in enumerate(updates, start=1):
        try:
            state.apply_edge(update.op, update.u, update.v)
        except DynamicError as e:
            raise DynamicError(f'Update {step} (line {update.line}): {e}')
        yield ReplayRow(
            step, update.op, update.u, update.v, state.n, state.m_edges,
            state.marked.size, len(state.last_affected)
        )
