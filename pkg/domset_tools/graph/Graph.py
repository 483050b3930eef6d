from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp


class GraphError(Exception):
    pass


class Graph:
    """Immutable simple undirected graph in compressed sparse row (CSR) form.

    Node ids are dense integers in ``[0, n)``. The neighbors of node ``v`` are
    ``indices[indptr[v]:indptr[v + 1]]``, sorted ascending. Every undirected edge
    is stored twice, once in each endpoint's neighbor list. The original node
    labels (as read from a file) are retained so that results can be reported in
    terms of the input.

    Attributes:
        _indptr: CSR row pointer array; for internal use only. Use :attr:`indptr`
            instead.
        _indices: CSR column index array; for internal use only. Use
            :attr:`indices` instead.
        _labels: Original node labels; for internal use only. Use :attr:`labels`
            instead.
        _label_index: Lazily-built reverse label map; for internal use only.
    """

    def __init__(
        self,
        indptr: np.ndarray,
        indices: np.ndarray,
        labels: Optional[Sequence[str]] = None,
    ):
        """
        Args:
            indptr: CSR row pointer array of length ``n + 1``
            indices: CSR column index array of length ``2 * m_edges``. Each row
                must be sorted, symmetric and free of self-loops and duplicates.
                Use :meth:`from_edges` to build a graph from arbitrary edges.
            labels: Original labels of each node. Defaults to the string form of
                each node id.

        Raises:
            GraphError: If the arrays are malformed or the number of labels does
                not match the number of nodes
        """
        indptr = np.array(indptr, dtype=np.int64)
        indices = np.array(indices, dtype=np.int64)
        if indptr.ndim != 1 or indptr.size < 1 or indptr[0] != 0:
            raise GraphError('`indptr` must be a 1D array starting with 0')
        if indptr[-1] != indices.size or (np.diff(indptr) < 0).any():
            raise GraphError('`indptr` is inconsistent with `indices`')
        n = indptr.size - 1
        if indices.size and (indices.min() < 0 or indices.max() >= n):
            raise GraphError('`indices` contains out-of-range node ids')

        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise GraphError(
                f'{len(labels)} labels were provided for {n} nodes'
            )

        indptr.setflags(write=False)
        indices.setflags(write=False)
        self._indptr = indptr
        self._indices = indices
        self._labels = tuple(str(label) for label in labels)
        self._label_index = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Union[np.ndarray, Iterable[Tuple[int, int]]],
        labels: Optional[Sequence[str]] = None,
    ) -> 'Graph':
        """Construct a normalized graph from an arbitrary collection of edges.
        Self-loops are dropped, and duplicate or reversed edges are merged.

        Args:
            n: Number of nodes
            edges: Pairs of node ids in ``[0, n)``
            labels: Original labels of each node. Defaults to the string form of
                each node id.

        Returns:
            The new graph

        Raises:
            GraphError: If any node id is out of range
        """
        if n < 0:
            raise GraphError(f'Number of nodes must be non-negative, got {n}')
        if not isinstance(edges, np.ndarray):
            edges = list(edges)
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise GraphError(f'Edges reference node ids outside [0, {n})')

        edges = edges[edges[:, 0] != edges[:, 1]]
        rows = np.concatenate((edges[:, 0], edges[:, 1]))
        cols = np.concatenate((edges[:, 1], edges[:, 0]))
        matrix = sp.csr_matrix(
            (np.ones(rows.size, dtype=bool), (rows, cols)), shape=(n, n)
        )
        matrix.sum_duplicates()
        matrix.sort_indices()
        return cls(matrix.indptr, matrix.indices, labels=labels)

    @property
    def n(self) -> int:
        """Number of nodes"""
        return self._indptr.size - 1

    @property
    def m_edges(self) -> int:
        """Number of undirected edges"""
        return self._indices.size // 2

    @property
    def indptr(self) -> np.ndarray:
        """CSR row pointer array (read-only)"""
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        """CSR column index array (read-only)"""
        return self._indices

    @property
    def degrees(self) -> np.ndarray:
        """Degree of every node"""
        return np.diff(self._indptr)

    @property
    def labels(self) -> Tuple[str, ...]:
        """Original node labels, indexed by node id"""
        return self._labels

    @property
    def label_index(self) -> Dict[str, int]:
        """Dictionary of original label to node id"""
        if self._label_index is None:
            self._label_index = {
                label: i
                for i, label in enumerate(self._labels)
            }
        return self._label_index

    def _check_node(self, v: int):
        if not 0 <= v < self.n:
            raise GraphError(f'Node id {v} is outside [0, {self.n})')

    def degree(self, v: int) -> int:
        """Degree of a single node.

        Args:
            v: Node id

        Returns:
            Number of neighbors of ``v``

        Raises:
            GraphError: If ``v`` is out of range
        """
        self._check_node(v)
        return int(self._indptr[v + 1] - self._indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbors of a single node.

        Args:
            v: Node id

        Returns:
            Read-only array of neighbor ids

        Raises:
            GraphError: If ``v`` is out of range
        """
        self._check_node(v)
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def label_of(self, v: int) -> str:
        """Original label of a node id."""
        self._check_node(v)
        return self._labels[v]

    def id_of(self, label: str) -> int:
        """Node id of an original label.

        Raises:
            GraphError: If the label does not exist
        """
        try:
            return self.label_index[str(label)]
        except KeyError:
            raise GraphError(f'Unknown node label `{label}`')

    def edges(self) -> np.ndarray:
        """All undirected edges as an ``(m_edges, 2)`` array with ``u < v``,
        sorted lexicographically."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        mask = rows < self._indices
        return np.column_stack((rows[mask], self._indices[mask]))

    def to_scipy(self) -> sp.csr_matrix:
        """Boolean adjacency matrix as a :class:`scipy.sparse.csr_matrix`."""
        return sp.csr_matrix(
            (
                np.ones(self._indices.size, dtype=bool), self._indices,
                self._indptr
            ),
            shape=(self.n, self.n)
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self):
        return f'{self.__class__.__name__}(n={self.n}, m_edges={self.m_edges})'
