from typing import Iterable, List, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from . import utils
from .engine import RunConfig
from .engine.marking import _mark, tags_for_range
from .graph import Graph
from .logging import logger


class SetSystemError(Exception):
    pass


class SetSystem:
    """Elements ``[0, n_elements)`` and subsets of them, with an inverted index
    from every element to the subsets that contain it.

    Attributes:
        _n_elements: Number of elements; for internal use only. Use
            :attr:`n_elements` instead.
        _subsets: Sorted element ids of every subset; for internal use only.
            Use :attr:`subsets` instead.
        _membership: Element by subset incidence in CSR form; for internal use
            only.
    """

    def __init__(self, n_elements: int, subsets: Sequence[Iterable[int]]):
        """
        Args:
            n_elements: Number of elements
            subsets: Element ids of every subset

        Raises:
            SetSystemError: If an element id is out of range, or some element is
                in no subset
        """
        if n_elements < 1:
            raise SetSystemError(
                f'`n_elements` must be at least 1, got {n_elements}'
            )
        self._n_elements = n_elements
        self._subsets = [
            np.unique(np.asarray(list(subset), dtype=np.int64))
            for subset in subsets
        ]
        for i, subset in enumerate(self._subsets):
            if subset.size and (subset[0] < 0 or subset[-1] >= n_elements):
                raise SetSystemError(
                    f'Subset {i} has elements outside [0, {n_elements})'
                )

        sizes = self.sizes
        rows = np.concatenate(
            [np.empty(0, dtype=np.int64)] + self._subsets
        )
        cols = np.repeat(np.arange(len(self._subsets), dtype=np.int64), sizes)
        membership = sp.csr_matrix(
            (np.ones(rows.size, dtype=bool), (rows, cols)),
            shape=(n_elements, len(self._subsets))
        )
        membership.sort_indices()
        self._membership = membership

        uncovered = np.flatnonzero(np.diff(membership.indptr) == 0)
        if uncovered.size:
            raise SetSystemError(
                f'{uncovered.size} elements are in no subset, e.g. element '
                f'{uncovered[0]}'
            )

    @classmethod
    def from_closed_neighborhoods(cls, graph: Graph) -> 'SetSystem':
        """Set system whose covers are exactly the dominating sets of a graph.
        Subset ``v`` is the closed neighborhood of node ``v``.

        Args:
            graph: The graph

        Returns:
            The set system
        """
        return cls(
            graph.n,
            [np.append(graph.neighbors(v), v) for v in range(graph.n)]
        )

    @property
    def n_elements(self) -> int:
        """Number of elements"""
        return self._n_elements

    @property
    def n_subsets(self) -> int:
        """Number of subsets"""
        return len(self._subsets)

    @property
    def subsets(self) -> List[np.ndarray]:
        """Sorted element ids of every subset"""
        return list(self._subsets)

    @property
    def sizes(self) -> np.ndarray:
        """Size of every subset"""
        return np.array([subset.size for subset in self._subsets],
                        dtype=np.int64)

    def containing(self, element: int) -> np.ndarray:
        """Ids of the subsets that contain an element."""
        indptr, indices = self._membership.indptr, self._membership.indices
        return indices[indptr[element]:indptr[element + 1]]

    def is_cover(self, ids: Iterable[int]) -> bool:
        """Whether the union of the given subsets is every element."""
        covered = np.zeros(self._n_elements, dtype=bool)
        for i in ids:
            covered[self._subsets[i]] = True
        return bool(covered.all())

    def pick(self, counts: np.ndarray, tags: np.ndarray) -> np.ndarray:
        """Every element picks the containing subset with the largest
        ``(counts, tags, id)``.

        Args:
            counts: Integer part of every subset's weight
            tags: Random tag of every subset

        Returns:
            Picked subset of every element
        """
        membership = self._membership
        picks = np.full(self._n_elements, -1, dtype=np.int64)
        _mark(
            membership.indptr.astype(np.int64),
            membership.indices.astype(np.int64),
            np.asarray(counts, dtype=np.int64), tags, 0, self._n_elements,
            picks
        )
        return picks

    def __repr__(self):
        return (
            f'{self.__class__.__name__}(n_elements={self.n_elements}, '
            f'n_subsets={self.n_subsets})'
        )


def solve_setcover(
    system: SetSystem, config: Optional[RunConfig] = None
) -> np.ndarray:
    """Set cover by marking. Every element picks its largest containing subset,
    with subset sizes tie-broken by random tags and ids. Then, for each of ``m``
    rounds, the number of elements that picked each subset replaces its size and
    every element picks again. The picked subsets cover every element.

    Args:
        system: The set system
        config: Run configuration. Its ``mode`` and ``isolated_policy`` are
            ignored. Defaults to ``RunConfig()``.

    Returns:
        Sorted ids of the picked subsets
    """
    config = config or RunConfig()
    tags = tags_for_range(config.seed, 0, system.n_subsets)
    picks = system.pick(system.sizes, tags)
    for _ in range(config.m):
        counts = np.bincount(picks, minlength=system.n_subsets)
        picks = system.pick(counts, tags)
    cover = np.unique(picks)
    logger.debug(
        f'Picked {cover.size} of {system.n_subsets} subsets with '
        f'm={config.m}, seed={config.seed}'
    )
    return cover


def read_set_system(path: str) -> SetSystem:
    """Read a set system. The first line is ``n_elements n_subsets`` and every
    following line lists the 1-based element ids of one subset. Blank lines and
    lines starting with ``#`` are skipped.

    Args:
        path: Path to the file. May be gzipped.

    Returns:
        The set system

    Raises:
        SetSystemError: If the file is malformed or the system is infeasible
    """
    header = None
    subsets = []
    with utils.open_as_text(path, 'r') as f:
        for i, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            try:
                values = [int(part) for part in line.split()]
            except ValueError:
                raise SetSystemError(f'{path}, line {i}: expected integers')
            if header is None:
                if len(values) != 2:
                    raise SetSystemError(
                        f'{path}, line {i}: expected `n_elements n_subsets`'
                    )
                header = values
                continue
            if min(values) < 1 or max(values) > header[0]:
                raise SetSystemError(
                    f'{path}, line {i}: element ids must be in [1, {header[0]}]'
                )
            subsets.append([value - 1 for value in values])

    if header is None:
        raise SetSystemError(f'{path} is empty')
    if len(subsets) != header[1]:
        raise SetSystemError(
            f'{path} declares {header[1]} subsets but lists {len(subsets)}'
        )
    return SetSystem(header[0], subsets)
