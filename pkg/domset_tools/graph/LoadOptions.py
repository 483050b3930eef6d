import os
from typing import Optional

from typing_extensions import Literal

from ..utils import UtilsError, resolve_name

GraphFormat = Literal['edgelist', 'dimacs', 'mtx']
FORMAT_ALIASES = {
    'edgelist': 'edgelist',
    'edges': 'edgelist',
    'snap': 'edgelist',
    'txt': 'edgelist',
    'dimacs': 'dimacs',
    'dimacslike': 'dimacs',
    'gr': 'dimacs',
    'mtx': 'mtx',
    'matrixmarket': 'mtx',
    'matrixmarketpattern': 'mtx',
}
DEFAULT_COMMENT_PREFIXES = {
    'edgelist': '#%',
    'dimacs': '#%c',
    'mtx': '#%',
}
EXTENSION_FORMATS = {
    '.mtx': 'mtx',
    '.dimacs': 'dimacs',
    '.gr': 'dimacs',
    '.col': 'dimacs',
    '.clq': 'dimacs',
}


class LoadOptionsError(Exception):
    pass


class LoadOptions:
    """Options that control how a graph file is parsed.

    Attributes:
        _format: Canonical format name; for internal use only. Use :attr:`format`
            instead.
        _treat_directed_as_undirected: Whether directed inputs are symmetrized;
            for internal use only.
        _comment_prefixes: Characters that start a comment line; for internal use
            only.
    """

    def __init__(
        self,
        format: str = 'edgelist',
        treat_directed_as_undirected: bool = True,
        comment_prefixes: Optional[str] = None,
    ):
        """
        Args:
            format: One of ``edgelist`` (also ``edge-list``, ``snap``),
                ``dimacs`` (also ``dimacs-like``) or ``mtx`` (also
                ``matrix-market-pattern``). Defaults to ``edgelist``.
            treat_directed_as_undirected: Whether inputs that declare themselves
                directed are symmetrized. If False, they are rejected.
                Defaults to True.
            comment_prefixes: Characters that mark a comment line. Defaults to
                ``#%`` (plus ``c`` for DIMACS).

        Raises:
            LoadOptionsError: If the format is unknown or ``comment_prefixes`` is
                empty
        """
        try:
            self._format = resolve_name(format, FORMAT_ALIASES, 'graph format')
        except UtilsError as e:
            raise LoadOptionsError(str(e))
        if comment_prefixes is None:
            comment_prefixes = DEFAULT_COMMENT_PREFIXES[self._format]
        if not comment_prefixes:
            raise LoadOptionsError('`comment_prefixes` must not be empty')

        self._treat_directed_as_undirected = treat_directed_as_undirected
        self._comment_prefixes = comment_prefixes

    @classmethod
    def infer(cls, path: str, **kwargs) -> 'LoadOptions':
        """Construct options with the format inferred from the file extension
        (ignoring a trailing ``.gz``). Unknown extensions are read as edge lists.

        Args:
            path: Path to the graph file
            **kwargs: Additional keyword arguments passed to the constructor

        Returns:
            The options
        """
        root = path[:-3] if path.endswith('.gz') else path
        extension = os.path.splitext(root)[1].lower()
        return cls(EXTENSION_FORMATS.get(extension, 'edgelist'), **kwargs)

    @property
    def format(self) -> GraphFormat:
        """Canonical format name"""
        return self._format

    @property
    def treat_directed_as_undirected(self) -> bool:
        """Whether directed inputs are symmetrized"""
        return self._treat_directed_as_undirected

    @property
    def comment_prefixes(self) -> str:
        """Characters that mark a comment line"""
        return self._comment_prefixes

    def __repr__(self):
        return (
            f'{self.__class__.__name__}(format={self.format!r}, '
            f'treat_directed_as_undirected={self.treat_directed_as_undirected}, '
            f'comment_prefixes={self.comment_prefixes!r})'
        )
