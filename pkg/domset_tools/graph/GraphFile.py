import re
from typing import NamedTuple, Optional

from typing_extensions import Literal

from .. import utils

DIRECTED_PARSER = re.compile(r'\bdirected\b', re.IGNORECASE)
UNDIRECTED_PARSER = re.compile(r'\bundirected\b', re.IGNORECASE)


class GraphFileError(Exception):
    pass


class GraphRecord(NamedTuple):
    """A single parsed line of a graph file.

    ``kind`` is ``size`` for a header that declares the node count (``u`` holds
    the node count and ``v`` the declared edge count, if any), ``node`` for a
    line that declares a single node and ``edge`` for an edge between ``u`` and
    ``v``.
    """
    kind: Literal['size', 'node', 'edge']
    u: str
    v: Optional[str] = None
    line: int = 0


class GraphFile(utils.FileWrapper):
    """Base class for line-oriented graph files. Children implement
    :meth:`_parse` to turn a non-comment line into a :class:`GraphRecord` and
    :meth:`write` to serialize one.

    Attributes:
        comment_prefixes: Characters that mark a comment line
        declared_directed: Whether a comment or header line declared the graph
            to be directed
        _line: Number of lines read so far; for internal use only.
    """

    def __init__(
        self,
        path: str,
        mode: Literal['r', 'w'] = 'r',
        comment_prefixes: str = '#%',
    ):
        super(GraphFile, self).__init__(path, mode)
        self.comment_prefixes = comment_prefixes
        self.declared_directed = False
        self._line = 0

    @property
    def line(self) -> int:
        """Number of lines read so far"""
        return self._line

    def _error(self, message: str) -> GraphFileError:
        return GraphFileError(f'{self.path}, line {self._line}: {message}')

    def _comment(self, line: str):
        """Inspect a comment line. SNAP files declare directedness this way."""
        if DIRECTED_PARSER.search(line) and not UNDIRECTED_PARSER.search(line):
            self.declared_directed = True

    def _parse(self, parts: list) -> Optional[GraphRecord]:
        raise NotImplementedError

    def read(self) -> GraphRecord:
        """Read the next record, skipping blank and comment lines.

        Returns:
            The next record

        Raises:
            GraphFileError: If the file was not opened for reading, was closed,
                or a line could not be parsed
            StopIteration: When there are no more records to read.
        """
        if self.mode != 'r':
            raise GraphFileError(
                f'Can not read from file in mode `{self.mode}`'
            )
        if self.closed:
            raise GraphFileError('Can not read from closed file')

        while True:
            line = next(self.fp).strip()
            self._line += 1
            if not line:
                continue
            if line[0] in self.comment_prefixes:
                self._comment(line)
                continue
            record = self._parse(line.split())
            if record is not None:
                return record

    def _write_line(self, line: str):
        if self.mode != 'w':
            raise GraphFileError(f'Can not write to file in mode `{self.mode}`')
        if self.closed:
            raise GraphFileError('Can not write to closed file')
        self.fp.write(f'{line}\n')
