from typing import Optional

from .GraphFile import GraphFile, GraphRecord


class Dimacs(GraphFile):
    """DIMACS-like graph file. A ``p <type> n m`` line declares the node count,
    edges are ``e u v`` lines (bare ``u v`` lines, as in PACE ``.gr`` files, are
    also accepted) and nodes are 1-based integers.

    Attributes:
        n: Node count declared by the ``p`` line, or None before it is read
    """

    def __init__(self, *args, **kwargs):
        super(Dimacs, self).__init__(*args, **kwargs)
        self.n = None

    def _node(self, token: str) -> str:
        try:
            v = int(token)
        except ValueError:
            raise self._error(f'node `{token}` is not an integer')
        if self.n is None:
            raise self._error('edge found before the `p` line')
        if not 1 <= v <= self.n:
            raise self._error(f'node {v} is outside [1, {self.n}]')
        return str(v)

    def _parse(self, parts: list) -> Optional[GraphRecord]:
        tag = parts[0].lower()
        if tag == 'p':
            if len(parts) < 3:
                raise self._error('expected `p <type> n m`')
            if self.n is not None:
                raise self._error('duplicate `p` line')
            try:
                counts = [int(part) for part in parts[-2:]]
            except ValueError:
                raise self._error('`p` line counts are not integers')
            self.n, m = counts
            return GraphRecord('size', str(self.n), str(m), line=self._line)
        if tag == 'e':
            parts = parts[1:]
        elif tag in ('n', 'v'):
            # Node descriptor lines carry no structure.
            return None
        if len(parts) < 2:
            raise self._error('expected `e u v`')
        return GraphRecord(
            'edge', self._node(parts[0]), self._node(parts[1]), line=self._line
        )

    def write(self, record: GraphRecord):
        """Write a single record.

        Args:
            record: The record to write

        Raises:
            GraphFileError: If the file was not opened for writing, or the file
                was closed.
        """
        if record.kind == 'size':
            self._write_line(f'p edge {record.u} {record.v or 0}')
        elif record.kind == 'edge':
            self._write_line(f'e {record.u} {record.v}')
