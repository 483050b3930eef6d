from typing import Optional

from .GraphFile import GraphFile, GraphRecord

HEADER = '%%MatrixMarket matrix coordinate pattern symmetric'


class MatrixMarket(GraphFile):
    """Matrix Market coordinate file read as a graph pattern. The header banner
    is inspected for ``general`` (directed) symmetry, the size line
    ``rows cols nnz`` declares ``max(rows, cols)`` nodes and every entry
    ``i j [value...]`` is an edge between 1-based nodes ``i`` and ``j``.

    Attributes:
        n: Node count declared by the size line, or None before it is read
    """

    def __init__(self, *args, **kwargs):
        super(MatrixMarket, self).__init__(*args, **kwargs)
        self.n = None
        self._header_written = False

    def _comment(self, line: str):
        if not line.startswith('%%MatrixMarket'):
            return super(MatrixMarket, self)._comment(line)
        banner = line.lower().split()
        if 'array' in banner:
            raise self._error('only coordinate Matrix Market files are graphs')
        if 'general' in banner:
            self.declared_directed = True

    def _int(self, token: str) -> int:
        try:
            return int(token)
        except ValueError:
            raise self._error(f'`{token}` is not an integer')

    def _parse(self, parts: list) -> Optional[GraphRecord]:
        if self.n is None:
            if len(parts) != 3:
                raise self._error('expected size line `rows cols nnz`')
            rows, cols, nnz = (self._int(part) for part in parts)
            self.n = max(rows, cols)
            return GraphRecord('size', str(self.n), str(nnz), line=self._line)
        if len(parts) < 2:
            raise self._error('expected entry `i j [value]`')
        i, j = self._int(parts[0]), self._int(parts[1])
        for v in (i, j):
            if not 1 <= v <= self.n:
                raise self._error(f'index {v} is outside [1, {self.n}]')
        return GraphRecord('edge', str(i), str(j), line=self._line)

    def write(self, record: GraphRecord):
        """Write a single record. The size record must come first; entries are
        written to the lower triangle.

        Args:
            record: The record to write

        Raises:
            GraphFileError: If the file was not opened for writing, or the file
                was closed.
        """
        if record.kind == 'size':
            self._write_line(HEADER)
            self._write_line(f'{record.u} {record.u} {record.v or 0}')
            self._header_written = True
        elif record.kind == 'edge':
            if not self._header_written:
                raise self._error('size record must be written first')
            i, j = sorted((int(record.u), int(record.v)), reverse=True)
            self._write_line(f'{i} {j}')
