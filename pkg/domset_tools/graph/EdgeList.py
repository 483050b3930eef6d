from typing import Optional

from .GraphFile import GraphFile, GraphRecord


class EdgeList(GraphFile):
    """Whitespace-separated edge list, one ``u v`` pair per line (SNAP and
    Network Repository style). A third column (weight or timestamp) is ignored.
    A line holding a single label declares a node without edges.
    """

    def _parse(self, parts: list) -> Optional[GraphRecord]:
        if len(parts) == 1:
            return GraphRecord('node', parts[0], line=self._line)
        if len(parts) > 3:
            raise self._error(
                f'expected `u v` or `u v value`, found {len(parts)} columns'
            )
        return GraphRecord('edge', parts[0], parts[1], line=self._line)

    def write(self, record: GraphRecord):
        """Write a single record. Size records are written as a comment.

        Args:
            record: The record to write

        Raises:
            GraphFileError: If the file was not opened for writing, or the file
                was closed.
        """
        if record.kind == 'size':
            self._write_line(f'# Nodes: {record.u} Edges: {record.v}')
        elif record.kind == 'node':
            self._write_line(record.u)
        else:
            self._write_line(f'{record.u} {record.v}')
