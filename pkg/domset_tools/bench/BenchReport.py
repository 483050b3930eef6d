import csv
import json
from typing import Iterable, List, NamedTuple, Optional

from .. import utils

COLUMNS = (
    'instance', 'n', 'm_edges', 'm', 'k', 'Dmin', 'Davg', 'time_avg_s', 'mode',
    'over_time_limit', 'error'
)
INT_COLUMNS = ('n', 'm_edges', 'm', 'k', 'Dmin')
FLOAT_COLUMNS = ('Davg', 'time_avg_s')


class BenchReportError(Exception):
    pass


class BenchRow(NamedTuple):
    """Result of one (instance, m, k) cell over all seeds. A failed cell has an
    ``error`` message and None in place of the values it could not compute."""
    instance: str
    n: Optional[int]
    m_edges: Optional[int]
    m: int
    k: int
    Dmin: Optional[int]
    Davg: Optional[float]
    time_avg_s: Optional[float]
    mode: str
    over_time_limit: bool = False
    error: str = ''

    @property
    def failed(self) -> bool:
        """Whether the cell failed"""
        return bool(self.error)


def _parse(column: str, value: str):
    if column == 'over_time_limit':
        return value.lower() == 'true'
    if value == '':
        return '' if column == 'error' else None
    if column in INT_COLUMNS:
        return int(value)
    if column in FLOAT_COLUMNS:
        return float(value)
    return value


class BenchReport:
    """Benchmark results, one row per (instance, m, k) cell.

    Attributes:
        _rows: The rows; for internal use only. Use :attr:`rows` instead.
    """

    def __init__(self, rows: Optional[Iterable[BenchRow]] = None):
        self._rows = []
        for row in rows or []:
            self.add(row)

    @property
    def rows(self) -> List[BenchRow]:
        """The rows"""
        return list(self._rows)

    @property
    def failures(self) -> List[BenchRow]:
        """Rows of failed cells"""
        return [row for row in self._rows if row.failed]

    def add(self, row: BenchRow):
        """Add a row.

        Raises:
            BenchReportError: If ``Dmin > Davg``
        """
        row = BenchRow(*row)
        if row.Dmin is not None and row.Davg is not None and row.Dmin > row.Davg:
            raise BenchReportError(
                f'Dmin {row.Dmin} exceeds Davg {row.Davg} for {row.instance}'
            )
        self._rows.append(row)

    def to_dicts(self) -> List[dict]:
        """Rows as dictionaries, in column order."""
        return [row._asdict() for row in self._rows]

    def to_csv(self, path: str) -> str:
        """Write the report as CSV."""
        with utils.open_as_text(path, 'w') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(COLUMNS)
            for row in self._rows:
                writer.writerow(['' if value is None else value for value in row])
        return path

    def to_json(self, path: str) -> str:
        """Write the report as a JSON list of rows."""
        return utils.write_json(self.to_dicts(), path, indent=2)

    def to_markdown(self, path: str) -> str:
        """Write the report as a Markdown table."""
        lines = [
            '| ' + ' | '.join(COLUMNS) + ' |',
            '|' + '|'.join('---' for _ in COLUMNS) + '|',
        ]
        for row in self._rows:
            lines.append(
                '| ' + ' | '.join(
                    '' if value is None else str(value) for value in row
                ) + ' |'
            )
        with utils.open_as_text(path, 'w') as f:
            f.write('\n'.join(lines) + '\n')
        return path

    @classmethod
    def from_csv(cls, path: str) -> 'BenchReport':
        """Read a report written by :meth:`to_csv`.

        Raises:
            BenchReportError: If the header does not match
        """
        with utils.open_as_text(path, 'r') as f:
            reader = csv.reader(f)
            header = tuple(next(reader, ()))
            if header != COLUMNS:
                raise BenchReportError(f'{path} has an unexpected header')
            return cls(
                BenchRow(
                    *(
                        _parse(column, value)
                        for column, value in zip(COLUMNS, values)
                    )
                ) for values in reader if values
            )

    @classmethod
    def from_json(cls, path: str) -> 'BenchReport':
        """Read a report written by :meth:`to_json`.

        Raises:
            BenchReportError: If a row has missing or unknown columns
        """
        try:
            return cls(BenchRow(**data) for data in utils.read_json(path))
        except (TypeError, json.JSONDecodeError) as e:
            raise BenchReportError(f'Failed to read `{path}`: {e}')

    def __len__(self):
        return len(self._rows)

    def __eq__(self, other):
        if not isinstance(other, BenchReport):
            return NotImplemented
        return self._rows == other._rows

    def __repr__(self):
        return (
            f'{self.__class__.__name__}(rows={len(self._rows)}, '
            f'failures={len(self.failures)})'
        )
