import os
from typing import Iterable, List, NamedTuple, Optional

try:
    import tomllib
except ImportError:
    import tomli as tomllib

from ..engine import RunConfig, RunConfigError
from ..graph import LoadOptions, LoadOptionsError


class BenchSpecError(Exception):
    pass


class BenchInstance(NamedTuple):
    """A benchmark graph file. ``format`` is None to infer it from the
    extension."""
    name: str
    path: str
    format: Optional[str] = None

    def load_options(self) -> LoadOptions:
        """Options to load this instance with."""
        if self.format is None:
            return LoadOptions.infer(self.path)
        return LoadOptions(self.format)


class BenchSpec:
    """Benchmark protocol: every instance is solved for every ``m`` with every
    seed.

    Attributes:
        _instances: Instances; for internal use only. Use :attr:`instances`
            instead.
        _m_values: Refinement round counts; for internal use only.
        _seeds: Seeds; for internal use only.
        _k: Neighborhood radius; for internal use only.
        _time_limit: Seconds allowed per run; for internal use only.
        _mode: Execution mode; for internal use only.
        _isolated_policy: Isolated-vertex policy; for internal use only.
    """

    def __init__(
        self,
        instances: Iterable[BenchInstance],
        m_values: Iterable[int] = (0, 2, 5),
        seeds: Iterable[int] = tuple(range(1, 11)),
        k: int = 1,
        time_limit: Optional[float] = None,
        mode: str = 'sequential',
        isolated_policy: str = 'include',
    ):
        """
        Args:
            instances: Instances to run
            m_values: Refinement round counts. Defaults to ``(0, 2, 5)``.
            seeds: Seeds. Defaults to 1 through 10.
            k: Neighborhood radius. Defaults to 1.
            time_limit: Seconds allowed per run. Runs are never interrupted, but
                rows whose runs exceed it are flagged. Defaults to None (no
                limit).
            mode: Execution mode. Defaults to ``sequential``.
            isolated_policy: Isolated-vertex policy. Defaults to ``include``,
                since benchmark graphs may contain isolated vertices.

        Raises:
            BenchSpecError: If a list is empty or a value is invalid
        """
        self._instances = [BenchInstance(*instance) for instance in instances]
        self._m_values = list(m_values)
        self._seeds = list(seeds)
        for name, values in (('instances', self._instances),
                             ('m_values', self._m_values),
                             ('seeds', self._seeds)):
            if not values:
                raise BenchSpecError(f'`{name}` must not be empty')
        names = [instance.name for instance in self._instances]
        if len(set(names)) != len(names):
            raise BenchSpecError('Instance names must be unique')
        if not isinstance(k, int) or k < 1:
            raise BenchSpecError(f'`k` must be a positive integer, got {k!r}')
        if time_limit is not None and time_limit <= 0:
            raise BenchSpecError(
                f'`time_limit` must be positive, got {time_limit}'
            )

        try:
            for m in self._m_values:
                for seed in self._seeds:
                    RunConfig(
                        seed=seed,
                        m=m,
                        mode=mode,
                        isolated_policy=isolated_policy
                    )
            for instance in self._instances:
                instance.load_options()
        except (RunConfigError, LoadOptionsError) as e:
            raise BenchSpecError(str(e))

        self._k = k
        self._time_limit = time_limit
        self._mode = mode
        self._isolated_policy = isolated_policy

    @property
    def instances(self) -> List[BenchInstance]:
        """Instances"""
        return list(self._instances)

    @property
    def m_values(self) -> List[int]:
        """Refinement round counts"""
        return list(self._m_values)

    @property
    def seeds(self) -> List[int]:
        """Seeds"""
        return list(self._seeds)

    @property
    def k(self) -> int:
        """Neighborhood radius"""
        return self._k

    @property
    def time_limit(self) -> Optional[float]:
        """Seconds allowed per run"""
        return self._time_limit

    def config(self, m: int, seed: int) -> RunConfig:
        """Run configuration of one cell."""
        return RunConfig(
            seed=seed,
            m=m,
            mode=self._mode,
            isolated_policy=self._isolated_policy
        )

    @property
    def mode(self) -> str:
        """Execution mode"""
        return RunConfig(mode=self._mode).mode

    def __repr__(self):
        return (
            f'{self.__class__.__name__}(instances={len(self._instances)}, '
            f'm_values={self._m_values}, seeds={self._seeds}, k={self._k}, '
            f'time_limit={self._time_limit}, mode={self.mode!r})'
        )


def read_bench_spec(path: str) -> BenchSpec:
    """Read a benchmark specification from a TOML file. Top-level keys are the
    keyword arguments of :class:`BenchSpec` and every ``[[instances]]`` table has
    a ``name``, a ``path`` (relative to the TOML file) and an optional
    ``format``.

    Args:
        path: Path to the TOML file

    Returns:
        The benchmark specification

    Raises:
        BenchSpecError: If the file can not be parsed or is invalid
    """
    try:
        with open(path, 'rb') as f:
            data = tomllib.load(f)
    except (OSError, tomllib.TOMLDecodeError) as e:
        raise BenchSpecError(f'Failed to read `{path}`: {e}')

    root = os.path.dirname(os.path.abspath(path))
    instances = []
    for i, table in enumerate(data.pop('instances', [])):
        if 'path' not in table:
            raise BenchSpecError(f'Instance {i} in `{path}` has no `path`')
        instance_path = os.path.join(root, table['path'])
        instances.append(
            BenchInstance(
                table.get('name', os.path.basename(table['path'])),
                instance_path,
                table.get('format'),
            )
        )
    unknown = set(data) - {
        'm_values', 'seeds', 'k', 'time_limit', 'mode', 'isolated_policy'
    }
    if unknown:
        raise BenchSpecError(f'Unknown keys in `{path}`: {sorted(unknown)}')
    return BenchSpec(instances, **data)
