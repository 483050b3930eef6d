from typing_extensions import Literal

from ..utils import UtilsError, resolve_name

Mode = Literal['sequential', 'distributed-sim']
IsolatedPolicy = Literal['error', 'include']
MODE_ALIASES = {
    'sequential': 'sequential',
    'seq': 'sequential',
    'distributedsim': 'distributed-sim',
    'distributed': 'distributed-sim',
    'sim': 'distributed-sim',
}
ISOLATED_POLICY_ALIASES = {
    'error': 'error',
    'include': 'include',
    'includeinsolution': 'include',
}
MAX_SEED = 2**64


class RunConfigError(Exception):
    pass


class RunConfig:
    """Parameters of a single run of the marking algorithm.

    Attributes:
        _seed: Random seed; for internal use only. Use :attr:`seed` instead.
        _m: Number of refinement rounds; for internal use only. Use :attr:`m`
            instead.
        _mode: Execution mode; for internal use only. Use :attr:`mode` instead.
        _isolated_policy: What to do with isolated vertices; for internal use
            only. Use :attr:`isolated_policy` instead.
        _n_threads: Number of threads for intra-round parallelism; for internal
            use only. Use :attr:`n_threads` instead.
    """

    def __init__(
        self,
        seed: int = 0,
        m: int = 0,
        mode: str = 'sequential',
        isolated_policy: str = 'error',
        n_threads: int = 1,
    ):
        """
        Args:
            seed: Seed of the per-node random tags, in ``[0, 2**64)``.
                Defaults to 0.
            m: Number of refinement rounds. Defaults to 0.
            mode: ``sequential`` (also ``seq``) or ``distributed-sim`` (also
                ``sim``). Defaults to ``sequential``.
            isolated_policy: ``error`` to reject graphs with isolated vertices,
                or ``include`` (also ``include-in-solution``) to add them to the
                solution. Defaults to ``error``.
            n_threads: Number of threads used to mark nodes within a round in
                sequential mode. Defaults to 1.

        Raises:
            RunConfigError: If any value is invalid
        """
        if not isinstance(seed, int) or not 0 <= seed < MAX_SEED:
            raise RunConfigError(
                f'`seed` must be an integer in [0, 2**64), got {seed!r}'
            )
        if not isinstance(m, int) or m < 0:
            raise RunConfigError(
                f'`m` must be a non-negative integer, got {m!r}'
            )
        if n_threads < 1:
            raise RunConfigError(
                f'`n_threads` must be at least 1, got {n_threads}'
            )
        try:
            self._mode = resolve_name(mode, MODE_ALIASES, 'mode')
            self._isolated_policy = resolve_name(
                isolated_policy, ISOLATED_POLICY_ALIASES, 'isolated policy'
            )
        except UtilsError as e:
            raise RunConfigError(str(e))

        self._seed = seed
        self._m = m
        self._n_threads = n_threads

    @property
    def seed(self) -> int:
        """Seed of the per-node random tags"""
        return self._seed

    @property
    def m(self) -> int:
        """Number of refinement rounds"""
        return self._m

    @property
    def mode(self) -> Mode:
        """Execution mode"""
        return self._mode

    @property
    def isolated_policy(self) -> IsolatedPolicy:
        """Isolated-vertex policy"""
        return self._isolated_policy

    @property
    def n_threads(self) -> int:
        """Number of threads used within a round"""
        return self._n_threads

    def replace(self, **kwargs) -> 'RunConfig':
        """Copy of this configuration with some values replaced.

        Args:
            **kwargs: Constructor arguments to replace

        Returns:
            The new configuration
        """
        values = {
            'seed': self.seed,
            'm': self.m,
            'mode': self.mode,
            'isolated_policy': self.isolated_policy,
            'n_threads': self.n_threads,
        }
        values.update(kwargs)
        return RunConfig(**values)

    def __eq__(self, other):
        if not isinstance(other, RunConfig):
            return NotImplemented
        return repr(self) == repr(other)

    def __repr__(self):
        return (
            f'{self.__class__.__name__}(seed={self.seed}, m={self.m}, '
            f'mode={self.mode!r}, isolated_policy={self.isolated_policy!r}, '
            f'n_threads={self.n_threads})'
        )
