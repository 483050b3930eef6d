from typing import Dict, List, NamedTuple

from typing_extensions import Literal

Phase = Literal['discovery', 'weight', 'mark']
MESSAGE_KINDS = ('discover', 'weight', 'mark', 'relay')


class RoundMessages(NamedTuple):
    """Messages sent during one phase of one algorithm round.

    ``round`` is the 1-based algorithm round (1 is the initial weight exchange,
    2 the initial marking and every later round a refinement), or 0 for
    neighborhood discovery. A phase spans ``exchanges`` synchronous exchanges.
    """
    round: int
    phase: Phase
    exchanges: int
    counts: Dict[str, int]

    @property
    def messages(self) -> int:
        """Total messages of every kind"""
        return sum(self.counts.values())


class MessageTrace:
    """Per-round message accounting of a distributed simulation.

    Attributes:
        _entries: Recorded phases, in order; for internal use only. Use
            :attr:`entries` instead.
    """

    def __init__(self):
        self._entries = []

    @property
    def entries(self) -> List[RoundMessages]:
        """Recorded phases, in order"""
        return list(self._entries)

    def record(self, round: int, phase: Phase, exchanges: int, **counts):
        """Record one phase.

        Args:
            round: Algorithm round, or 0 for discovery
            phase: Phase name
            exchanges: Number of synchronous exchanges the phase took
            **counts: Message counts by kind
        """
        self._entries.append(
            RoundMessages(
                round, phase, exchanges,
                {kind: counts.get(kind, 0)
                 for kind in MESSAGE_KINDS}
            )
        )

    def messages_in_round(self, round: int) -> int:
        """Total messages sent during an algorithm round."""
        return sum(
            entry.messages for entry in self._entries if entry.round == round
        )

    def messages_by_kind(self) -> Dict[str, int]:
        """Total messages of each kind over the whole run."""
        totals = {kind: 0 for kind in MESSAGE_KINDS}
        for entry in self._entries:
            for kind, count in entry.counts.items():
                totals[kind] += count
        return totals

    @property
    def messages(self) -> int:
        """Total messages, excluding discovery"""
        return sum(
            entry.messages for entry in self._entries if entry.round > 0
        )

    @property
    def exchanges(self) -> int:
        """Total synchronous exchanges, including discovery"""
        return sum(entry.exchanges for entry in self._entries)

    @property
    def rounds(self) -> int:
        """Number of algorithm rounds recorded"""
        return len({entry.round for entry in self._entries if entry.round > 0})

    def to_rows(self) -> List[dict]:
        """Flat rows, one per phase, suitable for CSV or JSON output."""
        return [{
            'round': entry.round,
            'phase': entry.phase,
            'exchanges': entry.exchanges,
            **entry.counts,
        } for entry in self._entries]

    def __repr__(self):
        return (
            f'{self.__class__.__name__}(rounds={self.rounds}, '
            f'exchanges={self.exchanges}, messages={self.messages})'
        )
