from typing import Dict, List, NamedTuple, Tuple

import numpy as np

from ..graph import Graph
from ..logging import logger
from .MessageTrace import MessageTrace


class SimulatorError(Exception):
    pass


class Message(NamedTuple):
    """A single message on a directed edge.

    ``origin`` is the node the payload is about (a weight or id flood) or the
    node that sent a mark. ``target`` is the marked node for ``mark`` and
    ``relay`` messages and -1 otherwise.
    """
    kind: str
    sender: int
    origin: int
    target: int = -1
    count: int = 0
    tag: float = 0.0


class Simulator:
    """Synchronous message-passing simulation of the marking algorithm in the
    LOCAL model. Every node only acts on its own state and the messages in its
    inbox. Messages sent during an exchange are delivered at the barrier that
    ends it, so a node reads only what was sent in the previous exchange.

    With ``k > 1`` every node works on the nodes within distance ``k``: ids and
    weights are flooded ``k`` hops (a node keeps the neighbor it first heard an
    origin from, the smallest sender id on ties, as its next hop toward that
    origin) and marks are relayed back along those next hops.

    Attributes:
        graph: The graph
        tags: Random tag of every node
        k: Neighborhood radius
        trace: Message accounting of the run
        _inboxes: Messages delivered at the last barrier; for internal use only.
        _outboxes: Messages sent in the current exchange; for internal use only.
        _counts: Messages sent in the current phase by kind; for internal use
            only.
        _known: Per node, the latest weight heard from each origin; for internal
            use only.
        _routes: Per node, the next hop toward each origin; for internal use
            only.
        _received: Per node, marks received in the last marking phase; for
            internal use only.
    """

    def __init__(self, graph: Graph, tags: np.ndarray, k: int = 1):
        """
        Args:
            graph: The graph
            tags: Random tag of every node
            k: Neighborhood radius. Defaults to 1.

        Raises:
            SimulatorError: If ``k < 1`` or the number of tags does not match
                the number of nodes
        """
        if k < 1:
            raise SimulatorError(f'`k` must be at least 1, got {k}')
        if len(tags) != graph.n:
            raise SimulatorError(
                f'{len(tags)} tags were provided for {graph.n} nodes'
            )
        self.graph = graph
        self.tags = tags
        self.k = k
        self.trace = MessageTrace()

        n = graph.n
        self._inboxes = [[] for _ in range(n)]
        self._outboxes = [[] for _ in range(n)]
        self._counts = {}
        self._known: List[Dict[int, Tuple[int, float]]] = [{} for _ in range(n)]
        self._routes: List[Dict[int, int]] = [{} for _ in range(n)]
        self._received = np.zeros(n, dtype=np.int64)

    def _send(self, receiver: int, message: Message):
        self._outboxes[receiver].append(message)
        self._counts[message.kind] = self._counts.get(message.kind, 0) + 1

    def _barrier(self):
        self._inboxes = self._outboxes
        self._outboxes = [[] for _ in range(self.graph.n)]

    def _end_phase(self, round: int, phase: str, exchanges: int):
        self.trace.record(round, phase, exchanges, **self._counts)
        logger.debug(
            f'Round {round} {phase}: {exchanges} exchanges, '
            f'{sum(self._counts.values())} messages'
        )
        self._counts = {}

    def _flood(self, kind: str, counts: np.ndarray):
        """Flood every node's ``(count, tag)`` item ``k`` hops. Afterwards
        ``_known[v]`` holds exactly the items of the nodes within distance
        ``k`` of ``v`` and ``_routes[v]`` a next hop toward each of them.
        """
        graph = self.graph
        self._known = [{} for _ in range(graph.n)]
        self._routes = [{} for _ in range(graph.n)]
        fresh = [[Message(kind, v, v, -1, int(counts[v]), float(self.tags[v]))]
                 for v in range(graph.n)]

        for _ in range(self.k):
            for v in range(graph.n):
                for item in fresh[v]:
                    for u in graph.neighbors(v):
                        self._send(int(u), item._replace(sender=v))
            self._barrier()

            # Inboxes are filled in sender order, so the first sender of an
            # origin is also the smallest one.
            fresh = [[] for _ in range(graph.n)]
            for v in range(graph.n):
                known = self._known[v]
                for message in self._inboxes[v]:
                    if message.origin == v or message.origin in known:
                        continue
                    known[message.origin] = (message.count, message.tag)
                    self._routes[v][message.origin] = message.sender
                    fresh[v].append(message)

    def discover(self) -> np.ndarray:
        """Learn the size of every node's ``k``-neighborhood. With ``k = 1``
        this is the degree, which a node knows without communicating.

        Returns:
            Neighborhood size of every node
        """
        if self.k == 1:
            return self.graph.degrees.copy()
        self._flood('discover', np.zeros(self.graph.n, dtype=np.int64))
        self._end_phase(0, 'discovery', self.k)
        return np.array([len(known) for known in self._known], dtype=np.int64)

    def exchange_weights(self, round: int, counts: np.ndarray):
        """Every node advertises its weight ``counts[v] + r_v``.

        Args:
            round: Algorithm round, for accounting
            counts: Integer part of every node's weight
        """
        self._flood('weight', counts)
        self._end_phase(round, 'weight', self.k)

    def choose(self) -> np.ndarray:
        """Every node picks the heaviest node it heard from, comparing
        ``(count, tag, id)``.

        Returns:
            Choice of every node, or -1 for nodes that heard nothing
        """
        choices = np.full(self.graph.n, -1, dtype=np.int64)
        for v, known in enumerate(self._known):
            if known:
                choices[v] = max(
                    known, key=lambda u: (known[u][0], known[u][1], u)
                )
        return choices

    def exchange_marks(self, round: int, choices: np.ndarray):
        """Every node sends a mark to its choice, relayed along next hops. After
        ``k`` exchanges every mark has arrived and each node knows how many
        times it was marked.

        Args:
            round: Algorithm round, for accounting
            choices: Choice of every node

        Raises:
            SimulatorError: If a mark is still in flight after ``k`` exchanges
        """
        graph = self.graph
        self._received = np.zeros(graph.n, dtype=np.int64)
        for v in range(graph.n):
            target = int(choices[v])
            if target >= 0:
                self._send(
                    self._routes[v][target], Message('mark', v, v, target)
                )

        for exchange in range(self.k):
            self._barrier()
            for v in range(graph.n):
                for message in self._inboxes[v]:
                    if message.target == v:
                        self._received[v] += 1
                    elif exchange + 1 < self.k:
                        self._send(
                            self._routes[v][message.target],
                            message._replace(kind='relay', sender=v)
                        )
                    else:
                        raise SimulatorError(
                            f'Mark from {message.origin} to {message.target} '
                            f'did not arrive within {self.k} exchanges'
                        )
        self._end_phase(round, 'mark', self.k)

    @property
    def received(self) -> np.ndarray:
        """Marks every node received in the last marking phase"""
        return self._received

    def run(self, m: int) -> np.ndarray:
        """Run the initial marking and ``m`` refinement rounds.

        Args:
            m: Number of refinement rounds

        Returns:
            Final choice of every node
        """
        counts = self.discover()
        self.exchange_weights(1, counts)
        choices = self.choose()
        self.exchange_marks(2, choices)
        for i in range(m):
            self.exchange_weights(3 + i, self._received)
            choices = self.choose()
            self.exchange_marks(3 + i, choices)
        return choices

    @property
    def rounds(self) -> int:
        """Algorithm rounds executed, counting ``k`` communication rounds for
        every marking phase"""
        return self.k * self.trace.rounds
