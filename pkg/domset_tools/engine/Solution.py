from typing import NamedTuple

import numpy as np


class Solution(NamedTuple):
    """Result of a run of the marking algorithm.

    ``marked`` is the sorted array of marked node ids (the image of the final
    round's choices, plus isolated vertices when they are included by policy).
    ``rounds`` counts algorithm rounds, ``messages`` the messages sent in a
    distributed simulation (0 in sequential mode) and ``elapsed`` the wall time
    of the solve in seconds.
    """
    marked: np.ndarray
    m_used: int
    k_used: int
    seed: int
    rounds: int
    messages: int
    elapsed: float
    mode: str

    @property
    def size(self) -> int:
        """Number of marked nodes"""
        return int(self.marked.size)

    def to_dict(self) -> dict:
        """Dictionary of the solution values, with ``marked`` as a list."""
        return {
            'seed': self.seed,
            'm': self.m_used,
            'k': self.k_used,
            'mode': self.mode,
            'size': self.size,
            'rounds': self.rounds,
            'messages': self.messages,
            'elapsed_s': self.elapsed,
            'marked': self.marked.tolist(),
        }
