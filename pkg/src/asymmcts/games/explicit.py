"""Hand-built finite game trees with real-valued leaves."""

from collections import deque

import numpy as np

from . import _dispatch as kern
from .base import GameInterface, GameState


class ExplicitTree(GameInterface):
    """A game given as nested lists.

    A leaf is a number (reward for the first player), an inner node a list
    of subtrees. Players alternate by depth unless ``single_agent``.

    >>> game = ExplicitTree([[0.2, 0.9], [0.4]])
    >>> game.legal_moves(game.initial_state())
    [0, 1]
    """

    name = "tree"
    kind = kern.TREE
    scalar_valued = True

    def __init__(self, tree, single_agent: bool = False):
        super().__init__()
        self.single_agent = single_agent
        records = []
        depth = 0
        queue = deque([(tree, 0)])
        # breadth-first numbering keeps siblings contiguous
        next_id = 1
        while queue:
            node, d = queue.popleft()
            depth = max(depth, d)
            mover = 0 if single_agent else d % 2
            if isinstance(node, (list, tuple)):
                if not node:
                    raise ValueError("inner nodes need at least one child")
                records.append((next_id, len(node), mover, 0.0))
                next_id += len(node)
                queue.extend((child, d + 1) for child in node)
            else:
                records.append((0, 0, mover, float(node)))
        self.aux = np.concatenate([[len(records)], np.asarray(records, dtype=np.float64).ravel()])
        self.max_game_length = depth
        self.n_nodes = len(records)

    def initial_state(self) -> GameState:
        return GameState(np.zeros(1, dtype=np.int64))

    def outcome(self, state):
        return self.terminal_value(state)

    def node_of(self, state: GameState) -> int:
        return int(state.data[0])
