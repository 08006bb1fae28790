"""The binary lower-bound tree on which plain UCT is misled.

The rightmost path is optimal. Leaving it with LEFT at depth ``d`` ends
the episode with reward ``(D - d - 1) / D``, so the left child of the root
is worth ``(D - 1) / D`` and LEFT at the last decision is worth 0; RIGHT at
the last decision is worth 1. A single agent makes every decision.
"""

import numpy as np

from . import _dispatch as kern
from . import _treerules as tr
from .base import GameInterface, GameState

LEFT = tr.LEFT
RIGHT = tr.RIGHT


class BiasTreeState(GameState):
    __slots__ = ()

    @property
    def depth(self) -> int:
        return int(self.data[tr.DEPTH])

    @property
    def on_optimal_path(self) -> bool:
        return int(self.data[tr.STATUS]) == tr.LIVE


def bias_tree_leaf_value(D: int, d: int, action: int) -> float:
    if not 0 <= d < D:
        raise ValueError(f"depth {d} outside [0, {D})")
    if action == RIGHT and d < D - 1:
        raise ValueError("RIGHT before the last decision is not a leaf")
    return float(tr.leaf_value(D, d, action))


class BiasTree(GameInterface):
    name = "biastree"
    kind = kern.BIASTREE
    single_agent = True
    scalar_valued = True
    state_type = BiasTreeState

    def __init__(self, depth: int = 4):
        super().__init__()
        if depth < 1:
            raise ValueError("depth must be positive")
        self.depth = depth
        self.max_game_length = depth

    def initial_state(self) -> BiasTreeState:
        return BiasTreeState(np.array([self.depth, 0, tr.LIVE], dtype=np.int64))

    def outcome(self, state):
        return self.terminal_value(state)

    def format_move(self, move: int) -> str:
        return "left" if move == LEFT else "right"

    def parse_move(self, text: str) -> int:
        return {"left": LEFT, "right": RIGHT}[text.strip().lower()]

    def render(self, state: BiasTreeState) -> str:
        status = ("live", "left-leaf", "right-leaf")[int(state.data[tr.STATUS])]
        return f"D={self.depth} depth={state.depth} {status}"
