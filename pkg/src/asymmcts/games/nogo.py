"""9x9 NoGo: capturing and suicide are illegal, a player left without a
legal point loses. There is no pass."""

import numpy as np

from . import _dispatch as kern
from . import _gorules as gr
from .base import GameInterface, Outcome, Player
from .go import BoardState, _setup, format_point, parse_diagram, parse_point, render_board


class NoGoState(BoardState):
    __slots__ = ()


class NoGo(GameInterface):
    name = "nogo"
    kind = kern.NOGO
    max_game_length = gr.NPOINTS
    state_type = NoGoState

    def initial_state(self) -> NoGoState:
        return NoGoState(gr.new_board(False, 0.0, self.max_game_length))

    def from_diagram(self, text: str, to_move: Player = Player.FIRST) -> NoGoState:
        board = parse_diagram(text)
        data = gr.new_board(False, 0.0, self.max_game_length)
        _setup(data, board)
        data[gr.TO_MOVE] = int(to_move)
        data[gr.MOVES] = int(np.count_nonzero(board))
        return NoGoState(data)

    def format_move(self, move: int) -> str:
        return format_point(move)

    def parse_move(self, text: str) -> int:
        return parse_point(text)

    def render(self, state: NoGoState) -> str:
        return render_board(state)


def nogo_legal_moves(state: NoGoState) -> list[int]:
    out = np.empty(gr.NPOINTS, dtype=np.int64)
    n = gr.nogo_legal(state.data, out)
    return out[:n].tolist()


def nogo_outcome(state: NoGoState) -> Outcome:
    if not gr.nogo_terminal(state.data):
        raise ValueError("the player to move still has legal moves")
    return Outcome.from_value(gr.nogo_value(state.data))
