"""Othello with standard rules: forced pass when no flip exists, the game
ends after two consecutive passes or a full board, most discs wins."""

import numpy as np

from . import _dispatch as kern
from . import _othellorules as orl
from .base import GameInterface, GameState, Outcome, Player

COLUMNS = "abcdefgh"
PASS = orl.PASS


class OthelloState(GameState):
    __slots__ = ()

    @property
    def board(self) -> np.ndarray:
        """8x8 array, row 0 is rank 1: 0 empty, 1 black, 2 white."""
        black = int(self.data[orl.BLACK_BB]) & (2**64 - 1)
        white = int(self.data[orl.WHITE_BB]) & (2**64 - 1)
        cells = np.zeros(64, dtype=np.int64)
        for sq in range(64):
            if black >> sq & 1:
                cells[sq] = 1
            elif white >> sq & 1:
                cells[sq] = 2
        return cells.reshape(8, 8)

    @property
    def to_move(self) -> Player:
        return Player(int(self.data[orl.TO_MOVE]))

    @property
    def consecutive_passes(self) -> int:
        return int(self.data[orl.PASSES])

    @property
    def plies(self) -> int:
        return int(self.data[orl.PLIES])

    def discs(self) -> tuple:
        return tuple(int(x) for x in orl.disc_counts(self.data))


class Othello(GameInterface):
    name = "othello"
    kind = kern.OTHELLO
    max_game_length = orl.MAX_PLIES
    state_type = OthelloState

    def initial_state(self) -> OthelloState:
        return OthelloState(orl.new_board())

    def from_diagram(self, text: str, to_move: Player = Player.FIRST) -> OthelloState:
        rows = []
        for line in text.strip().splitlines():
            cells = next((p for p in line.split() if len(p) == 8 and set(p) <= set(".XO")), None)
            if cells is not None:
                rows.append(cells)
        if len(rows) != 8:
            raise ValueError(f"expected 8 board rows, got {len(rows)}")
        black = white = 0
        for r, cells in enumerate(rows[::-1]):
            for c, ch in enumerate(cells):
                if ch == "X":
                    black |= 1 << (r * 8 + c)
                elif ch == "O":
                    white |= 1 << (r * 8 + c)
        data = orl.new_board()
        data[orl.BLACK_BB] = np.uint64(black).view(np.int64)
        data[orl.WHITE_BB] = np.uint64(white).view(np.int64)
        data[orl.TO_MOVE] = int(to_move)
        data[orl.PLIES] = bin(black | white).count("1") - 4
        return OthelloState(data)

    def format_move(self, move: int) -> str:
        if move == PASS:
            return "pass"
        row, col = divmod(move, 8)
        return f"{COLUMNS[col]}{row + 1}"

    def parse_move(self, text: str) -> int:
        text = text.strip().lower()
        if text == "pass":
            return PASS
        col = COLUMNS.find(text[0])
        row = int(text[1:]) - 1
        if col < 0 or not 0 <= row < 8:
            raise ValueError(f"bad coordinate {text!r}")
        return row * 8 + col

    def render(self, state: OthelloState) -> str:
        board = state.board
        lines = [f"{r + 1} " + "".join(".XO"[int(v)] for v in board[r]) for r in range(7, -1, -1)]
        lines.append("  " + COLUMNS)
        return "\n".join(lines)


def othello_legal_moves(state: OthelloState) -> list[int]:
    """Flipping placements, or ``[PASS]`` when there is none."""
    out = np.empty(65, dtype=np.int64)
    n = orl.othello_legal(state.data, out)
    return out[:n].tolist()


def othello_outcome(state: OthelloState) -> Outcome:
    if not orl.othello_terminal(state.data):
        raise ValueError("Othello position is not finished")
    return Outcome.from_value(orl.othello_value(state.data))
