"""9x9 Go under Tromp-Taylor style rules.

Area scoring, suicide illegal, positional superko, komi 6.5. A game ends
after two consecutive passes or when the move cap is reached; either way
the board is area-scored as it stands.
"""

import numpy as np

from . import _dispatch as kern
from . import _gorules as gr
from .base import GameInterface, GameState, Outcome, Player

COLUMNS = "abcdefghj"
PASS = gr.PASS
_CHARS = {gr.EMPTY: ".", gr.BLACK: "X", gr.WHITE: "O"}


class BoardState(GameState):
    """Shared views over the 9x9 board vector."""

    __slots__ = ()

    @property
    def board(self) -> np.ndarray:
        """9x9 array, row 0 is rank 1: 0 empty, 1 black, 2 white."""
        return self.data[gr.BOARD + gr.MOVE2PT].reshape(gr.N, gr.N).copy()

    @property
    def to_move(self) -> Player:
        return Player(int(self.data[gr.TO_MOVE]))

    @property
    def move_count(self) -> int:
        return int(self.data[gr.MOVES])


class GoState(BoardState):
    __slots__ = ()

    @property
    def consecutive_passes(self) -> int:
        return int(self.data[gr.PASSES])

    @property
    def position_hash(self) -> int:
        return int(self.data[gr.HASH])

    @property
    def history_hashes(self) -> set:
        table = self.data[gr.HIST:gr.HIST + gr.HIST_SLOTS]
        return {int(h) for h in table[table != 0]}


def format_point(move: int) -> str:
    if move == PASS:
        return "pass"
    row, col = divmod(move, gr.N)
    return f"{COLUMNS[col]}{row + 1}"


def parse_point(text: str) -> int:
    text = text.strip().lower()
    if text == "pass":
        return PASS
    col = COLUMNS.find(text[0])
    row = int(text[1:]) - 1
    if col < 0 or not 0 <= row < gr.N:
        raise ValueError(f"bad coordinate {text!r}")
    return row * gr.N + col


def render_board(state: BoardState) -> str:
    board = state.board
    lines = []
    for row in range(gr.N - 1, -1, -1):
        cells = "".join(_CHARS[int(v)] for v in board[row])
        lines.append(f"{row + 1} {cells}")
    lines.append("  " + COLUMNS)
    return "\n".join(lines)


def parse_diagram(text: str) -> np.ndarray:
    """Read a diagram (top line is rank 9) into a 9x9 colour array."""
    rows = []
    for line in text.strip().splitlines():
        parts = line.split()
        cells = next((p for p in parts if set(p) <= set(".XOxo") and len(p) == gr.N), None)
        if cells is not None:
            rows.append([{".": 0, "X": 1, "O": 2}[c.upper()] for c in cells])
    if len(rows) != gr.N:
        raise ValueError(f"expected {gr.N} board rows, got {len(rows)}")
    return np.array(rows[::-1], dtype=np.int64)


def _setup(data: np.ndarray, board: np.ndarray) -> None:
    for m in range(gr.NPOINTS):
        color = int(board.flat[m])
        if color:
            captured = gr.place(data, gr.MOVE2PT[m], color)
            if captured:
                raise ValueError("diagram contains a group without liberties")
    if gr.check_invariants(data) != 0:
        raise ValueError("diagram contains a group without liberties")


class Go(GameInterface):
    name = "go"
    kind = kern.GO
    max_game_length = gr.GO_MAX_MOVES
    state_type = GoState

    def __init__(self, komi: float = 6.5, eye_filter: bool = True):
        super().__init__()
        self.komi = komi
        self.eye_filter = eye_filter

    def initial_state(self) -> GoState:
        return GoState(gr.new_board(self.eye_filter, self.komi, self.max_game_length))

    def from_diagram(self, text: str, to_move: Player = Player.FIRST, move_count=None) -> GoState:
        """Position from a diagram; its history holds only the diagram itself."""
        board = parse_diagram(text)
        data = gr.new_board(self.eye_filter, self.komi, self.max_game_length)
        data[gr.HIST:] = 0
        data[gr.HIST_N] = 0
        _setup(data, board)
        gr._hist_add(data, data[gr.HASH])
        data[gr.TO_MOVE] = int(to_move)
        data[gr.MOVES] = int(np.count_nonzero(board)) if move_count is None else move_count
        return GoState(data)

    def format_move(self, move: int) -> str:
        return format_point(move)

    def parse_move(self, text: str) -> int:
        return parse_point(text)

    def render(self, state: GoState) -> str:
        return render_board(state)

    def area(self, state: GoState) -> tuple:
        return tuple(int(x) for x in gr.area(state.data))


def go_legal_moves(state: GoState) -> list[int]:
    """Non-suicidal, non-repeating placements plus PASS."""
    out = np.empty(gr.NPOINTS + 1, dtype=np.int64)
    n = gr.go_legal(state.data, out)
    return out[:n].tolist()


def go_score(state: GoState) -> Outcome:
    if not gr.go_terminal(state.data):
        raise ValueError("Go position is not finished")
    return Outcome.from_value(gr.go_value(state.data))


def playout_move_filter_go(state: GoState, candidate: int) -> bool:
    """False iff ``candidate`` fills a single-point true eye of the mover."""
    if candidate == PASS:
        return True
    color = int(state.data[gr.TO_MOVE]) + 1
    return not gr.is_true_eye(state.data, gr.MOVE2PT[candidate], color)
