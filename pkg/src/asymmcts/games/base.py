"""Uniform two-player game abstraction used by the search."""

from abc import ABC, abstractmethod
from enum import Enum, IntEnum

import numpy as np

from . import _dispatch as kern
from ._treerules import empty_aux


class Player(IntEnum):
    FIRST = 0
    SECOND = 1

    @property
    def other(self) -> "Player":
        return Player(1 - self)


class Outcome(Enum):
    FIRST_WINS = "first_wins"
    SECOND_WINS = "second_wins"
    DRAW = "draw"

    @classmethod
    def from_value(cls, value: float) -> "Outcome":
        if value == 1.0:
            return cls.FIRST_WINS
        if value == 0.0:
            return cls.SECOND_WINS
        if value == 0.5:
            return cls.DRAW
        raise ValueError(f"{value} is not a win/loss/draw reward")

    def winner(self):
        if self is Outcome.FIRST_WINS:
            return Player.FIRST
        if self is Outcome.SECOND_WINS:
            return Player.SECOND
        return None


def reward(outcome: Outcome, player: Player) -> float:
    """Map a game result to a reward in [0, 1] for ``player``."""
    if outcome is Outcome.DRAW:
        return 0.5
    return 1.0 if outcome.winner() == player else 0.0


class GameState:
    """Immutable-by-convention wrapper around a kernel state vector.

    Rule objects never write into ``data``; every transition copies.
    """

    __slots__ = ("data",)

    def __init__(self, data: np.ndarray):
        self.data = data

    def __eq__(self, other):
        return type(other) is type(self) and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash(self.data.tobytes())

    def copy(self):
        return type(self)(self.data.copy())


class GameInterface(ABC):
    """Rules of one game. Stateless apart from fixed rule parameters.

    Concrete games bind a compiled kernel set through ``kind``; the search
    loop runs on those kernels directly and only the methods below are
    meant for callers.
    """

    name: str = ""
    kind: int = -1
    max_game_length: int = 0
    single_agent: bool = False
    scalar_valued: bool = False
    state_type = GameState

    def __init__(self):
        self.aux = empty_aux()

    @abstractmethod
    def initial_state(self) -> GameState:
        ...

    def wrap(self, data: np.ndarray) -> GameState:
        return self.state_type(np.ascontiguousarray(data, dtype=np.int64))

    def legal_moves(self, state: GameState) -> list[int]:
        out = np.empty(kern.max_branching(self.kind, self.aux) + 1, dtype=np.int64)
        n = kern.legal(self.kind, state.data, self.aux, out)
        return out[:n].tolist()

    def apply(self, state: GameState, move: int) -> GameState:
        if move not in self.legal_moves(state):
            raise ValueError(f"illegal move {self.format_move(move)!r}")
        data = state.data.copy()
        kern.play(self.kind, data, self.aux, move)
        return self.state_type(data)

    def to_move(self, state: GameState) -> Player:
        return Player(int(kern.to_move(self.kind, state.data, self.aux)))

    def is_terminal(self, state: GameState) -> bool:
        return bool(kern.terminal(self.kind, state.data, self.aux))

    def terminal_value(self, state: GameState) -> float:
        """Reward of a terminal state for the first player."""
        if not self.is_terminal(state):
            raise ValueError("state is not terminal")
        return float(kern.value(self.kind, state.data, self.aux))

    def outcome(self, state: GameState):
        return Outcome.from_value(self.terminal_value(state))

    def format_move(self, move: int) -> str:
        return str(move)

    def parse_move(self, text: str) -> int:
        return int(text)

    def render(self, state: GameState) -> str:
        return repr(state.data.tolist())


def random_playout(game: GameInterface, state: GameState, rng: np.random.Generator, moves=None):
    """Finish the game with uniformly random legal moves.

    Returns the game's outcome (a bare reward for scalar-valued domains).
    If ``moves`` is a list, the moves played are appended to it.
    """
    data = state.data.copy()
    trail = np.zeros(game.max_game_length + 2 if moves is not None else 0, dtype=np.int64)
    value = kern.playout(game.kind, data, game.aux, rng, trail)
    if moves is not None:
        moves.extend(trail[1:1 + trail[0]].tolist())
    if game.scalar_valued:
        return float(value)
    return game.outcome(game.state_type(data))
