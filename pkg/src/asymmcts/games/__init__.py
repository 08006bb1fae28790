"""Game rules: Go, NoGo, Othello and the synthetic tree domains."""

from .base import GameInterface, GameState, Outcome, Player, random_playout, reward
from .biastree import LEFT, RIGHT, BiasTree, bias_tree_leaf_value
from .explicit import ExplicitTree
from .go import Go, GoState, go_legal_moves, go_score, playout_move_filter_go
from .nogo import NoGo, NoGoState, nogo_legal_moves, nogo_outcome
from .othello import Othello, OthelloState, othello_legal_moves, othello_outcome

GAMES = {"go": Go, "nogo": NoGo, "othello": Othello, "biastree": BiasTree}


def make_game(name: str, **kwargs) -> GameInterface:
    try:
        cls = GAMES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown game {name!r}; choose from {sorted(GAMES)}") from None
    return cls(**kwargs)


__all__ = [
    "GAMES", "LEFT", "RIGHT", "BiasTree", "ExplicitTree", "GameInterface", "GameState", "Go",
    "GoState", "NoGo", "NoGoState", "Othello", "OthelloState", "Outcome", "Player",
    "bias_tree_leaf_value", "go_legal_moves", "go_score", "make_game", "nogo_legal_moves",
    "nogo_outcome", "othello_legal_moves", "othello_outcome", "playout_move_filter_go",
    "random_playout", "reward",
]
