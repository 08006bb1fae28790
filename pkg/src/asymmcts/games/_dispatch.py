"""Game-kind dispatch so one compiled search loop serves every domain."""

from numba import njit

from . import _gorules as gr
from . import _othellorules as orl
from . import _treerules as tr

GO = 0
NOGO = 1
OTHELLO = 2
BIASTREE = 3
TREE = 4


@njit(cache=True)
def legal(kind, s, aux, out):
    if kind == GO:
        return gr.go_legal(s, out)
    if kind == NOGO:
        return gr.nogo_legal(s, out)
    if kind == OTHELLO:
        return orl.othello_legal(s, out)
    if kind == BIASTREE:
        return tr.bias_legal(s, out)
    return tr.tree_legal(s, aux, out)


@njit(cache=True)
def play(kind, s, aux, move):
    if kind == GO:
        gr.go_play(s, move)
    elif kind == NOGO:
        gr.nogo_play(s, move)
    elif kind == OTHELLO:
        orl.othello_play(s, move)
    elif kind == BIASTREE:
        tr.bias_play(s, move)
    else:
        tr.tree_play(s, aux, move)


@njit(cache=True)
def terminal(kind, s, aux):
    if kind == GO:
        return gr.go_terminal(s)
    if kind == NOGO:
        return gr.nogo_terminal(s)
    if kind == OTHELLO:
        return orl.othello_terminal(s)
    if kind == BIASTREE:
        return tr.bias_terminal(s)
    return tr.tree_terminal(s, aux)


@njit(cache=True)
def value(kind, s, aux):
    """Terminal reward in [0, 1] for the first player."""
    if kind == GO:
        return gr.go_value(s)
    if kind == NOGO:
        return gr.nogo_value(s)
    if kind == OTHELLO:
        return orl.othello_value(s)
    if kind == BIASTREE:
        return tr.bias_value(s)
    return tr.tree_value(s, aux)


@njit(cache=True)
def to_move(kind, s, aux):
    if kind == GO or kind == NOGO:
        return s[gr.TO_MOVE]
    if kind == OTHELLO:
        return s[orl.TO_MOVE]
    if kind == BIASTREE:
        return 0
    return tr.tree_to_move(s, aux)


@njit(cache=True)
def playout(kind, s, aux, rng, trail):
    if kind == GO:
        return gr.go_playout(s, rng, trail)
    if kind == NOGO:
        return gr.nogo_playout(s, rng, trail)
    if kind == OTHELLO:
        return orl.othello_playout(s, rng, trail)
    if kind == BIASTREE:
        return tr.bias_playout(s, rng, trail)
    return tr.tree_playout(s, aux, rng, trail)


@njit(cache=True)
def max_branching(kind, aux):
    if kind == GO:
        return gr.NPOINTS + 1
    if kind == NOGO:
        return gr.NPOINTS
    if kind == OTHELLO:
        return 65
    if kind == BIASTREE:
        return 2
    return tr.tree_max_branching(aux)
