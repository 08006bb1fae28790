"""Compiled kernels for the synthetic tree domains.

BiasTree state: ``[D, depth, status]``; status 0 is a live node on the
optimal path, 1 a leaf reached by LEFT from ``depth``, 2 the rightmost leaf.

Explicit-tree state: ``[node]``. The tree lives in the float ``aux`` array:
``aux[0]`` is the node count and node ``i`` owns the record
``aux[1 + 4i : 5 + 4i] = (first_child, n_children, mover, leaf_value)``.
"""

import numpy as np
from numba import njit

LEFT = 0
RIGHT = 1

D_SLOT = 0
DEPTH = 1
STATUS = 2
BIAS_STATE_LEN = 3

LIVE = 0
LEFT_LEAF = 1
RIGHT_LEAF = 2


@njit(cache=True)
def leaf_value(depth_d, d, action):
    """Reward for taking ``action`` at optimal-path depth ``d``."""
    if action == RIGHT:
        return 1.0
    return (depth_d - d - 1) / depth_d


@njit(cache=True)
def bias_terminal(s):
    return s[STATUS] != LIVE


@njit(cache=True)
def bias_legal(s, out):
    if s[STATUS] != LIVE:
        return 0
    out[0] = LEFT
    out[1] = RIGHT
    return 2


@njit(cache=True)
def bias_play(s, move):
    if move == LEFT:
        s[STATUS] = LEFT_LEAF
    elif s[DEPTH] == s[D_SLOT] - 1:
        s[STATUS] = RIGHT_LEAF
    else:
        s[DEPTH] += 1


@njit(cache=True)
def bias_value(s):
    if s[STATUS] == RIGHT_LEAF:
        return 1.0
    return leaf_value(s[D_SLOT], s[DEPTH], LEFT)


@njit(cache=True)
def bias_playout(s, rng, trail):
    record = trail.shape[0] > 0
    nrec = 0
    while s[STATUS] == LIVE:
        move = rng.integers(0, 2)
        bias_play(s, move)
        if record:
            trail[1 + nrec] = move
            nrec += 1
    if record:
        trail[0] = nrec
    return bias_value(s)


# -- explicit trees -----------------------------------------------------------

@njit(cache=True)
def _rec(aux, node, field):
    return aux[1 + 4 * node + field]


@njit(cache=True)
def tree_terminal(s, aux):
    return _rec(aux, s[0], 1) == 0


@njit(cache=True)
def tree_legal(s, aux, out):
    n = int(_rec(aux, s[0], 1))
    for i in range(n):
        out[i] = i
    return n


@njit(cache=True)
def tree_play(s, aux, move):
    s[0] = int(_rec(aux, s[0], 0)) + move


@njit(cache=True)
def tree_to_move(s, aux):
    return int(_rec(aux, s[0], 2))


@njit(cache=True)
def tree_value(s, aux):
    return _rec(aux, s[0], 3)


@njit(cache=True)
def tree_playout(s, aux, rng, trail):
    record = trail.shape[0] > 0
    nrec = 0
    while not tree_terminal(s, aux):
        move = rng.integers(0, int(_rec(aux, s[0], 1)))
        tree_play(s, aux, move)
        if record:
            trail[1 + nrec] = move
            nrec += 1
    if record:
        trail[0] = nrec
    return tree_value(s, aux)


@njit(cache=True)
def tree_max_branching(aux):
    best = 0
    for i in range(int(aux[0])):
        best = max(best, int(_rec(aux, i, 1)))
    return best


def empty_aux():
    return np.zeros(1, dtype=np.float64)
