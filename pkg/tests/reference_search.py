"""Object-based MCTS written directly from the selection rules.

It consumes random numbers in the same canonical order as the compiled
search (a draw only for a real tie, playouts through the game's own
playout routine), so trajectories can be compared step for step.
"""

import math

from asymmcts.games import Player, random_playout, reward


class RefNode:
    __slots__ = ("state", "move", "w", "t", "children", "is_max")

    def __init__(self, state, move, is_max):
        self.state = state
        self.move = move
        self.is_max = is_max
        self.w = 0.0
        self.t = 0
        self.children = None


def uct_rule(c):
    return lambda is_root, is_max: ("ucb", c)


def asymmetric_rule(c_r, c_s):
    return lambda is_root, is_max: ("sqrt", c_s) if is_max else ("ucb", c_r)


def sr_cr_rule(c_r, c_s):
    return lambda is_root, is_max: ("sqrt", c_s) if is_root else ("ucb", c_r)


def sqrt_everywhere_rule(c_s):
    return lambda is_root, is_max: ("sqrt", c_s)


def _pick(items, rng):
    if len(items) == 1:
        return items[0]
    return items[int(rng.integers(0, len(items)))]


def reference_search(game, root_state, rule, playouts, rng):
    """Returns (root node, trace) with trace rows (moves, root-player result)."""
    root_mover = game.to_move(root_state)

    def first_value(state):
        if game.scalar_valued:
            return game.terminal_value(state)
        return reward(game.outcome(state), Player.FIRST)

    def expand(node):
        mover_is_root = game.to_move(node.state) == root_mover
        node.is_max = mover_is_root
        node.children = []
        for m in game.legal_moves(node.state):
            node.children.append(RefNode(game.apply(node.state, m), m, None))

    def select(node, is_root):
        fresh = [c for c in node.children if c.t == 0]
        if fresh:
            return _pick(fresh, rng)
        kind, c = rule(is_root, node.is_max)
        scores = []
        for ch in node.children:
            bonus = math.log(node.t) if kind == "ucb" else math.sqrt(node.t)
            scores.append(ch.w + c * math.sqrt(bonus / ch.t))
        top = max(scores)
        return _pick([ch for ch, s in zip(node.children, scores) if s == top], rng)

    root = RefNode(root_state, None, True)
    expand(root)
    trace = []
    for _ in range(playouts):
        path = [root]
        node = root
        while True:
            child = select(node, node is root)
            path.append(child)
            if child.t == 0:
                result = random_playout(game, child.state, rng)
                v = result if game.scalar_valued else reward(result, Player.FIRST)
                break
            if game.is_terminal(child.state):
                v = first_value(child.state)
                break
            if child.children is None:
                expand(child)
            node = child
        v_root = v if root_mover == Player.FIRST else 1.0 - v
        for i, n in enumerate(path):
            r = v_root if i == 0 or path[i - 1].is_max else 1.0 - v_root
            n.w = (n.w * n.t + r) / (n.t + 1)
            n.t += 1
        trace.append((tuple(n.move for n in path[1:]), v_root))
    return root, trace
