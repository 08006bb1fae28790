"""Monte-Carlo tree search with node-type dependent bandit indices.

Three selection schemes share one select / expand / simulate /
backpropagate loop:

* ``UCT``: the UCB index with ``c_r`` at every node;
* ``SR_CR``: the UCB-sqrt index with ``c_s`` at the root only, UCB below;
* ``ASYMMETRIC``: UCB-sqrt with ``c_s`` wherever the root player chooses
  (MAX nodes), UCB with ``c_r`` wherever the opponent chooses (MIN nodes).

Each node stores its mean reward from the point of view of the player who
chose it, so argmax selection is correct at both node types. A node is
expanded the second time it is reached; its first visit runs a uniformly
random playout from it. The search itself is one compiled loop
(:func:`_search`) that runs directly on the game kernels.
"""

import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np
from numba import njit

from .bandit import ucb_index, ucb_sqrt_index
from .games import _dispatch as kern
from .games.base import GameInterface, GameState


class NodeType(IntEnum):
    MAX = 0
    MIN = 1


class Scheme(IntEnum):
    UCT = 0
    SR_CR = 1
    ASYMMETRIC = 2


class Recommend(IntEnum):
    ROBUST = 0
    MAX_MEAN = 1


_SCHEME_NAMES = {"uct": Scheme.UCT, "sr_cr": Scheme.SR_CR, "srcr": Scheme.SR_CR,
                 "asymmetric": Scheme.ASYMMETRIC, "asym": Scheme.ASYMMETRIC}


@dataclass(frozen=True)
class SearchScheme:
    kind: Scheme
    c_r: float
    c_s: float = 0.0

    def __post_init__(self):
        if not self.c_r > 0:
            raise ValueError("c_r must be positive")
        if self.kind != Scheme.UCT and not self.c_s > 0:
            raise ValueError(f"{self.kind.name} needs a positive c_s")

    @classmethod
    def uct(cls, c: float) -> "SearchScheme":
        return cls(Scheme.UCT, c)

    @classmethod
    def sr_cr(cls, c_r: float, c_s: float) -> "SearchScheme":
        return cls(Scheme.SR_CR, c_r, c_s)

    @classmethod
    def asymmetric(cls, c_r: float, c_s: float) -> "SearchScheme":
        return cls(Scheme.ASYMMETRIC, c_r, c_s)

    @classmethod
    def parse(cls, name: str, c_r: float, c_s: float = 0.0) -> "SearchScheme":
        key = name.strip().lower().replace("-", "_").replace("+", "_")
        if key not in _SCHEME_NAMES:
            raise ValueError(f"unknown scheme {name!r}; use uct, sr_cr or asymmetric")
        return cls(_SCHEME_NAMES[key], c_r, c_s)

    def describe(self) -> str:
        if self.kind == Scheme.UCT:
            return f"uct(c={self.c_r:g})"
        return f"{self.kind.name.lower()}(c_r={self.c_r:g}, c_s={self.c_s:g})"


def node_type_of(depth: int, single_agent: bool = False) -> NodeType:
    if single_agent or depth % 2 == 0:
        return NodeType.MAX
    return NodeType.MIN


@dataclass
class SearchNode:
    node_type: NodeType
    w: float = 0.0
    t: int = 0
    move: int = -1
    children: list = field(default_factory=list)
    expanded: bool = False
    depth: int = 0


@njit(cache=True)
def uses_sqrt_index(scheme, parent_is_root, parent_is_max):
    if scheme == 2:
        return parent_is_max
    if scheme == 1:
        return parent_is_root
    return False


def child_index(node: SearchNode, child: SearchNode, scheme: SearchScheme) -> float:
    """Selection priority of ``child`` below ``node``; unvisited children rank first."""
    if child.t == 0:
        return math.inf
    if uses_sqrt_index(int(scheme.kind), node.depth == 0, node.node_type == NodeType.MAX):
        return ucb_sqrt_index(child.w, child.t, node.t, scheme.c_s)
    return ucb_index(child.w, child.t, node.t, scheme.c_r)


def backpropagate(path, result: float):
    """Fold one playout result (root player's view) into every node on ``path``.

    A child of a MIN node was chosen by the opponent and stores ``1 - result``.
    """
    for i, node in enumerate(path):
        r = result
        if i > 0 and path[i - 1].node_type == NodeType.MIN:
            r = 1.0 - result
        node.w = (node.w * node.t + r) / (node.t + 1)
        node.t += 1
    return path


# -- compiled search loop -----------------------------------------------------

@njit(cache=True)
def _select(node, first, nchild, w, t, ntype, scores, scheme, c_r, c_s, rng):
    f = first[node]
    n = nchild[node]
    fresh = 0
    for i in range(n):
        if t[f + i] == 0:
            fresh += 1
    if fresh > 0:
        k = 0 if fresh == 1 else rng.integers(0, fresh)
        for i in range(n):
            if t[f + i] == 0:
                if k == 0:
                    return f + i
                k -= 1
    sqrt_index = uses_sqrt_index(scheme, node == 0, ntype[node] == 0)
    parent_t = t[node]
    top = -np.inf
    for i in range(n):
        c = f + i
        if sqrt_index:
            v = ucb_sqrt_index(w[c], t[c], parent_t, c_s)
        else:
            v = ucb_index(w[c], t[c], parent_t, c_r)
        scores[i] = v
        if v > top:
            top = v
    ties = 0
    for i in range(n):
        if scores[i] == top:
            ties += 1
    k = 0 if ties == 1 else rng.integers(0, ties)
    for i in range(n):
        if scores[i] == top:
            if k == 0:
                return f + i
            k -= 1
    return -1


@njit(cache=True)
def _search(kind, root, aux, scheme, c_r, c_s, playouts, rng, recommend, trace_depth):
    maxb = kern.max_branching(kind, aux)
    cap = 1 + maxb * (playouts + 1)
    w = np.zeros(cap)
    t = np.zeros(cap, dtype=np.int64)
    first = np.zeros(cap, dtype=np.int64)
    nchild = np.full(cap, -1, dtype=np.int64)
    move = np.full(cap, -1, dtype=np.int64)
    chooser = np.zeros(cap, dtype=np.int8)
    ntype = np.zeros(cap, dtype=np.int8)
    movebuf = np.empty(maxb + 1, dtype=np.int64)
    scores = np.empty(maxb + 1)
    no_trail = np.zeros(0, dtype=np.int64)
    ntrace = playouts if trace_depth > 0 else 0
    trace_nodes = np.full((ntrace, max(trace_depth, 1)), -1, dtype=np.int64)
    trace_len = np.zeros(ntrace, dtype=np.int64)
    trace_value = np.zeros(ntrace)

    root_mover = kern.to_move(kind, root, aux)
    s = root.copy()
    count = 1
    chooser[0] = root_mover
    # expand the root
    n = kern.legal(kind, s, aux, movebuf)
    first[0] = count
    nchild[0] = n
    ntype[0] = 0
    for i in range(n):
        move[count + i] = movebuf[i]
        chooser[count + i] = root_mover
    count += n

    path = np.empty(cap if cap < 100000 else 100000, dtype=np.int64)
    for it in range(playouts):
        s[:] = root
        path[0] = 0
        plen = 1
        node = 0
        while True:
            c = _select(node, first, nchild, w, t, ntype, scores, scheme, c_r, c_s, rng)
            kern.play(kind, s, aux, move[c])
            path[plen] = c
            plen += 1
            if t[c] == 0:
                v = kern.playout(kind, s, aux, rng, no_trail)
                break
            if kern.terminal(kind, s, aux):
                v = kern.value(kind, s, aux)
                break
            if nchild[c] < 0:
                mover = kern.to_move(kind, s, aux)
                n = kern.legal(kind, s, aux, movebuf)
                if n == 0:
                    raise ValueError("non-terminal state without legal moves")
                first[c] = count
                nchild[c] = n
                ntype[c] = 0 if mover == root_mover else 1
                for i in range(n):
                    move[count + i] = movebuf[i]
                    chooser[count + i] = mover
                count += n
            node = c
        for i in range(plen):
            nd = path[i]
            r = v if chooser[nd] == 0 else 1.0 - v
            w[nd] = (w[nd] * t[nd] + r) / (t[nd] + 1)
            t[nd] += 1
        if ntrace > 0:
            trace_len[it] = plen - 1
            for i in range(1, min(plen, trace_depth + 1)):
                trace_nodes[it, i - 1] = path[i]
            trace_value[it] = v if root_mover == 0 else 1.0 - v

    # recommendation among root children
    f = first[0]
    n = nchild[0]
    best = f
    for i in range(1, n):
        c = f + i
        if recommend == 0:
            better = t[c] > t[best] or (t[c] == t[best] and w[c] > w[best])
        else:
            better = w[c] > w[best] or (w[c] == w[best] and t[c] > t[best])
        if better:
            best = c
    ties = 0
    for i in range(n):
        c = f + i
        if t[c] == t[best] and w[c] == w[best]:
            ties += 1
    if ties > 1:
        k = rng.integers(0, ties)
        for i in range(n):
            c = f + i
            if t[c] == t[best] and w[c] == w[best]:
                if k == 0:
                    best = c
                    break
                k -= 1
    return (best, count, w[:count].copy(), t[:count].copy(), first[:count].copy(),
            nchild[:count].copy(), move[:count].copy(), ntype[:count].copy(),
            trace_nodes, trace_len, trace_value)


# -- Python surface -----------------------------------------------------------

@dataclass
class SearchTree:
    """Array view of a finished search tree (node 0 is the root)."""

    w: np.ndarray
    t: np.ndarray
    first: np.ndarray
    nchild: np.ndarray
    move: np.ndarray
    ntype: np.ndarray

    def __len__(self):
        return len(self.w)

    def children(self, node: int) -> range:
        n = self.nchild[node]
        return range(self.first[node], self.first[node] + max(n, 0))

    def to_nodes(self, max_depth=None) -> SearchNode:
        """Materialise the tree as linked :class:`SearchNode` objects."""
        root = self._node(0, 0)
        stack = [(0, root)]
        while stack:
            idx, obj = stack.pop()
            if max_depth is not None and obj.depth >= max_depth:
                continue
            for c in self.children(idx):
                child = self._node(c, obj.depth + 1)
                obj.children.append(child)
                stack.append((c, child))
        return root

    def _node(self, idx: int, depth: int) -> SearchNode:
        return SearchNode(NodeType(int(self.ntype[idx])), float(self.w[idx]), int(self.t[idx]),
                          int(self.move[idx]), [], bool(self.nchild[idx] >= 0), depth)


@dataclass
class SearchResult:
    best_move: int
    root_children_stats: list  # (move, w, t) per root child
    playouts_used: int
    tree: SearchTree
    trace: list = None  # (moves along the path, node ids, result for the root player)

    def child_stats(self, move):
        for m, w, t in self.root_children_stats:
            if m == move:
                return w, t
        raise KeyError(move)


def run_search(game: GameInterface, root_state: GameState, scheme: SearchScheme, playouts: int,
               rng: np.random.Generator, recommend=Recommend.ROBUST, trace: bool = False) -> SearchResult:
    """Run ``playouts`` iterations from ``root_state`` and recommend a move.

    The recommendation is the most-visited root child (ties: higher mean,
    then random) or, with ``Recommend.MAX_MEAN``, the best mean.
    """
    if playouts < 1:
        raise ValueError("need at least one playout")
    if game.is_terminal(root_state):
        raise ValueError("cannot search from a terminal state")
    depth = game.max_game_length + 2 if trace else 0
    (best, _count, w, t, first, nchild, move, ntype,
     tnodes, tlen, tval) = _search(game.kind, root_state.data, game.aux, int(scheme.kind),
                                   float(scheme.c_r), float(scheme.c_s or 1.0), int(playouts), rng,
                                   int(Recommend(recommend)), depth)
    tree = SearchTree(w, t, first, nchild, move, ntype)
    stats = [(int(move[c]), float(w[c]), int(t[c])) for c in tree.children(0)]
    trace_rows = None
    if trace:
        trace_rows = []
        for it in range(playouts):
            nodes = tuple(tnodes[it, :min(tlen[it], depth)].tolist())
            trace_rows.append((tuple(int(move[n]) for n in nodes), nodes, float(tval[it])))
    return SearchResult(int(move[best]), stats, playouts, tree, trace_rows)


def format_trace(game: GameInterface, result: SearchResult) -> str:
    """One line per iteration: the selected path and the backed-up result."""
    lines = []
    for i, (moves, _nodes, value) in enumerate(result.trace or ()):
        path = " ".join(game.format_move(m) for m in moves)
        lines.append(f"{i + 1}\t{path}\t{value:.6g}")
    return "\n".join(lines)
