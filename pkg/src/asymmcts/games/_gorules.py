"""Compiled 9x9 board kernels shared by Go and NoGo.

A position is a flat ``int64`` vector. The board uses an 11x11 padded
layout (one ring of EDGE cells) so neighbour lookups never bounds-check.
Groups are tracked incrementally: every stone stores the root point of its
group, stones of a group form a circular linked list, and each root keeps
pseudo-liberty statistics (count, sum and sum of squares of liberty
points). A group has exactly one real liberty iff ``count * sumsq ==
sum**2``.
"""

import numpy as np
from numba import njit

N = 9
W = N + 2
SIZE = W * W
NPOINTS = N * N
PASS = NPOINTS

EMPTY, BLACK, WHITE, EDGE = 0, 1, 2, 3

# header slots
TO_MOVE = 0
PASSES = 1
MOVES = 2
HASH = 3
N_EMPTY = 4
EYE_FILTER = 5
KOMI2 = 6
HIST_N = 7
MAX_MOVES = 8
HEADER = 16

BOARD = HEADER
GID = BOARD + SIZE
GNEXT = GID + SIZE
GLIBS = GNEXT + SIZE
GLSUM = GLIBS + SIZE
GLSQ = GLSUM + SIZE
GSIZE = GLSQ + SIZE
GHASH = GSIZE + SIZE
EMPTIES = GHASH + SIZE
EPOS = EMPTIES + NPOINTS
HIST = EPOS + SIZE
HIST_SLOTS = 1024
HIST_MASK = HIST_SLOTS - 1
STATE_LEN = HIST + HIST_SLOTS

GO_MAX_MOVES = 3 * NPOINTS

DIRS = np.array([1, -1, W, -W], dtype=np.int64)
DIAGS = np.array([W + 1, W - 1, -W + 1, -W - 1], dtype=np.int64)

MOVE2PT = np.array([(m // N + 1) * W + (m % N + 1) for m in range(NPOINTS)], dtype=np.int64)
PT2MOVE = np.full(SIZE, -1, dtype=np.int64)
PT2MOVE[MOVE2PT] = np.arange(NPOINTS)

ZOBRIST = np.random.default_rng(0x9090).integers(1, 2**62, size=(3, SIZE), dtype=np.int64)


def new_board(eye_filter=True, komi=6.5, max_moves=GO_MAX_MOVES):
    s = np.zeros(STATE_LEN, dtype=np.int64)
    s[EYE_FILTER] = 1 if eye_filter else 0
    s[KOMI2] = int(round(2 * komi))
    s[MAX_MOVES] = max_moves
    s[BOARD:BOARD + SIZE] = EDGE
    s[GID:GID + SIZE] = -1
    for i, p in enumerate(MOVE2PT):
        s[BOARD + p] = EMPTY
        s[EMPTIES + i] = p
        s[EPOS + p] = i
    s[N_EMPTY] = NPOINTS
    _hist_add(s, s[HASH])
    return s


# -- superko ledger: open addressing over hash values ------------------------

@njit(cache=True)
def _hist_key(h):
    return h if h != 0 else 1


@njit(cache=True)
def _hist_has(s, h):
    k = _hist_key(h)
    i = k & HIST_MASK
    while s[HIST + i] != 0:
        if s[HIST + i] == k:
            return True
        i = (i + 1) & HIST_MASK
    return False


@njit(cache=True)
def _hist_add(s, h):
    k = _hist_key(h)
    i = k & HIST_MASK
    while s[HIST + i] != 0:
        if s[HIST + i] == k:
            return
        i = (i + 1) & HIST_MASK
    s[HIST + i] = k
    s[HIST_N] += 1


# -- groups -------------------------------------------------------------------

@njit(cache=True)
def _single_lib(s, g):
    n = s[GLIBS + g]
    return n > 0 and n * s[GLSQ + g] == s[GLSUM + g] * s[GLSUM + g]


@njit(cache=True)
def _remove_empty(s, p):
    i = s[EPOS + p]
    n = s[N_EMPTY] - 1
    last = s[EMPTIES + n]
    s[EMPTIES + i] = last
    s[EPOS + last] = i
    s[N_EMPTY] = n


@njit(cache=True)
def _add_empty(s, p):
    n = s[N_EMPTY]
    s[EMPTIES + n] = p
    s[EPOS + p] = n
    s[N_EMPTY] = n + 1


@njit(cache=True)
def _merge(s, a, b):
    if s[GSIZE + a] < s[GSIZE + b]:
        a, b = b, a
    q = b
    while True:
        s[GID + q] = a
        q = s[GNEXT + q]
        if q == b:
            break
    na = s[GNEXT + a]
    s[GNEXT + a] = s[GNEXT + b]
    s[GNEXT + b] = na
    s[GLIBS + a] += s[GLIBS + b]
    s[GLSUM + a] += s[GLSUM + b]
    s[GLSQ + a] += s[GLSQ + b]
    s[GSIZE + a] += s[GSIZE + b]
    s[GHASH + a] ^= s[GHASH + b]


@njit(cache=True)
def _remove_group(s, g):
    color = s[BOARD + g]
    q = g
    while True:
        s[BOARD + q] = EMPTY
        s[HASH] ^= ZOBRIST[color, q]
        _add_empty(s, q)
        q = s[GNEXT + q]
        if q == g:
            break
    count = 0
    q = g
    while True:
        count += 1
        for d in DIRS:
            n = q + d
            v = s[BOARD + n]
            if v == BLACK or v == WHITE:
                r = s[GID + n]
                s[GLIBS + r] += 1
                s[GLSUM + r] += q
                s[GLSQ + r] += q * q
        nxt = s[GNEXT + q]
        s[GID + q] = -1
        q = nxt
        if q == g:
            break
    return count


@njit(cache=True)
def place(s, p, color):
    """Put a stone on empty point ``p``, resolving merges and captures."""
    other = 3 - color
    z = ZOBRIST[color, p]
    s[BOARD + p] = color
    _remove_empty(s, p)
    s[HASH] ^= z
    s[GID + p] = p
    s[GNEXT + p] = p
    s[GSIZE + p] = 1
    s[GHASH + p] = z
    libs = 0
    lsum = 0
    lsq = 0
    for d in DIRS:
        q = p + d
        v = s[BOARD + q]
        if v == EMPTY:
            libs += 1
            lsum += q
            lsq += q * q
        elif v == BLACK or v == WHITE:
            g = s[GID + q]
            s[GLIBS + g] -= 1
            s[GLSUM + g] -= p
            s[GLSQ + g] -= p * p
    s[GLIBS + p] = libs
    s[GLSUM + p] = lsum
    s[GLSQ + p] = lsq
    for d in DIRS:
        q = p + d
        if s[BOARD + q] == color:
            g = s[GID + q]
            r = s[GID + p]
            if g != r:
                _merge(s, r, g)
    captured = 0
    for d in DIRS:
        q = p + d
        if s[BOARD + q] == other:
            g = s[GID + q]
            if s[GLIBS + g] == 0:
                captured += _remove_group(s, g)
    return captured


# -- Go rules -----------------------------------------------------------------

@njit(cache=True)
def go_point_legal(s, p, color):
    """No suicide, no recreation of an earlier whole-board position."""
    if s[BOARD + p] != EMPTY:
        return False
    other = 3 - color
    ok = False
    cap_hash = 0
    seen0 = -1
    seen1 = -1
    seen2 = -1
    for d in DIRS:
        q = p + d
        v = s[BOARD + q]
        if v == EMPTY:
            ok = True
        elif v == color:
            if not _single_lib(s, s[GID + q]):
                ok = True
        elif v == other:
            g = s[GID + q]
            if _single_lib(s, g):
                ok = True
                if g != seen0 and g != seen1 and g != seen2:
                    cap_hash ^= s[GHASH + g]
                    if seen0 < 0:
                        seen0 = g
                    elif seen1 < 0:
                        seen1 = g
                    else:
                        seen2 = g
    if not ok:
        return False
    return not _hist_has(s, s[HASH] ^ ZOBRIST[color, p] ^ cap_hash)


@njit(cache=True)
def is_true_eye(s, p, color):
    for d in DIRS:
        v = s[BOARD + p + d]
        if v != color and v != EDGE:
            return False
    enemy = 0
    at_edge = False
    for d in DIAGS:
        v = s[BOARD + p + d]
        if v == EDGE:
            at_edge = True
        elif v == 3 - color:
            enemy += 1
    if at_edge:
        return enemy == 0
    return enemy <= 1


@njit(cache=True)
def go_terminal(s):
    return s[PASSES] >= 2 or s[MOVES] >= s[MAX_MOVES]


@njit(cache=True)
def go_legal(s, out):
    if go_terminal(s):
        return 0
    color = s[TO_MOVE] + 1
    n = 0
    for m in range(NPOINTS):
        if go_point_legal(s, MOVE2PT[m], color):
            out[n] = m
            n += 1
    out[n] = PASS
    return n + 1


@njit(cache=True)
def _go_play_pt(s, p):
    if p < 0:
        s[PASSES] += 1
    else:
        place(s, p, s[TO_MOVE] + 1)
        s[PASSES] = 0
        _hist_add(s, s[HASH])
    s[TO_MOVE] ^= 1
    s[MOVES] += 1


@njit(cache=True)
def go_play(s, move):
    if move == PASS:
        _go_play_pt(s, -1)
    else:
        _go_play_pt(s, MOVE2PT[move])


@njit(cache=True)
def area(s):
    """(black_area, white_area) under area scoring."""
    black = 0
    white = 0
    seen = np.zeros(SIZE, dtype=np.bool_)
    stack = np.empty(NPOINTS, dtype=np.int64)
    for m in range(NPOINTS):
        p = MOVE2PT[m]
        v = s[BOARD + p]
        if v == BLACK:
            black += 1
        elif v == WHITE:
            white += 1
        elif not seen[p]:
            seen[p] = True
            stack[0] = p
            top = 1
            size = 0
            touch_b = False
            touch_w = False
            while top > 0:
                top -= 1
                q = stack[top]
                size += 1
                for d in DIRS:
                    r = q + d
                    u = s[BOARD + r]
                    if u == EMPTY:
                        if not seen[r]:
                            seen[r] = True
                            stack[top] = r
                            top += 1
                    elif u == BLACK:
                        touch_b = True
                    elif u == WHITE:
                        touch_w = True
            if touch_b and not touch_w:
                black += size
            elif touch_w and not touch_b:
                white += size
    return black, white


@njit(cache=True)
def go_value(s):
    b, w = area(s)
    return 1.0 if 2 * (b - w) > s[KOMI2] else 0.0


@njit(cache=True)
def go_playout(s, rng, trail):
    record = trail.shape[0] > 0
    nrec = 0
    buf = np.empty(NPOINTS, dtype=np.int64)
    eye_filter = s[EYE_FILTER] != 0
    while not go_terminal(s):
        color = s[TO_MOVE] + 1
        n = s[N_EMPTY]
        for i in range(n):
            buf[i] = s[EMPTIES + i]
        chosen = -1
        while n > 0:
            i = rng.integers(0, n)
            p = buf[i]
            if not (eye_filter and is_true_eye(s, p, color)) and go_point_legal(s, p, color):
                chosen = p
                break
            n -= 1
            buf[i] = buf[n]
        _go_play_pt(s, chosen)
        if record:
            trail[1 + nrec] = PASS if chosen < 0 else PT2MOVE[chosen]
            nrec += 1
    if record:
        trail[0] = nrec
    return go_value(s)


# -- NoGo rules ---------------------------------------------------------------

@njit(cache=True)
def nogo_point_legal(s, p, color):
    """Neither captures nor commits suicide."""
    if s[BOARD + p] != EMPTY:
        return False
    other = 3 - color
    safe = False
    for d in DIRS:
        q = p + d
        v = s[BOARD + q]
        if v == EMPTY:
            safe = True
        elif v == color:
            if not _single_lib(s, s[GID + q]):
                safe = True
        elif v == other:
            if _single_lib(s, s[GID + q]):
                return False
    return safe


@njit(cache=True)
def nogo_terminal(s):
    color = s[TO_MOVE] + 1
    for i in range(s[N_EMPTY]):
        if nogo_point_legal(s, s[EMPTIES + i], color):
            return False
    return True


@njit(cache=True)
def nogo_legal(s, out):
    color = s[TO_MOVE] + 1
    n = 0
    for m in range(NPOINTS):
        if nogo_point_legal(s, MOVE2PT[m], color):
            out[n] = m
            n += 1
    return n


@njit(cache=True)
def nogo_play(s, move):
    place(s, MOVE2PT[move], s[TO_MOVE] + 1)
    s[TO_MOVE] ^= 1
    s[MOVES] += 1


@njit(cache=True)
def nogo_value(s):
    # the player to move has no legal point and loses
    return 0.0 if s[TO_MOVE] == 0 else 1.0


@njit(cache=True)
def nogo_playout(s, rng, trail):
    record = trail.shape[0] > 0
    nrec = 0
    buf = np.empty(NPOINTS, dtype=np.int64)
    while True:
        color = s[TO_MOVE] + 1
        n = s[N_EMPTY]
        for i in range(n):
            buf[i] = s[EMPTIES + i]
        chosen = -1
        while n > 0:
            i = rng.integers(0, n)
            p = buf[i]
            if nogo_point_legal(s, p, color):
                chosen = p
                break
            n -= 1
            buf[i] = buf[n]
        if chosen < 0:
            break
        place(s, chosen, color)
        s[TO_MOVE] ^= 1
        s[MOVES] += 1
        if record:
            trail[1 + nrec] = PT2MOVE[chosen]
            nrec += 1
    if record:
        trail[0] = nrec
    return nogo_value(s)


# -- consistency checks used by tests ----------------------------------------

@njit(cache=True)
def recompute_hash(s):
    h = 0
    for m in range(NPOINTS):
        p = MOVE2PT[m]
        v = s[BOARD + p]
        if v == BLACK or v == WHITE:
            h ^= ZOBRIST[v, p]
    return h


@njit(cache=True)
def check_invariants(s):
    """0 if the incremental structures agree with a from-scratch scan.

    Otherwise a code naming the first broken invariant: 1 hash, 2 a group
    without liberties, 3 liberty statistics, 4 group membership, 5 empty list.
    """
    if recompute_hash(s) != s[HASH]:
        return 1
    seen = np.zeros(SIZE, dtype=np.bool_)
    libmark = np.zeros(SIZE, dtype=np.int64)
    stack = np.empty(NPOINTS, dtype=np.int64)
    stamp = 0
    n_empty = 0
    for m in range(NPOINTS):
        p = MOVE2PT[m]
        v = s[BOARD + p]
        if v == EMPTY:
            n_empty += 1
            if s[EMPTIES + s[EPOS + p]] != p:
                return 5
            continue
        if seen[p]:
            continue
        stamp += 1
        root = s[GID + p]
        seen[p] = True
        stack[0] = p
        top = 1
        size = 0
        real_libs = 0
        plibs = 0
        lsum = 0
        lsq = 0
        while top > 0:
            top -= 1
            q = stack[top]
            size += 1
            if s[GID + q] != root:
                return 4
            for d in DIRS:
                r = q + d
                u = s[BOARD + r]
                if u == EMPTY:
                    plibs += 1
                    lsum += r
                    lsq += r * r
                    if libmark[r] != stamp:
                        libmark[r] = stamp
                        real_libs += 1
                elif u == v and not seen[r]:
                    seen[r] = True
                    stack[top] = r
                    top += 1
        if real_libs == 0:
            return 2
        if s[GSIZE + root] != size:
            return 4
        if s[GLIBS + root] != plibs or s[GLSUM + root] != lsum or s[GLSQ + root] != lsq:
            return 3
    if n_empty != s[N_EMPTY]:
        return 5
    return 0
