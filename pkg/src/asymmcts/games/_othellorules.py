"""Compiled Othello kernels on 64-bit bitboards.

Square ``row * 8 + col`` maps to bit of the same index; row 0 is rank 1.
The state vector holds the two bitboards reinterpreted as ``int64``.
"""

import numpy as np
from numba import njit

BLACK_BB = 0
WHITE_BB = 1
TO_MOVE = 2
PASSES = 3
PLIES = 4
STATE_LEN = 5

PASS = 64
MAX_PLIES = 128

_U1 = np.uint64(1)
_FULL = np.uint64(0xFFFFFFFFFFFFFFFF)
_NOT_A = np.uint64(0xFEFEFEFEFEFEFEFE)
_NOT_H = np.uint64(0x7F7F7F7F7F7F7F7F)
_INNER = np.uint64(0x7E7E7E7E7E7E7E7E)

# (shift, mask applied to the opponent for that line direction)
_SHIFTS = np.array([1, 8, 7, 9], dtype=np.uint64)
_MASKS = np.array([_INNER, _FULL, _INNER, _INNER], dtype=np.uint64)

_DR = np.array([-1, -1, -1, 0, 0, 1, 1, 1], dtype=np.int64)
_DC = np.array([-1, 0, 1, -1, 1, -1, 0, 1], dtype=np.int64)


def new_board():
    s = np.zeros(STATE_LEN, dtype=np.int64)
    black = (1 << 28) | (1 << 35)  # e4, d5
    white = (1 << 27) | (1 << 36)  # d4, e5
    s[BLACK_BB] = black
    s[WHITE_BB] = white
    return s


@njit(cache=True)
def _u(x):
    return np.uint64(x)


@njit(cache=True)
def _i(x):
    return np.int64(x)


@njit(cache=True)
def popcount(x):
    n = 0
    while x:
        x &= x - _U1
        n += 1
    return n


@njit(cache=True)
def _sides(s):
    black = _u(s[BLACK_BB])
    white = _u(s[WHITE_BB])
    if s[TO_MOVE] == 0:
        return black, white
    return white, black


@njit(cache=True)
def move_mask(me, opp):
    """Bitboard of squares where ``me`` flips at least one disc."""
    empty = ~(me | opp)
    moves = np.uint64(0)
    for k in range(4):
        sh = _SHIFTS[k]
        m = opp & _MASKS[k]
        t = m & (me << sh)
        t |= m & (t << sh)
        t |= m & (t << sh)
        t |= m & (t << sh)
        t |= m & (t << sh)
        t |= m & (t << sh)
        moves |= t << sh
        t = m & (me >> sh)
        t |= m & (t >> sh)
        t |= m & (t >> sh)
        t |= m & (t >> sh)
        t |= m & (t >> sh)
        t |= m & (t >> sh)
        moves |= t >> sh
    return moves & empty


@njit(cache=True)
def flips(me, opp, sq):
    r0 = sq // 8
    c0 = sq % 8
    total = np.uint64(0)
    for k in range(8):
        r = r0 + _DR[k]
        c = c0 + _DC[k]
        line = np.uint64(0)
        while 0 <= r < 8 and 0 <= c < 8:
            b = _U1 << _u(r * 8 + c)
            if opp & b:
                line |= b
            elif me & b:
                total |= line
                break
            else:
                break
            r += _DR[k]
            c += _DC[k]
    return total


@njit(cache=True)
def othello_terminal(s):
    if s[PASSES] >= 2 or s[PLIES] >= MAX_PLIES:
        return True
    return (_u(s[BLACK_BB]) | _u(s[WHITE_BB])) == _FULL


@njit(cache=True)
def othello_legal(s, out):
    if othello_terminal(s):
        return 0
    me, opp = _sides(s)
    m = move_mask(me, opp)
    if m == 0:
        out[0] = PASS
        return 1
    n = 0
    for sq in range(64):
        if (m >> _u(sq)) & _U1:
            out[n] = sq
            n += 1
    return n


@njit(cache=True)
def othello_play(s, move):
    if move == PASS:
        s[PASSES] += 1
    else:
        me, opp = _sides(s)
        f = flips(me, opp, move)
        me |= f | (_U1 << _u(move))
        opp &= ~f
        if s[TO_MOVE] == 0:
            s[BLACK_BB] = _i(me)
            s[WHITE_BB] = _i(opp)
        else:
            s[WHITE_BB] = _i(me)
            s[BLACK_BB] = _i(opp)
        s[PASSES] = 0
    s[TO_MOVE] ^= 1
    s[PLIES] += 1


@njit(cache=True)
def disc_counts(s):
    return popcount(_u(s[BLACK_BB])), popcount(_u(s[WHITE_BB]))


@njit(cache=True)
def othello_value(s):
    b, w = disc_counts(s)
    if b > w:
        return 1.0
    if w > b:
        return 0.0
    return 0.5


@njit(cache=True)
def othello_playout(s, rng, trail):
    record = trail.shape[0] > 0
    nrec = 0
    while not othello_terminal(s):
        me, opp = _sides(s)
        m = move_mask(me, opp)
        if m == 0:
            move = PASS
        else:
            k = rng.integers(0, popcount(m))
            for _ in range(k):
                m &= m - _U1
            move = 0
            low = m & (~m + _U1)
            while low > _U1:
                low >>= _U1
                move += 1
        othello_play(s, move)
        if record:
            trail[1 + nrec] = move
            nrec += 1
    if record:
        trail[0] = nrec
    return othello_value(s)
