"""Persistent piece tree kernels.

Nodes live in one int64 matrix ``nodes[row, field]`` and are never modified
after creation; every update allocates fresh rows along the touched path
(path copying), so any old root keeps describing its own version. Row 0 is
the shared empty tree. ``meta`` holds the allocation cursor and the state of
a xorshift generator; ``stats`` accumulates concat calls and merges.

Joins pick the root of the left or right operand with probability
proportional to piece counts rather than stored priorities, which keeps
expected depth logarithmic even when one subtree is referenced from several
places (substring copy).
"""
import numpy as np

from ._accel import njit
from ._suffix import concat, drop_back, drop_front
from ._suffix import longest_prefix_match as _lpm

LEFT, RIGHT, LEN, LO, HI, ALIEN, TOT, CNT = range(8)
NFIELDS = 8
NIL = 0

USED, RNG = 0, 1
CONCATS, MERGES = 0, 1

MAX_DEPTH = 4096
WINDOW = 2


class PoolExhausted(Exception):
    pass


class TreeTooDeep(Exception):
    pass


def new_storage(capacity, seed=0x9E3779B9):
    nodes = np.zeros((max(capacity, 2), NFIELDS), dtype=np.int64)
    nodes[NIL, ALIEN] = -1
    meta = np.zeros(2, dtype=np.int64)
    meta[USED] = 1
    meta[RNG] = (seed & 0xFFFFFFFF) or 1
    return nodes, meta


@njit
def _rand(meta):
    x = meta[RNG]
    x ^= (x << 13) & 0xFFFFFFFF
    x ^= x >> 17
    x ^= (x << 5) & 0xFFFFFFFF
    meta[RNG] = x
    return x


@njit
def make_node(nodes, meta, left, right, length, lo, hi, alien):
    i = meta[USED]
    if i >= nodes.shape[0]:
        raise PoolExhausted()
    meta[USED] = i + 1
    nodes[i, LEFT] = left
    nodes[i, RIGHT] = right
    nodes[i, LEN] = length
    nodes[i, LO] = lo
    nodes[i, HI] = hi
    nodes[i, ALIEN] = alien
    nodes[i, TOT] = length + nodes[left, TOT] + nodes[right, TOT]
    nodes[i, CNT] = 1 + nodes[left, CNT] + nodes[right, CNT]
    return i


@njit
def _reparent(nodes, meta, src, left, right):
    return make_node(nodes, meta, left, right, nodes[src, LEN], nodes[src, LO],
                     nodes[src, HI], nodes[src, ALIEN])


@njit
def split_count(nodes, meta, t, k):
    """(first k pieces, remaining pieces)."""
    stack = np.empty(MAX_DEPTH, dtype=np.int64)
    goes_left = np.empty(MAX_DEPTH, dtype=np.bool_)
    d = 0
    while t != NIL:
        if d == MAX_DEPTH:
            raise TreeTooDeep()
        lc = nodes[nodes[t, LEFT], CNT]
        stack[d] = t
        if lc < k:
            goes_left[d] = True
            k -= lc + 1
            t = nodes[t, RIGHT]
        else:
            goes_left[d] = False
            t = nodes[t, LEFT]
        d += 1
    a = NIL
    b = NIL
    for q in range(d - 1, -1, -1):
        s = stack[q]
        if goes_left[q]:
            a = _reparent(nodes, meta, s, nodes[s, LEFT], a)
        else:
            b = _reparent(nodes, meta, s, b, nodes[s, RIGHT])
    return a, b


@njit
def join(nodes, meta, a, b):
    stack = np.empty(MAX_DEPTH, dtype=np.int64)
    from_a = np.empty(MAX_DEPTH, dtype=np.bool_)
    d = 0
    while a != NIL and b != NIL:
        if d == MAX_DEPTH:
            raise TreeTooDeep()
        ca = nodes[a, CNT]
        cb = nodes[b, CNT]
        if _rand(meta) % (ca + cb) < ca:
            stack[d] = a
            from_a[d] = True
            a = nodes[a, RIGHT]
        else:
            stack[d] = b
            from_a[d] = False
            b = nodes[b, LEFT]
        d += 1
    cur = a if a != NIL else b
    for q in range(d - 1, -1, -1):
        s = stack[q]
        if from_a[q]:
            cur = _reparent(nodes, meta, s, nodes[s, LEFT], cur)
        else:
            cur = _reparent(nodes, meta, s, cur, nodes[s, RIGHT])
    return cur


@njit
def locate(nodes, t, pos):
    """(piece index, offset, row) of the piece covering pattern position ``pos``."""
    k = 0
    while True:
        left = nodes[t, LEFT]
        lt = nodes[left, TOT]
        if pos < lt:
            t = left
        elif pos < lt + nodes[t, LEN]:
            return k + nodes[left, CNT], pos - lt, t
        else:
            pos -= lt + nodes[t, LEN]
            k += nodes[left, CNT] + 1
            t = nodes[t, RIGHT]


@njit
def piece_row(nodes, t, k):
    while True:
        left = nodes[t, LEFT]
        lc = nodes[left, CNT]
        if k < lc:
            t = left
        elif k == lc:
            return t
        else:
            k -= lc + 1
            t = nodes[t, RIGHT]


@njit
def prefix_length(nodes, t, k):
    """Total symbol length of the first ``k`` pieces."""
    total = 0
    while t != NIL and k > 0:
        left = nodes[t, LEFT]
        lc = nodes[left, CNT]
        if k <= lc:
            t = left
        else:
            total += nodes[left, TOT] + nodes[t, LEN]
            k -= lc + 1
            t = nodes[t, RIGHT]
    return total


@njit
def split_pos(ix, nodes, meta, t, pos):
    """Cut the pattern at symbol position ``pos``, dividing a piece if needed."""
    if pos <= 0:
        return NIL, t
    if pos >= nodes[t, TOT]:
        return t, NIL
    k, off, row = locate(nodes, t, pos)
    if off == 0:
        return split_count(nodes, meta, t, k)
    length = nodes[row, LEN]
    lo = nodes[row, LO]
    a, rest = split_count(nodes, meta, t, k)
    _, c = split_count(nodes, meta, rest, 1)
    llo, lhi = drop_back(ix, length, lo, length - off)
    rlo, rhi = drop_front(ix, length, lo, off)
    head = make_node(nodes, meta, NIL, NIL, off, llo, lhi, -1)
    tail = make_node(nodes, meta, NIL, NIL, length - off, rlo, rhi, -1)
    return join(nodes, meta, a, head), join(nodes, meta, tail, c)


@njit
def _collect(nodes, t, lens, los, his, aliens):
    """In-order pieces of a small subtree into the given buffers."""
    stack = np.empty(MAX_DEPTH, dtype=np.int64)
    d = 0
    k = 0
    while t != NIL or d > 0:
        while t != NIL:
            stack[d] = t
            d += 1
            t = nodes[t, LEFT]
        d -= 1
        t = stack[d]
        lens[k] = nodes[t, LEN]
        los[k] = nodes[t, LO]
        his[k] = nodes[t, HI]
        aliens[k] = nodes[t, ALIEN]
        k += 1
        t = nodes[t, RIGHT]
    return k


@njit
def repair(ix, nodes, meta, stats, t, pos):
    """Merge adjacent pieces near pattern position ``pos`` until none can merge.

    The window spans the two pieces on each side of the seam at ``pos``;
    boundaries are tried nearest-first. A pair that failed to merge stays
    failed when either side grows, so each boundary is tested once.
    """
    cnt = nodes[t, CNT]
    if cnt < 2:
        return t
    if pos >= nodes[t, TOT]:
        b = cnt
    else:
        b, _, _ = locate(nodes, t, pos)
    lo = max(0, b - WINDOW)
    hi = min(cnt, b + WINDOW)
    if hi - lo < 2:
        return t
    size = 2 * WINDOW
    lens = np.empty(size, dtype=np.int64)
    los = np.empty(size, dtype=np.int64)
    his = np.empty(size, dtype=np.int64)
    aliens = np.empty(size, dtype=np.int64)
    m = hi - lo
    # read the window in place; the tree is only cut if something merges
    for r in range(m):
        row = piece_row(nodes, t, lo + r)
        lens[r] = nodes[row, LEN]
        los[r] = nodes[row, LO]
        his[r] = nodes[row, HI]
        aliens[r] = nodes[row, ALIEN]
    failed = np.zeros(size, dtype=np.bool_)
    seam = pos - prefix_length(nodes, t, lo)
    while True:
        best = -1
        best_dist = 0
        acc = 0
        for q in range(1, m):
            acc += lens[q - 1]
            if failed[q]:
                continue
            dist = abs(acc - seam)
            if best == -1 or dist < best_dist:
                best = q
                best_dist = dist
        if best == -1:
            break
        p = best - 1
        q = best
        if aliens[p] >= 0 or aliens[q] >= 0:
            failed[q] = True
            continue
        stats[CONCATS] += 1
        nlo, nhi = concat(ix, lens[p], los[p], his[p], los[q], his[q])
        if nhi <= nlo:
            failed[q] = True
            continue
        stats[MERGES] += 1
        lens[p] += lens[q]
        los[p] = nlo
        his[p] = nhi
        for r in range(q, m - 1):
            lens[r] = lens[r + 1]
            los[r] = los[r + 1]
            his[r] = his[r + 1]
            aliens[r] = aliens[r + 1]
            failed[r] = failed[r + 1]
        m -= 1
    if m == hi - lo:
        return t
    a, rest = split_count(nodes, meta, t, lo)
    _, c = split_count(nodes, meta, rest, hi - lo)
    for r in range(m):
        leaf = make_node(nodes, meta, NIL, NIL, lens[r], los[r], his[r], aliens[r])
        a = join(nodes, meta, a, leaf)
    return join(nodes, meta, a, c)


@njit
def build(nodes, meta, lens, los, his, aliens):
    """Perfectly balanced tree over the given pieces, O(m)."""
    m = lens.shape[0]
    if m == 0:
        return NIL
    base = meta[USED]
    if base + m > nodes.shape[0]:
        raise PoolExhausted()
    meta[USED] = base + m
    for p in range(m):
        row = base + p
        nodes[row, LEN] = lens[p]
        nodes[row, LO] = los[p]
        nodes[row, HI] = his[p]
        nodes[row, ALIEN] = aliens[p]
    st_l = np.empty(128, dtype=np.int64)
    st_r = np.empty(128, dtype=np.int64)
    st_s = np.empty(128, dtype=np.int64)
    st_l[0] = 0
    st_r[0] = m
    st_s[0] = 0
    d = 1
    while d > 0:
        l = st_l[d - 1]
        r = st_r[d - 1]
        mid = (l + r) // 2
        if st_s[d - 1] == 0:
            st_s[d - 1] = 1
            if l < mid:
                st_l[d] = l
                st_r[d] = mid
                st_s[d] = 0
                d += 1
        elif st_s[d - 1] == 1:
            st_s[d - 1] = 2
            if mid + 1 < r:
                st_l[d] = mid + 1
                st_r[d] = r
                st_s[d] = 0
                d += 1
        else:
            d -= 1
            row = base + mid
            left = base + (l + mid) // 2 if l < mid else NIL
            right = base + (mid + 1 + r) // 2 if mid + 1 < r else NIL
            nodes[row, LEFT] = left
            nodes[row, RIGHT] = right
            nodes[row, TOT] = nodes[row, LEN] + nodes[left, TOT] + nodes[right, TOT]
            nodes[row, CNT] = 1 + nodes[left, CNT] + nodes[right, CNT]
    return base + m // 2


@njit
def pieces_of(nodes, t):
    m = nodes[t, CNT]
    lens = np.empty(m, dtype=np.int64)
    los = np.empty(m, dtype=np.int64)
    his = np.empty(m, dtype=np.int64)
    aliens = np.empty(m, dtype=np.int64)
    _collect(nodes, t, lens, los, his, aliens)
    return lens, los, his, aliens


@njit
def height(nodes, t):
    stack = np.empty(MAX_DEPTH, dtype=np.int64)
    depth = np.empty(MAX_DEPTH, dtype=np.int64)
    if t == NIL:
        return 0
    stack[0] = t
    depth[0] = 1
    d = 1
    best = 0
    while d > 0:
        d -= 1
        s = stack[d]
        h = depth[d]
        if h > best:
            best = h
        for child in (nodes[s, LEFT], nodes[s, RIGHT]):
            if child != NIL:
                stack[d] = child
                depth[d] = h + 1
                d += 1
    return best


@njit
def compact(nodes, t, out, out_meta):
    """Copy the DAG reachable from ``t`` into ``out``, keeping shared subtrees shared."""
    memo = np.full(nodes.shape[0], -1, dtype=np.int64)
    memo[NIL] = NIL
    stack = np.empty(MAX_DEPTH, dtype=np.int64)
    stack[0] = t
    d = 1
    while d > 0:
        s = stack[d - 1]
        if memo[s] >= 0:
            d -= 1
            continue
        left = nodes[s, LEFT]
        right = nodes[s, RIGHT]
        if memo[left] < 0:
            stack[d] = left
            d += 1
            continue
        if memo[right] < 0:
            stack[d] = right
            d += 1
            continue
        d -= 1
        memo[s] = make_node(out, out_meta, memo[left], memo[right], nodes[s, LEN],
                            nodes[s, LO], nodes[s, HI], nodes[s, ALIEN])
    return memo[t]


@njit
def greedy_pieces(ix, pat):
    """Partition by repeatedly taking the longest prefix that occurs."""
    plen = pat.shape[0]
    lens = np.empty(plen, dtype=np.int64)
    los = np.empty(plen, dtype=np.int64)
    his = np.empty(plen, dtype=np.int64)
    aliens = np.empty(plen, dtype=np.int64)
    m = 0
    p = 0
    while p < plen:
        length, lo, hi = _lpm(ix, pat, p, plen - p)
        if length == 0:
            lens[m] = 1
            los[m] = 0
            his[m] = 0
            aliens[m] = pat[p]
            p += 1
        else:
            lens[m] = length
            los[m] = lo
            his[m] = hi
            aliens[m] = -1
            p += length
        m += 1
    return lens[:m].copy(), los[:m].copy(), his[:m].copy(), aliens[:m].copy()


# --------------------------------------------------------------------------
# edit operations, one kernel call each
# --------------------------------------------------------------------------

@njit
def op_insert(ix, nodes, meta, stats, t, pos, symbol, lo, hi):
    a, b = split_pos(ix, nodes, meta, t, pos)
    if hi > lo:
        leaf = make_node(nodes, meta, NIL, NIL, 1, lo, hi, -1)
    else:
        leaf = make_node(nodes, meta, NIL, NIL, 1, 0, 0, symbol)
    t = join(nodes, meta, join(nodes, meta, a, leaf), b)
    t = repair(ix, nodes, meta, stats, t, pos)
    return repair(ix, nodes, meta, stats, t, pos + 1)


@njit
def op_delete(ix, nodes, meta, stats, t, i, j):
    if j <= i:
        return t
    a, rest = split_pos(ix, nodes, meta, t, i)
    _, c = split_pos(ix, nodes, meta, rest, j - i)
    t = join(nodes, meta, a, c)
    return repair(ix, nodes, meta, stats, t, i)


@njit
def op_move(ix, nodes, meta, stats, t, i, j, k):
    if j <= i:
        return t
    a, rest = split_pos(ix, nodes, meta, t, i)
    x, c = split_pos(ix, nodes, meta, rest, j - i)
    r = repair(ix, nodes, meta, stats, join(nodes, meta, a, c), i)
    r1, r2 = split_pos(ix, nodes, meta, r, k)
    t = join(nodes, meta, join(nodes, meta, r1, x), r2)
    t = repair(ix, nodes, meta, stats, t, k)
    return repair(ix, nodes, meta, stats, t, k + j - i)


@njit
def op_copy(ix, nodes, meta, stats, t, i, j, k):
    if j <= i:
        return t
    _, rest = split_pos(ix, nodes, meta, t, i)
    x, _ = split_pos(ix, nodes, meta, rest, j - i)
    r1, r2 = split_pos(ix, nodes, meta, t, k)
    t = join(nodes, meta, join(nodes, meta, r1, x), r2)
    t = repair(ix, nodes, meta, stats, t, k)
    return repair(ix, nodes, meta, stats, t, k + j - i)
