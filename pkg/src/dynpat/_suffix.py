"""Suffix-array kernels: construction, LCP, range minimum and range searches.

Index arrays travel through the kernels as one tuple,
``ix = (text, sa, isa, lcp, table, lg, block)``:

text   uint8[n]     the text
sa     int64[n]     suffix array
isa    int64[n]     inverse suffix array
lcp    int64[n-1]   lcp of adjacent suffixes (at least one slot is kept)
table  int32[k, m]  sparse table over lcp (block == 1) or over block minima
lg     int64[m+1]   floor(log2) lookup
block  int          1 for a plain sparse table, otherwise the block width

Ranges are half-open ``(lo, hi)`` pairs; ``(0, 0)`` means "does not occur".
"""
import numpy as np

from ._accel import njit

# --------------------------------------------------------------------------
# SA-IS, after the sentinel-free formulation used in the AtCoder library.
# The recursion lives in Python; each level's linear passes are kernels.
# --------------------------------------------------------------------------

_NAIVE_THRESHOLD = 10


@njit
def _induce(s, ls, sum_l, sum_s, lms, sa):
    n = s.shape[0]
    sa[:] = -1
    buf = sum_s.copy()
    for d in lms:
        if d == n:
            continue
        sa[buf[s[d]]] = d
        buf[s[d]] += 1
    buf[:] = sum_l
    sa[buf[s[n - 1]]] = n - 1
    buf[s[n - 1]] += 1
    for i in range(n):
        v = sa[i]
        if v >= 1 and not ls[v - 1]:
            sa[buf[s[v - 1]]] = v - 1
            buf[s[v - 1]] += 1
    buf[:] = sum_l
    for i in range(n - 1, -1, -1):
        v = sa[i]
        if v >= 1 and ls[v - 1]:
            buf[s[v - 1] + 1] -= 1
            sa[buf[s[v - 1] + 1]] = v - 1


@njit
def _sais_reduce(s, upper):
    """First induced sort; returns the state needed to recurse."""
    n = s.shape[0]
    ls = np.zeros(n, dtype=np.bool_)
    for i in range(n - 2, -1, -1):
        if s[i] == s[i + 1]:
            ls[i] = ls[i + 1]
        else:
            ls[i] = s[i] < s[i + 1]
    sum_l = np.zeros(upper + 2, dtype=np.int64)
    sum_s = np.zeros(upper + 2, dtype=np.int64)
    for i in range(n):
        if not ls[i]:
            sum_s[s[i]] += 1
        else:
            sum_l[s[i] + 1] += 1
    for i in range(upper + 1):
        sum_s[i] += sum_l[i]
        if i < upper:
            sum_l[i + 1] += sum_s[i]

    lms_map = np.full(n + 1, -1, dtype=np.int64)
    m = 0
    for i in range(1, n):
        if not ls[i - 1] and ls[i]:
            lms_map[i] = m
            m += 1
    lms = np.empty(m, dtype=np.int64)
    m = 0
    for i in range(1, n):
        if not ls[i - 1] and ls[i]:
            lms[m] = i
            m += 1

    sa = np.empty(n, dtype=np.int64)
    _induce(s, ls, sum_l, sum_s, lms, sa)

    rec_s = np.zeros(m, dtype=np.int64)
    rec_upper = 0
    if m > 0:
        sorted_lms = np.empty(m, dtype=np.int64)
        k = 0
        for v in sa:
            if lms_map[v] != -1:
                sorted_lms[k] = v
                k += 1
        rec_s[lms_map[sorted_lms[0]]] = 0
        for i in range(1, m):
            left = sorted_lms[i - 1]
            right = sorted_lms[i]
            end_l = lms[lms_map[left] + 1] if lms_map[left] + 1 < m else n
            end_r = lms[lms_map[right] + 1] if lms_map[right] + 1 < m else n
            same = True
            if end_l - left != end_r - right:
                same = False
            else:
                while left < end_l:
                    if s[left] != s[right]:
                        break
                    left += 1
                    right += 1
                if left == n or s[left] != s[right]:
                    same = False
            if not same:
                rec_upper += 1
            rec_s[lms_map[sorted_lms[i]]] = rec_upper
    return sa, ls, sum_l, sum_s, lms, rec_s, rec_upper


@njit
def _sais_finish(s, ls, sum_l, sum_s, lms, rec_sa):
    m = lms.shape[0]
    sorted_lms = np.empty(m, dtype=np.int64)
    for i in range(m):
        sorted_lms[i] = lms[rec_sa[i]]
    sa = np.empty(s.shape[0], dtype=np.int64)
    _induce(s, ls, sum_l, sum_s, sorted_lms, sa)
    return sa


def sais(s, upper):
    """Suffix array of integer sequence ``s`` with symbols in ``[0, upper]``."""
    n = len(s)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    if n < _NAIVE_THRESHOLD:
        seq = [int(v) for v in s]
        return np.array(sorted(range(n), key=lambda i: seq[i:]), dtype=np.int64)
    s = np.ascontiguousarray(s, dtype=np.int64)
    sa, ls, sum_l, sum_s, lms, rec_s, rec_upper = _sais_reduce(s, upper)
    if lms.shape[0] == 0:
        return sa
    rec_sa = sais(rec_s, int(rec_upper))
    return _sais_finish(s, ls, sum_l, sum_s, lms, rec_sa)


def prefix_doubling(text):
    """O(n log^2 n) vectorised construction; numpy only."""
    n = len(text)
    rank = np.asarray(text, dtype=np.int64)
    k = 1
    while True:
        nxt = np.full(n, -1, dtype=np.int64)
        if k < n:
            nxt[: n - k] = rank[k:]
        sa = np.lexsort((nxt, rank))
        key_a, key_b = rank[sa], nxt[sa]
        diff = np.empty(n, dtype=np.int64)
        diff[0] = 0
        diff[1:] = (key_a[1:] != key_a[:-1]) | (key_b[1:] != key_b[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.cumsum(diff)
        rank = new_rank
        if rank[sa[-1]] == n - 1 or k >= n:
            return sa.astype(np.int64)
        k *= 2


@njit
def kasai(text, sa, isa):
    n = text.shape[0]
    lcp = np.zeros(max(n - 1, 1), dtype=np.int64)
    h = 0
    for i in range(n):
        r = isa[i]
        if r == n - 1:
            h = 0
            continue
        j = sa[r + 1]
        while i + h < n and j + h < n and text[i + h] == text[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return lcp


def sparse_table(values):
    """Rows ``t[k, i] = min(values[i : i + 2**k])``, built with numpy."""
    m = max(len(values), 1)
    levels = max(m.bit_length(), 1)
    table = np.zeros((levels, m), dtype=np.int32)
    table[0, : len(values)] = values
    width = 1
    for k in range(1, levels):
        span = m - 2 * width + 1
        if span <= 0:
            break
        table[k, :span] = np.minimum(table[k - 1, :span], table[k - 1, width:width + span])
        width *= 2
    lg = np.zeros(m + 1, dtype=np.int64)
    for k in range(1, levels + 1):
        lg[1 << (k - 1):] = k - 1
    return table, lg


def block_minima(lcp, block):
    m = len(lcp)
    pad = (-m) % block
    padded = np.concatenate([lcp, np.full(pad, np.iinfo(np.int32).max, dtype=np.int64)])
    return padded.reshape(-1, block).min(axis=1)


# --------------------------------------------------------------------------
# queries
# --------------------------------------------------------------------------

@njit
def rmq(ix, i, j):
    """min(lcp[i:j]) for i < j."""
    lcp = ix[3]
    table = ix[4]
    lg = ix[5]
    block = ix[6]
    if block == 1:
        k = lg[j - i]
        a = table[k, i]
        b = table[k, j - (1 << k)]
        return a if a < b else b
    bi = (i + block - 1) // block
    bj = j // block
    best = lcp[i]
    if bi >= bj:
        for t in range(i, j):
            if lcp[t] < best:
                best = lcp[t]
        return best
    for t in range(i, bi * block):
        if lcp[t] < best:
            best = lcp[t]
    for t in range(bj * block, j):
        if lcp[t] < best:
            best = lcp[t]
    k = lg[bj - bi]
    a = table[k, bi]
    b = table[k, bj - (1 << k)]
    if a < best:
        best = a
    if b < best:
        best = b
    return best


@njit
def lcp_ranks(ix, a, b):
    """lcp of the suffixes at ranks ``a`` and ``b``."""
    if a == b:
        return ix[1].shape[0] - ix[1][a]
    if a > b:
        a, b = b, a
    return rmq(ix, a, b)


@njit
def lcp_positions(ix, i, j):
    isa = ix[2]
    return lcp_ranks(ix, isa[i], isa[j])


@njit
def extend_range(ix, rank, length):
    """Maximal rank interval around ``rank`` sharing its first ``length`` symbols."""
    n = ix[1].shape[0]
    if length <= 0:
        return 0, n
    # gallop outwards, then bisect; cost is logarithmic in the range width
    step = 1
    inner = rank
    outer = rank - 1
    while outer >= 0 and rmq(ix, outer, rank) >= length:
        inner = outer
        step *= 2
        outer = rank - step
    lo = outer + 1 if outer >= 0 else 0
    hi = inner
    while lo < hi:
        mid = (lo + hi) // 2
        if rmq(ix, mid, rank) >= length:
            hi = mid
        else:
            lo = mid + 1
    first = lo

    step = 1
    inner = rank
    outer = rank + 1
    while outer < n and rmq(ix, rank, outer) >= length:
        inner = outer
        step *= 2
        outer = rank + step
    lo = inner + 1
    hi = outer if outer < n else n
    while lo < hi:
        mid = (lo + hi) // 2
        if rmq(ix, rank, mid) >= length:
            lo = mid + 1
        else:
            hi = mid
    return first, lo


@njit
def match_from(text, pos, pat, start, plen, k):
    """Extend a known common prefix of length ``k`` between pat[start:] and text[pos:]."""
    n = text.shape[0]
    while k < plen and pos + k < n and pat[start + k] == text[pos + k]:
        k += 1
    return k


@njit
def _pattern_le_suffix(text, pos, pat, start, plen):
    k = match_from(text, pos, pat, start, plen, 0)
    if k == plen:
        return True
    if pos + k == text.shape[0]:
        return False
    return pat[start + k] < text[pos + k]


@njit
def _pattern_below_suffix(text, pos, pat, start, plen):
    # suffix's first plen symbols compare strictly greater than the pattern
    k = match_from(text, pos, pat, start, plen, 0)
    if k == plen or pos + k == text.shape[0]:
        return False
    return pat[start + k] < text[pos + k]


@njit
def sr_slow(ix, pat, start, plen):
    """Two plain binary searches with direct string comparison, O(|P| log n)."""
    text = ix[0]
    sa = ix[1]
    n = sa.shape[0]
    if match_from(text, sa[0], pat, start, plen, 0) == plen:
        first = 0
    else:
        lo = 0
        hi = n - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _pattern_le_suffix(text, sa[mid], pat, start, plen):
                hi = mid
            else:
                lo = mid
        if match_from(text, sa[hi], pat, start, plen, 0) < plen:
            return 0, 0
        first = hi
    lo = first
    hi = n
    while lo < hi:
        mid = (lo + hi) // 2
        if _pattern_below_suffix(text, sa[mid], pat, start, plen):
            hi = mid
        else:
            lo = mid + 1
    return first, lo


@njit
def sr_fast_search(ix, pat, start, plen):
    """Lower-bound search keeping the lcp of both fences, O(|P| + log n).

    Returns ``(lower, plcp, best)``: the first rank whose suffix is not
    smaller than the pattern, the length of the longest pattern prefix that
    occurs in the text, and a rank at which that prefix occurs.
    """
    text = ix[0]
    sa = ix[1]
    n = sa.shape[0]
    lcp_l = match_from(text, sa[0], pat, start, plen, 0)
    if lcp_l == plen:
        return 0, plen, 0
    lcp_r = match_from(text, sa[n - 1], pat, start, plen, 0)
    left = 0
    right = n - 1
    while right - left > 1:
        mid = (left + right) // 2
        if lcp_l >= lcp_r:
            x = rmq(ix, left, mid)
            if x < lcp_l:
                m = x
            else:
                m = match_from(text, sa[mid], pat, start, plen, lcp_l)
        else:
            x = rmq(ix, mid, right)
            if x < lcp_r:
                m = x
            else:
                m = match_from(text, sa[mid], pat, start, plen, lcp_r)
        pos = sa[mid]
        if m == plen or (pos + m < n and pat[start + m] < text[pos + m]):
            right = mid
            lcp_r = m
        else:
            left = mid
            lcp_l = m
    if lcp_l >= lcp_r:
        return right, lcp_l, left
    return right, lcp_r, right


@njit
def sr_fast(ix, pat, start, plen):
    lower, plcp, _ = sr_fast_search(ix, pat, start, plen)
    if plcp < plen:
        return 0, 0
    return extend_range(ix, lower, plen)


@njit
def longest_prefix_match(ix, pat, start, plen):
    """(length, lo, hi) of the longest prefix of pat[start:start+plen] in the text."""
    _, plcp, best = sr_fast_search(ix, pat, start, plen)
    if plcp == 0:
        return 0, 0, 0
    lo, hi = extend_range(ix, best, plcp)
    return plcp, lo, hi


# --------------------------------------------------------------------------
# range algebra
# --------------------------------------------------------------------------

@njit
def concat(ix, alen, alo, ahi, blo, bhi):
    """Range of A+B from the ranges of A and B, bisecting inside A's range.

    Both boundary searches share their steps until the probe lands inside
    B's range, as in an equal-range search.
    """
    sa = ix[1]
    isa = ix[2]
    n = sa.shape[0]
    lo = alo
    hi = ahi
    while lo < hi:
        mid = (lo + hi) // 2
        nxt = sa[mid] + alen
        key = -1 if nxt == n else isa[nxt]
        if key < blo:
            lo = mid + 1
        elif key >= bhi:
            hi = mid
        else:
            break
    if lo >= hi:
        return 0, 0
    top = hi
    hi = mid
    while lo < hi:
        m = (lo + hi) // 2
        nxt = sa[m] + alen
        if nxt == n or isa[nxt] < blo:
            lo = m + 1
        else:
            hi = m
    first = lo
    lo = mid + 1
    hi = top
    while lo < hi:
        m = (lo + hi) // 2
        nxt = sa[m] + alen
        if nxt == n or isa[nxt] < bhi:
            lo = m + 1
        else:
            hi = m
    return first, lo


@njit
def drop_front(ix, length, lo, k):
    sa = ix[1]
    isa = ix[2]
    return extend_range(ix, isa[sa[lo] + k], length - k)


@njit
def drop_back(ix, length, lo, k):
    return extend_range(ix, lo, length - k)
