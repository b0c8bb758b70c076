import random

from hypothesis import given
from hypothesis import strategies as st

from dynpat.oracle import (
    NaiveSession,
    brute_suffix_range,
    min_partition_size,
    naive_count,
    quadratic_count,
)

from conftest import FIG1


def test_counts():
    assert naive_count(FIG1, b"aba") == 4
    assert naive_count(FIG1, b"") == len(FIG1) + 1
    assert quadratic_count(FIG1, b"ababa") == 2
    assert naive_count(FIG1, b"ababa") == 2
    assert naive_count(b"ab", b"abc") == 0


@given(st.binary(max_size=500), st.binary(max_size=6))
def test_scan_agrees_with_quadratic(text, pattern):
    text = bytes(97 + b % 3 for b in text)
    pattern = bytes(97 + b % 3 for b in pattern)
    assert naive_count(text, pattern) == quadratic_count(text, pattern)


def test_session_edits():
    ns = NaiveSession(b"cababaa", b"abcaabb")
    assert ns.apply_op(("insert", 4, ord("b"))) == 0
    assert bytes(ns.pattern) == b"abcababb"
    assert ns.apply_op(("delsub", 3, 3)) == 0
    assert bytes(ns.pattern) == b"abcababb"
    ns = NaiveSession(FIG1, b"aba")
    ns.apply_op(("copy", 1, 3, 3))
    assert bytes(ns.pattern) == b"ababa"
    ns.apply_op(("move", 0, 2, 3))
    rest = b"ababa"[2:]
    assert bytes(ns.pattern) == rest[:3] + b"ab" + rest[3:]


def test_brute_range_and_partition_size():
    assert brute_suffix_range(FIG1, b"aba") == (2, 6)
    assert min_partition_size(b"cababaa", b"abcaabb") == 4
    assert min_partition_size(b"aabcaba", b"abaaba") == 2
    assert min_partition_size(b"abc", b"zz") == 2
    assert min_partition_size(b"abc", b"") == 0


def test_partition_size_against_enumeration():
    # exhaustive check of the dynamic program on tiny inputs
    rng = random.Random(2)
    for _ in range(200):
        text = bytes(rng.choice(b"ab") for _ in range(rng.randint(1, 6)))
        pattern = bytes(rng.choice(b"abz") for _ in range(rng.randint(0, 6)))
        assert min_partition_size(text, pattern) == _enumerate(text, pattern)


def _enumerate(text, pattern):
    m = len(pattern)
    best = m + 1 if m else 0
    for mask in range(1 << max(m - 1, 0)):
        cuts = [0] + [i + 1 for i in range(m - 1) if mask >> i & 1] + [m]
        parts = [pattern[a:b] for a, b in zip(cuts, cuts[1:])]
        if all(p in text or len(p) == 1 for p in parts):
            best = min(best, len(parts))
    return best
