import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynpat import build_index
from dynpat._tree import WINDOW
from dynpat.oracle import min_partition_size
from dynpat.partition import (
    Counters,
    NodePool,
    Piece,
    empty_tree,
    from_pieces,
    greedy_partition,
    is_maximal,
    join,
    locate,
    occurrences,
    repair_seam,
    split_at,
)
from dynpat.text_index import EMPTY, SuffixRange, sr_fast

from conftest import FIG1

WORKED_T = b"cababaa"
WORKED_PIECES = [b"ab", b"c", b"aa", b"b", b"b"]


def piece(idx, s: bytes) -> Piece:
    rng = sr_fast(idx, s)
    if rng.empty:
        assert len(s) == 1
        return Piece(1, EMPTY, s[0])
    return Piece(len(s), rng)


def tree_of(idx, strings, pool=None):
    return from_pieces(idx, [piece(idx, s) for s in strings], pool)


@pytest.fixture
def worked():
    idx = build_index(WORKED_T)
    return idx, tree_of(idx, WORKED_PIECES)


def test_tree_spells_its_pieces(worked):
    idx, t = worked
    assert t.piece_strings() == WORKED_PIECES
    assert t.pattern() == b"abcaabb"
    assert len(t) == 5 and t.length == 7


def test_locate(worked):
    idx, t = worked
    assert locate(t, 4) == (2, 1)
    assert t.piece_strings()[2] == b"aa"
    assert locate(t, 0) == (0, 0)
    idx2 = build_index(b"aabcaba")
    assert locate(tree_of(idx2, [b"aba", b"aba"]), 3) == (1, 0)


def test_locate_out_of_range(worked):
    _, t = worked
    with pytest.raises(IndexError):
        locate(t, 7)


def test_split_inside_a_piece(worked):
    idx, t = worked
    left, right = split_at(idx, t, 4)
    assert left.piece_strings() == [b"ab", b"c", b"a"]
    assert right.piece_strings() == [b"a", b"b", b"b"]
    for part in (left, right):
        for p, s in zip(part.pieces(), part.piece_strings()):
            assert p.range == sr_fast(idx, s)


def test_split_at_ends(worked):
    idx, t = worked
    left, right = split_at(idx, t, 0)
    assert len(left) == 0 and right.root == t.root
    left, right = split_at(idx, t, t.length)
    assert left.root == t.root and len(right) == 0


def test_split_on_boundary():
    idx = build_index(b"aabcaba")
    left, right = split_at(idx, tree_of(idx, [b"aba", b"aba"]), 3)
    assert left.piece_strings() == [b"aba"]
    assert right.piece_strings() == [b"aba"]


def test_join():
    idx = build_index(b"aabcaba")
    pool = NodePool(idx)
    t = tree_of(idx, [b"ab", b"c"], pool)
    assert join(empty_tree(idx, pool), t).piece_strings() == [b"ab", b"c"]
    assert join(tree_of(idx, [b"ab"], pool), tree_of(idx, [b"c"], pool)).piece_strings() == [b"ab", b"c"]
    joined = join(tree_of(idx, [b"aba"], pool), tree_of(idx, [b"aba"], pool))
    assert joined.piece_strings() == [b"aba", b"aba"]
    assert b"abaaba" not in b"aabcaba"
    assert is_maximal(idx, joined)


def test_join_needs_one_pool():
    idx = build_index(b"ab")
    with pytest.raises(ValueError):
        join(tree_of(idx, [b"a"]), tree_of(idx, [b"b"]))


def test_repair_merges_a_split_piece(worked):
    idx, t = worked
    left, right = split_at(idx, t, 4)
    rejoined = join(left, right)
    assert rejoined.piece_strings() == [b"ab", b"c", b"a", b"a", b"b", b"b"]
    assert not is_maximal(idx, rejoined)
    counters = Counters()
    fixed = repair_seam(idx, rejoined, 3, counters)
    assert fixed.piece_strings() == WORKED_PIECES
    assert counters.merges == 1
    assert is_maximal(idx, fixed)


def test_repair_leaves_maximal_tree_alone(worked):
    idx, t = worked
    for boundary in range(len(t) + 1):
        counters = Counters()
        out = repair_seam(idx, t, boundary, counters)
        assert out.piece_strings() == WORKED_PIECES
        assert counters.merges == 0
        assert counters.concat_calls <= 2 * WINDOW - 1


def test_repair_single_piece(fig1):
    t = tree_of(fig1, [b"aba"])
    counters = Counters()
    assert repair_seam(fig1, t, 1, counters).piece_strings() == [b"aba"]
    assert counters.concat_calls == 0


def test_occurrences(fig1):
    t = from_pieces(fig1, [Piece(3, SuffixRange(2, 6))])
    assert occurrences(t) == 4
    idx = build_index(WORKED_T)
    assert occurrences(tree_of(idx, [b"ab", b"cabab", b"b"])) == 0
    assert occurrences(empty_tree(fig1)) == len(FIG1) + 1


def test_lone_alien_piece_never_occurs(fig1):
    assert occurrences(tree_of(fig1, [b"z"])) == 0


def test_dump_lists_pieces(worked):
    idx, t = worked
    lines = t.dump().splitlines()
    assert len(lines) == 5
    assert lines[0].split()[0] == "2" and lines[0].split()[3] == "-"


def test_greedy_example():
    idx = build_index(b"aabcaba")
    t = greedy_partition(idx, b"abaaba")
    assert t.piece_strings() == [b"aba", b"aba"]


def test_compaction_preserves_content(worked):
    idx, t = worked
    left, right = split_at(idx, t, 4)
    t2 = join(left, right)
    c = t2.compacted()
    assert c.pool is not t2.pool
    assert c.piece_strings() == t2.piece_strings()
    assert c.pool.used <= len(t2) + 1


pairs = st.integers(1, 4).flatmap(
    lambda k: st.tuples(
        st.binary(min_size=1, max_size=300).map(lambda b: bytes(97 + x % k for x in b)),
        st.binary(min_size=0, max_size=100).map(lambda b: bytes(97 + x % (k + 1) for x in b)),
    )
)


@given(pairs)
def test_greedy_partition_is_minimal(pair):
    text, pattern = pair
    idx = build_index(text)
    t = greedy_partition(idx, pattern)
    assert t.pattern() == pattern
    assert len(t) == min_partition_size(text, pattern)
    assert is_maximal(idx, t)


@given(pairs, st.data())
def test_split_then_join_roundtrip(pair, data):
    text, pattern = pair
    idx = build_index(text)
    t = greedy_partition(idx, pattern)
    i = data.draw(st.integers(0, len(pattern)))
    left, right = split_at(idx, t, i)
    assert left.pattern() == pattern[:i]
    assert right.pattern() == pattern[i:]
    assert join(left, right).pattern() == pattern
    # the original version is untouched
    assert t.pattern() == pattern
