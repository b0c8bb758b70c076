import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynpat import Session, build_index
from dynpat.engine import apply, count_after_each
from dynpat.oracle import NaiveSession, min_partition_size, naive_count
from dynpat.partition import is_maximal, occurrences
from dynpat.script import random_script, random_text

from conftest import ALPHABETS, FIG1

WORKED_T = b"cababaa"


def test_search_worked_pattern():
    s = Session(WORKED_T)
    assert s.set_pattern(b"abcaabb") == naive_count(WORKED_T, b"abcaabb") == 0
    # greedy search finds a minimum partition, one piece fewer than the
    # five-piece partition used in the worked example
    assert len(s.pieces()) == min_partition_size(WORKED_T, b"abcaabb") == 4
    assert s.set_partition([b"ab", b"c", b"aa", b"b", b"b"]) == 0
    assert s.piece_strings() == [b"ab", b"c", b"aa", b"b", b"b"]


def test_search_counts():
    assert Session(FIG1).set_pattern(b"aba") == 4
    s = Session(b"aabcaba")
    assert s.set_pattern(b"abaaba") == 0
    assert s.piece_strings() == [b"aba", b"aba"]


def test_insert_worked_example_from_listed_partition():
    s = Session(WORKED_T)
    s.set_partition([b"ab", b"c", b"aa", b"b", b"b"])
    assert s.insert_char(4, b"b") == 0
    assert s.piece_strings() == [b"ab", b"cabab", b"b"]
    assert s.stats.last_merges == 4


def test_insert_worked_example_from_greedy_partition():
    s = Session(WORKED_T, b"abcaabb")
    assert s.insert_char(4, b"b") == 0
    assert s.pattern() == b"abcababb"
    assert s.piece_strings() == [b"ab", b"cabab", b"b"]


def test_insert_completes_occurrence():
    s = Session(FIG1, b"ab")
    assert s.insert_char(2, "a") == naive_count(FIG1, b"aba") == 4


def test_insert_absent_symbol():
    s = Session(b"abcabc", b"abc")
    for i in range(4):
        t = Session(b"abcabc", b"abc")
        assert t.insert_char(i, b"z") == 0
    assert s.insert_char(0, b"z") == 0
    assert s.pieces()[0].alien == ord("z")


def test_delete_char_examples():
    s = Session(FIG1, b"abba")
    assert s.delete_char(2) == naive_count(FIG1, b"aba") == 4
    s = Session(FIG1, b"c")
    assert s.delete_char(0) == len(FIG1) + 1


def test_delete_inserted_symbol_restores_count():
    s = Session(WORKED_T, b"abcaabb")
    s.insert_char(4, b"b")
    assert s.delete_char(4) == Session(WORKED_T).set_pattern(b"abcaabb")
    assert s.pattern() == b"abcaabb"


def test_delete_substring_examples():
    s = Session(FIG1, b"abzzzba")
    assert s.delete_substring(2, 5) == naive_count(FIG1, b"abba") == 0
    s = Session(FIG1, b"aba")
    assert s.delete_substring(1, 1) == 4
    assert s.delete_substring(0, 3) == len(FIG1) + 1


def test_move_examples():
    s = Session(FIG1, b"baa")
    assert s.move_substring(0, 1, 2) == naive_count(FIG1, b"aab") == 0
    s = Session(FIG1, b"baa")
    assert s.move_substring(0, 1, 1) == naive_count(FIG1, b"aba") == 4
    assert s.move_substring(1, 2, 1) == 4
    assert s.move_substring(0, 3, 0) == 4
    assert s.pattern() == b"aba"


def test_copy_examples():
    s = Session(FIG1, b"aba")
    assert s.copy_substring(1, 3, 3) == naive_count(FIG1, b"ababa") == 2
    assert s.copy_substring(2, 2, 0) == 2
    s = Session(b"aabcaba", b"aba")
    assert s.copy_substring(0, 3, 3) == 0
    assert s.piece_strings() == [b"aba", b"aba"]


def test_current_count():
    s = Session(FIG1)
    assert s.current_count() == len(FIG1) + 1
    assert s.set_pattern(b"aba") == s.current_count() == 4
    assert s.insert_char(0, b"c") == s.current_count()


def test_bad_positions_raise_and_leave_state(fig1):
    s = Session(fig1, b"aba")
    for call in (lambda: s.insert_char(4, b"a"), lambda: s.delete_char(3),
                 lambda: s.delete_substring(2, 1), lambda: s.move_substring(0, 2, 2),
                 lambda: s.copy_substring(0, 4, 0), lambda: s.copy_substring(0, 1, 4)):
        with pytest.raises(IndexError):
            call()
    assert s.pattern() == b"aba" and s.current_count() == 4


def test_bad_symbol():
    s = Session(FIG1)
    with pytest.raises(ValueError):
        s.insert_char(0, b"ab")
    with pytest.raises(ValueError):
        s.insert_char(0, 300)


def test_set_partition_rejects_mergeable_neighbours():
    s = Session(WORKED_T)
    with pytest.raises(ValueError):
        s.set_partition([b"a", b"b"])
    with pytest.raises(ValueError):
        s.set_partition([b"zz"])


def test_snapshots_survive_edits():
    rng = random.Random(5)
    text = random_text(rng, 200, 3)
    s = Session(text)
    naive = NaiveSession(text)
    history = []
    for op in random_script(rng, text, 400):
        apply(s, op)
        naive.apply_op(op)
        history.append((s.snapshot(), bytes(naive.pattern), naive.count()))
    for snap, pattern, count in history:
        assert snap.pattern() == pattern
        assert occurrences(snap) == count


def test_copy_then_delete_restores_count():
    rng = random.Random(11)
    for _ in range(50):
        text = random_text(rng, rng.randint(5, 100), rng.choice(ALPHABETS))
        start = rng.randrange(len(text))
        pattern = text[start:start + rng.randint(1, 10)]
        s = Session(text, pattern)
        before = s.current_count()
        i = rng.randint(0, len(pattern))
        j = rng.randint(i, len(pattern))
        k = rng.randint(0, len(pattern))
        s.copy_substring(i, j, k)
        assert s.delete_substring(k, k + j - i) == before
        assert s.pattern() == pattern


def test_runs_are_deterministic():
    rng = random.Random(3)
    text = random_text(rng, 300, 2)
    script = random_script(rng, text, 500)
    idx = build_index(text)
    assert count_after_each(idx, script) == count_after_each(idx, script)


def test_compaction_keeps_state(monkeypatch):
    import dynpat.engine as engine
    monkeypatch.setattr(engine, "_COMPACT_FLOOR", 64)
    rng = random.Random(8)
    text = random_text(rng, 150, 2)
    s = Session(text)
    naive = NaiveSession(text)
    pools = set()
    old = []
    for op in random_script(rng, text, 600):
        assert apply(s, op) == naive.apply_op(op)
        pools.add(id(s.pool))
        old.append((s.snapshot(), bytes(naive.pattern)))
    assert len(pools) > 1
    assert all(snap.pattern() == p for snap, p in old)


scripts = st.tuples(
    st.sampled_from(ALPHABETS), st.integers(1, 60), st.integers(0, 2**32 - 1)
)


@given(scripts)
def test_matches_naive_and_stays_maximal(params):
    alphabet, size, seed = params
    rng = random.Random(seed)
    text = random_text(rng, size, alphabet)
    idx = build_index(text)
    s = Session(idx)
    naive = NaiveSession(text)
    for op in random_script(rng, text, 60, alien_rate=0.1, max_len=20):
        assert apply(s, op) == naive.apply_op(op), op
        assert s.pattern() == bytes(naive.pattern)
        assert sum(p.length for p in s.pieces()) == len(naive.pattern)
        assert is_maximal(idx, s.snapshot())


@given(scripts)
def test_merge_counts_stay_bounded(params):
    alphabet, size, seed = params
    rng = random.Random(seed)
    text = random_text(rng, size, alphabet)
    s = Session(text)
    for op in random_script(rng, text, 80, alien_rate=0.1):
        apply(s, op)
        if op[0] in ("insert", "delete"):
            assert s.stats.last_merges <= 4
        elif op[0] in ("delsub", "move", "copy"):
            assert s.stats.last_merges <= 12
