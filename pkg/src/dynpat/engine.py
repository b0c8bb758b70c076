"""Editing session: a pattern bound to a text index, recounted after every edit."""
from __future__ import annotations

from dataclasses import dataclass

from . import _tree
from .partition import (
    Counters,
    NodePool,
    PartitionTree,
    Piece,
    from_pieces,
    greedy_partition,
    is_maximal,
    occurrences,
)
from .text_index import TextIndex, build_index, sr_fast

# per-edit slack in the node pool; a miss only costs a retry
_RESERVE = 1 << 14
# compact once dead versions outnumber live nodes this many times over
_COMPACT_RATIO = 8
_COMPACT_FLOOR = 1 << 20


@dataclass
class SessionStats:
    ops: int = 0
    concat_calls: int = 0
    merges: int = 0
    last_concat_calls: int = 0
    last_merges: int = 0
    max_char_edit_merges: int = 0
    max_substring_merges: int = 0


def _byte(c) -> int:
    if isinstance(c, (bytes, bytearray, str)):
        if len(c) != 1:
            raise ValueError(f"expected a single symbol, got {c!r}")
        c = c.encode("latin-1")[0] if isinstance(c, str) else c[0]
    c = int(c)
    if not 0 <= c < 256:
        raise ValueError(f"symbol {c} is not a byte")
    return c


class Session:
    """Maintains an occurrence partition of the current pattern.

    Every editing method returns the number of occurrences of the resulting
    pattern in the text. The empty pattern counts ``n + 1`` occurrences.
    Substring arguments are half-open ``[i, j)`` ranges of the pattern before
    the edit; a ``move`` destination ``k`` indexes the pattern with ``[i, j)``
    already removed.
    """

    def __init__(self, index: TextIndex | bytes | str, pattern: bytes | str = b"", *, seed: int = 0x9E3779B9):
        if not isinstance(index, TextIndex):
            index = build_index(index)
        self.index = index
        self.pool = NodePool(index, seed=seed)
        self.tree = PartitionTree(self.pool)
        self.stats = SessionStats()
        self._live = 1
        if pattern:
            self.set_pattern(pattern)

    # -- state -----------------------------------------------------------

    @property
    def length(self) -> int:
        return self.tree.length

    def pattern(self) -> bytes:
        return self.tree.pattern()

    def pieces(self):
        return self.tree.pieces()

    def piece_strings(self) -> list[bytes]:
        return self.tree.piece_strings()

    def snapshot(self) -> PartitionTree:
        """The current version; unaffected by later edits."""
        return self.tree

    def current_count(self) -> int:
        return occurrences(self.tree)

    # -- edits -----------------------------------------------------------

    def set_pattern(self, pattern: bytes | str) -> int:
        if isinstance(pattern, str):
            pattern = pattern.encode("latin-1")
        self.tree = greedy_partition(self.index, pattern, self.pool)
        self._live = len(self.tree) + 1
        self._record(Counters(), None)
        return self.current_count()

    def set_partition(self, pieces) -> int:
        """Adopt a caller-chosen partition, given as its piece strings.

        Every piece must occur in the text or be one absent byte, and no two
        neighbours may form a substring of the text.
        """
        parsed = []
        for raw in pieces:
            raw = raw.encode("latin-1") if isinstance(raw, str) else bytes(raw)
            if not raw:
                raise ValueError("empty piece")
            rng = sr_fast(self.index, raw)
            if rng.empty:
                if len(raw) != 1:
                    raise ValueError(f"piece {raw!r} does not occur in the text")
                parsed.append(Piece(1, rng, raw[0]))
            else:
                parsed.append(Piece(len(raw), rng))
        tree = from_pieces(self.index, parsed, self.pool)
        if not is_maximal(self.index, tree):
            raise ValueError("neighbouring pieces concatenate into a text substring")
        self.tree = tree
        self._live = len(tree) + 1
        self._record(Counters(), None)
        return self.current_count()

    def insert_char(self, i: int, c) -> int:
        self._check(0 <= i <= self.length, f"insert position {i} outside [0, {self.length}]")
        c = _byte(c)
        lo, hi = int(self.index.char_lo[c]), int(self.index.char_hi[c])
        return self._apply(_tree.op_insert, (i, c, lo, hi), "char")

    def delete_char(self, i: int) -> int:
        self._check(0 <= i < self.length, f"delete position {i} outside [0, {self.length})")
        return self._apply(_tree.op_delete, (i, i + 1), "char")

    def delete_substring(self, i: int, j: int) -> int:
        self._check(0 <= i <= j <= self.length, f"bad substring [{i}, {j}) of length {self.length}")
        return self._apply(_tree.op_delete, (i, j), "substring")

    def move_substring(self, i: int, j: int, k: int) -> int:
        self._check(0 <= i <= j <= self.length, f"bad substring [{i}, {j}) of length {self.length}")
        rest = self.length - (j - i)
        self._check(0 <= k <= rest, f"move destination {k} outside [0, {rest}]")
        return self._apply(_tree.op_move, (i, j, k), "substring")

    def copy_substring(self, i: int, j: int, k: int) -> int:
        self._check(0 <= i <= j <= self.length, f"bad substring [{i}, {j}) of length {self.length}")
        self._check(0 <= k <= self.length, f"copy destination {k} outside [0, {self.length}]")
        return self._apply(_tree.op_copy, (i, j, k), "substring")

    # -- plumbing --------------------------------------------------------

    @staticmethod
    def _check(ok: bool, message: str) -> None:
        if not ok:
            raise IndexError(message)

    def _apply(self, kernel, args, kind: str) -> int:
        ix = self.index.kernel_args
        root = self.tree.root
        counters = Counters()
        self.pool.reserve(_RESERVE)
        new_root = self.pool.run(
            lambda nodes, meta, stats: kernel(ix, nodes, meta, stats, root, *args), counters
        )
        self.tree = PartitionTree(self.pool, int(new_root))
        self._record(counters, kind)
        self._maybe_compact()
        return self.current_count()

    def _record(self, counters: Counters, kind: str | None) -> None:
        s = self.stats
        s.ops += 1
        s.concat_calls += counters.concat_calls
        s.merges += counters.merges
        s.last_concat_calls = counters.concat_calls
        s.last_merges = counters.merges
        if kind == "char":
            s.max_char_edit_merges = max(s.max_char_edit_merges, counters.merges)
        elif kind == "substring":
            s.max_substring_merges = max(s.max_substring_merges, counters.merges)

    def _maybe_compact(self) -> None:
        if self.pool.used < max(_COMPACT_FLOOR, _COMPACT_RATIO * self._live):
            return
        # older snapshots keep the previous pool alive and stay valid
        self.tree = self.tree.compacted()
        self.pool = self.tree.pool
        self._live = self.pool.used


def count_after_each(index: TextIndex, script) -> list[int]:
    """Run ``(name, *args)`` operations on a fresh session; collect the counts."""
    session = Session(index)
    return [apply(session, op) for op in script]


def apply(session: Session, op) -> int:
    name, *args = op
    method = {
        "search": session.set_pattern,
        "insert": session.insert_char,
        "delete": session.delete_char,
        "delsub": session.delete_substring,
        "move": session.move_substring,
        "copy": session.copy_substring,
        "count": session.current_count,
    }[name]
    return method(*args)

