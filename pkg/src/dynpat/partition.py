"""Occurrence partitions stored in a persistent balanced tree.

A pattern is kept as a sequence of pieces, each either a substring of the
text (held by its length and suffix range) or a single byte that never
occurs in the text (an *alien* piece). Adjacent pieces never form a
substring of the text together, so the pattern occurs iff there is exactly
one non-alien piece.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import _tree
from .range_algebra import RangedString, concat
from .text_index import EMPTY, SuffixRange, TextIndex


class Piece(NamedTuple):
    length: int
    range: SuffixRange
    alien: int | None = None


@dataclass
class Counters:
    concat_calls: int = 0
    merges: int = 0

    def add(self, stats: np.ndarray) -> None:
        self.concat_calls += int(stats[_tree.CONCATS])
        self.merges += int(stats[_tree.MERGES])


class NodePool:
    """Append-only node storage shared by all versions built on one index.

    Rows are never rewritten, so a tree handle stays valid however the pool
    grows. A kernel that runs out of rows is rolled back and retried after
    the storage doubles; persistence makes the retry side-effect free.
    """

    def __init__(self, index: TextIndex, capacity: int = 1 << 12, seed: int = 0x9E3779B9):
        self.index = index
        self.nodes, self.meta = _tree.new_storage(capacity, seed)
        self._lock = threading.Lock()

    @property
    def used(self) -> int:
        return int(self.meta[_tree.USED])

    def reserve(self, extra: int) -> None:
        need = self.used + extra
        if need <= self.nodes.shape[0]:
            return
        size = self.nodes.shape[0]
        while size < need:
            size *= 2
        grown = np.zeros((size, _tree.NFIELDS), dtype=np.int64)
        grown[: self.used] = self.nodes[: self.used]
        self.nodes = grown

    def run(self, kernel: Callable, counters: Counters | None = None):
        """Call ``kernel(nodes, meta, stats)``, growing storage on exhaustion."""
        with self._lock:
            while True:
                saved = self.meta.copy()
                stats = np.zeros(2, dtype=np.int64)
                try:
                    out = kernel(self.nodes, self.meta, stats)
                except _tree.PoolExhausted:
                    self.meta[:] = saved
                    self.reserve(self.nodes.shape[0])
                    continue
                if counters is not None:
                    counters.add(stats)
                return out


@dataclass(frozen=True, eq=False)
class PartitionTree:
    """One immutable version of a partitioned pattern."""

    pool: NodePool
    root: int = _tree.NIL

    @property
    def index(self) -> TextIndex:
        return self.pool.index

    def __len__(self) -> int:
        return int(self.pool.nodes[self.root, _tree.CNT])

    @property
    def length(self) -> int:
        return int(self.pool.nodes[self.root, _tree.TOT])

    def pieces(self) -> list[Piece]:
        lens, los, his, aliens = _tree.pieces_of(self.pool.nodes, self.root)
        out = []
        for length, lo, hi, alien in zip(lens.tolist(), los.tolist(), his.tolist(), aliens.tolist()):
            if alien >= 0:
                out.append(Piece(length, EMPTY, alien))
            else:
                out.append(Piece(length, SuffixRange(lo, hi)))
        return out

    def piece_strings(self) -> list[bytes]:
        return [piece_text(self.index, p) for p in self.pieces()]

    def pattern(self) -> bytes:
        return b"".join(self.piece_strings())

    def height(self) -> int:
        return int(_tree.height(self.pool.nodes, self.root))

    def dump(self) -> str:
        """One ``length lo hi alien`` line per piece; alien is ``-`` when absent."""
        lines = []
        for p in self.pieces():
            alien = "-" if p.alien is None else str(p.alien)
            lines.append(f"{p.length} {p.range.lo} {p.range.hi} {alien}")
        return "".join(line + "\n" for line in lines)

    def compacted(self) -> PartitionTree:
        """Copy of this version into a fresh pool holding only its live nodes."""
        pool = NodePool(self.index, capacity=max(self.pool.used, 16))
        pool.meta[_tree.RNG] = self.pool.meta[_tree.RNG]
        root = _tree.compact(self.pool.nodes, self.root, pool.nodes, pool.meta)
        return PartitionTree(pool, int(root))


def piece_text(idx: TextIndex, piece: Piece) -> bytes:
    if piece.alien is not None:
        return bytes([piece.alien])
    start = int(idx.sa[piece.range.lo])
    return idx.text[start:start + piece.length].tobytes()


def empty_tree(idx: TextIndex, pool: NodePool | None = None) -> PartitionTree:
    return PartitionTree(pool or NodePool(idx))


def from_pieces(idx: TextIndex, pieces, pool: NodePool | None = None) -> PartitionTree:
    """Balanced tree over the given pieces; maximality is not checked."""
    pool = pool or NodePool(idx)
    pieces = list(pieces)
    lens = np.array([p.length for p in pieces], dtype=np.int64)
    los = np.array([p.range.lo for p in pieces], dtype=np.int64)
    his = np.array([p.range.hi for p in pieces], dtype=np.int64)
    aliens = np.array([-1 if p.alien is None else p.alien for p in pieces], dtype=np.int64)
    pool.reserve(len(pieces) + 1)
    root = pool.run(lambda nodes, meta, stats: _tree.build(nodes, meta, lens, los, his, aliens))
    return PartitionTree(pool, int(root))


def greedy_partition(idx: TextIndex, pattern: bytes, pool: NodePool | None = None) -> PartitionTree:
    """Minimum-size partition: repeatedly cut off the longest occurring prefix."""
    pool = pool or NodePool(idx)
    pat = np.frombuffer(bytes(pattern), dtype=np.uint8)
    lens, los, his, aliens = _tree.greedy_pieces(idx.kernel_args, pat)
    pool.reserve(lens.shape[0] + 1)
    root = pool.run(lambda nodes, meta, stats: _tree.build(nodes, meta, lens, los, his, aliens))
    return PartitionTree(pool, int(root))


def locate(t: PartitionTree, i: int) -> tuple[int, int]:
    """(piece index, offset inside that piece) for pattern position ``i``."""
    if not 0 <= i < t.length:
        raise IndexError(f"position {i} outside [0, {t.length})")
    k, off, _ = _tree.locate(t.pool.nodes, t.root, i)
    return int(k), int(off)


def split_at(idx: TextIndex, t: PartitionTree, i: int) -> tuple[PartitionTree, PartitionTree]:
    """Two versions holding ``pattern[:i]`` and ``pattern[i:]``."""
    if not 0 <= i <= t.length:
        raise IndexError(f"split position {i} outside [0, {t.length}]")
    _same_index(idx, t)
    a, b = t.pool.run(lambda nodes, meta, stats: _tree.split_pos(idx.kernel_args, nodes, meta, t.root, i))
    return PartitionTree(t.pool, int(a)), PartitionTree(t.pool, int(b))


def join(left: PartitionTree, right: PartitionTree) -> PartitionTree:
    """Concatenation of two versions; no merging is attempted."""
    if left.pool is not right.pool:
        raise ValueError("trees belong to different node pools")
    root = left.pool.run(lambda nodes, meta, stats: _tree.join(nodes, meta, left.root, right.root))
    return PartitionTree(left.pool, int(root))


def repair_seam(idx: TextIndex, t: PartitionTree, boundary: int,
                counters: Counters | None = None) -> PartitionTree:
    """Restore maximality around the seam before piece ``boundary``.

    Looks at two pieces on each side of the seam and merges neighbours whose
    concatenation occurs in the text until no pair in the window merges.
    """
    if not 0 <= boundary <= len(t):
        raise IndexError(f"boundary {boundary} outside [0, {len(t)}]")
    _same_index(idx, t)
    pos = int(_tree.prefix_length(t.pool.nodes, t.root, boundary))
    root = t.pool.run(
        lambda nodes, meta, stats: _tree.repair(idx.kernel_args, nodes, meta, stats, t.root, pos),
        counters,
    )
    return PartitionTree(t.pool, int(root))


def occurrences(t: PartitionTree) -> int:
    """Occurrences of the represented pattern; the empty pattern gives n + 1."""
    nodes = t.pool.nodes
    cnt = nodes[t.root, _tree.CNT]
    if cnt == 0:
        return t.index.n + 1
    if cnt > 1 or nodes[t.root, _tree.ALIEN] >= 0:
        return 0
    return int(nodes[t.root, _tree.HI] - nodes[t.root, _tree.LO])


def is_maximal(idx: TextIndex, t: PartitionTree) -> bool:
    """True when no two neighbouring pieces concatenate into a text substring."""
    pieces = t.pieces()
    for left, right in zip(pieces, pieces[1:]):
        if left.alien is not None or right.alien is not None:
            continue
        if not concat(idx, RangedString(left.length, left.range), RangedString(right.length, right.range)).empty:
            return False
    return True


def _same_index(idx: TextIndex, t: PartitionTree) -> None:
    if idx is not t.pool.index:
        raise ValueError("tree was built against a different text index")
