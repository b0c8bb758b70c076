"""Suffix-range calculus: concatenate two ranges, trim either end, count."""
from __future__ import annotations

from typing import NamedTuple

from . import _suffix
from .text_index import EMPTY, SuffixRange, TextIndex


class RangedString(NamedTuple):
    """A text substring known only by its length and suffix range."""

    length: int
    range: SuffixRange


def count(r: SuffixRange) -> int:
    return max(r[1] - r[0], 0)


def concat(idx: TextIndex, a: RangedString, b: RangedString) -> SuffixRange:
    """Suffix range of A followed by B, found inside A's range in O(log n)."""
    if a.range.empty or b.range.empty:
        raise ValueError("concat needs two occurring strings")
    lo, hi = _suffix.concat(idx.kernel_args, a.length, a.range.lo, a.range.hi, b.range.lo, b.range.hi)
    if hi <= lo:
        return EMPTY
    return SuffixRange(int(lo), int(hi))


def _check_trim(s: RangedString, k: int) -> None:
    if s.range.empty:
        raise ValueError("cannot trim a string that does not occur")
    if not 0 < k < s.length:
        raise ValueError(f"trim length {k} must lie in (0, {s.length})")


def drop_front(idx: TextIndex, s: RangedString, k: int) -> SuffixRange:
    """Range of ``s`` without its first ``k`` symbols."""
    _check_trim(s, k)
    return SuffixRange(*map(int, _suffix.drop_front(idx.kernel_args, s.length, s.range.lo, k)))


def drop_back(idx: TextIndex, s: RangedString, k: int) -> SuffixRange:
    """Range of ``s`` without its last ``k`` symbols."""
    _check_trim(s, k)
    return SuffixRange(*map(int, _suffix.drop_back(idx.kernel_args, s.length, s.range.lo, k)))
