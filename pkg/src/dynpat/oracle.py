"""Naive reference: a plain byte pattern recounted by a full scan after each edit."""
from __future__ import annotations

import numpy as np

from ._accel import njit


@njit
def _kmp_count(text, pat):
    m = pat.shape[0]
    fail = np.zeros(m, dtype=np.int64)
    k = 0
    for i in range(1, m):
        while k > 0 and pat[i] != pat[k]:
            k = fail[k - 1]
        if pat[i] == pat[k]:
            k += 1
        fail[i] = k
    hits = 0
    k = 0
    for c in text:
        while k > 0 and c != pat[k]:
            k = fail[k - 1]
        if c == pat[k]:
            k += 1
        if k == m:
            hits += 1
            k = fail[k - 1]
    return hits


def _arr(data) -> np.ndarray:
    if isinstance(data, str):
        data = data.encode("latin-1")
    if isinstance(data, np.ndarray):
        return np.ascontiguousarray(data, dtype=np.uint8)
    return np.frombuffer(bytes(data), dtype=np.uint8)


def naive_count(text, pattern) -> int:
    """Occurrences of ``pattern`` in ``text`` (overlaps included); '' gives n + 1."""
    t, p = _arr(text), _arr(pattern)
    if p.shape[0] == 0:
        return t.shape[0] + 1
    if p.shape[0] > t.shape[0]:
        return 0
    return int(_kmp_count(t, p))


def quadratic_count(text: bytes, pattern: bytes) -> int:
    if not pattern:
        return len(text) + 1
    return sum(text[p:p + len(pattern)] == pattern for p in range(len(text) - len(pattern) + 1))


def brute_suffix_array(text: bytes) -> list[int]:
    return sorted(range(len(text)), key=lambda i: text[i:])


def brute_lcp(text: bytes, i: int, j: int) -> int:
    k = 0
    while i + k < len(text) and j + k < len(text) and text[i + k] == text[j + k]:
        k += 1
    return k


def brute_suffix_range(text: bytes, pattern: bytes, sa: list[int] | None = None) -> tuple[int, int]:
    """Ranks of suffixes starting with ``pattern``, as ``(lo, hi)``; ``(0, 0)`` if none."""
    sa = brute_suffix_array(text) if sa is None else sa
    ranks = [r for r, p in enumerate(sa) if text[p:p + len(pattern)] == pattern]
    if not ranks:
        return 0, 0
    if ranks != list(range(ranks[0], ranks[-1] + 1)):
        raise AssertionError("suffix range is not contiguous")
    return ranks[0], ranks[-1] + 1


def longest_occurring_prefix(text: bytes, pattern: bytes) -> int:
    best = 0
    while best < len(pattern) and pattern[: best + 1] in text:
        best += 1
    return best


def min_partition_size(text: bytes, pattern: bytes) -> int:
    """Fewest pieces covering ``pattern``, each a substring of ``text`` or one absent byte."""
    m = len(pattern)
    best = [0] + [m + 1] * m
    for end in range(1, m + 1):
        for start in range(end):
            piece = pattern[start:end]
            if piece in text or (end - start == 1 and piece not in text):
                best[end] = min(best[end], best[start] + 1)
    return best[m]


class NaiveSession:
    """Same edit API as :class:`dynpat.engine.Session`, on a bytearray."""

    def __init__(self, text, pattern=b""):
        self.text = bytes(_arr(text))
        self._text_arr = _arr(self.text)
        self.pattern = bytearray(pattern.encode("latin-1") if isinstance(pattern, str) else pattern)

    def count(self) -> int:
        return naive_count(self._text_arr, self.pattern)

    current_count = count

    def set_pattern(self, pattern) -> int:
        self.pattern = bytearray(pattern.encode("latin-1") if isinstance(pattern, str) else pattern)
        return self.count()

    def insert_char(self, i: int, c) -> int:
        if not 0 <= i <= len(self.pattern):
            raise IndexError(i)
        if isinstance(c, str):
            c = c.encode("latin-1")
        if isinstance(c, (bytes, bytearray)):
            (c,) = c
        self.pattern.insert(i, c)
        return self.count()

    def delete_char(self, i: int) -> int:
        if not 0 <= i < len(self.pattern):
            raise IndexError(i)
        del self.pattern[i]
        return self.count()

    def delete_substring(self, i: int, j: int) -> int:
        self._check_range(i, j)
        del self.pattern[i:j]
        return self.count()

    def move_substring(self, i: int, j: int, k: int) -> int:
        self._check_range(i, j)
        piece = self.pattern[i:j]
        rest = self.pattern[:i] + self.pattern[j:]
        if not 0 <= k <= len(rest):
            raise IndexError(k)
        self.pattern = rest[:k] + piece + rest[k:]
        return self.count()

    def copy_substring(self, i: int, j: int, k: int) -> int:
        self._check_range(i, j)
        if not 0 <= k <= len(self.pattern):
            raise IndexError(k)
        self.pattern[k:k] = self.pattern[i:j]
        return self.count()

    def _check_range(self, i: int, j: int) -> None:
        if not 0 <= i <= j <= len(self.pattern):
            raise IndexError((i, j))

    def apply_op(self, op) -> int:
        name, *args = op
        return {
            "search": self.set_pattern,
            "insert": self.insert_char,
            "delete": self.delete_char,
            "delsub": self.delete_substring,
            "move": self.move_substring,
            "copy": self.copy_substring,
            "count": self.count,
        }[name](*args)
