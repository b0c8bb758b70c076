"""Static text index: suffix array, inverse, LCP array and O(1) LCP queries."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _suffix
from ._accel import BACKEND


class ConfigurationError(ValueError):
    """Raised for an index that cannot be built as requested."""


class SuffixRange(NamedTuple):
    """Half-open interval ``[lo, hi)`` of suffix-array ranks."""

    lo: int
    hi: int

    @property
    def empty(self) -> bool:
        return self.hi <= self.lo


EMPTY = SuffixRange(0, 0)


def _as_bytes(data) -> np.ndarray:
    if isinstance(data, str):
        data = data.encode("latin-1")
    if isinstance(data, np.ndarray):
        return np.ascontiguousarray(data, dtype=np.uint8)
    return np.frombuffer(bytes(data), dtype=np.uint8).copy()


@dataclass(frozen=True, eq=False)
class TextIndex:
    """Immutable index over a byte text.

    ``lcp[i]`` is the longest common prefix of the suffixes at ranks ``i``
    and ``i + 1``; ``char_lo``/``char_hi`` give each byte's one-symbol range.
    """

    text: np.ndarray
    sa: np.ndarray
    isa: np.ndarray
    lcp: np.ndarray
    rmq_mode: str
    char_lo: np.ndarray = field(repr=False)
    char_hi: np.ndarray = field(repr=False)
    kernel_args: tuple = field(repr=False)

    @property
    def n(self) -> int:
        return int(self.text.shape[0])

    def __len__(self) -> int:
        return self.n

    def dump(self) -> str:
        """sa and lcp as whitespace-separated integers, one array per line."""
        return " ".join(map(str, self.sa.tolist())) + "\n" + " ".join(map(str, self.lcp.tolist())) + "\n"


def build_index(text, *, sa_method: str | None = None, rmq: str = "sparse") -> TextIndex:
    """Build the index for ``text`` (bytes, str in latin-1, or a uint8 array).

    ``sa_method`` is ``"sais"`` (linear induced sorting) or ``"doubling"``
    (vectorised prefix doubling). The default is SA-IS when kernels are
    compiled and doubling on the pure-numpy backend. ``rmq`` selects the
    sparse table (``"sparse"``) or the linear-space block variant (``"block"``).
    """
    data = _as_bytes(text)
    n = data.shape[0]
    if n == 0:
        raise ConfigurationError("text must contain at least one symbol")
    if sa_method is None:
        sa_method = "sais" if BACKEND == "numba" else "doubling"
    if sa_method == "sais":
        sa = _suffix.sais(data.astype(np.int64), 255)
    elif sa_method == "doubling":
        sa = _suffix.prefix_doubling(data)
    else:
        raise ConfigurationError(f"unknown suffix array method {sa_method!r}")
    sa = np.ascontiguousarray(sa, dtype=np.int64)
    isa = np.empty(n, dtype=np.int64)
    isa[sa] = np.arange(n, dtype=np.int64)
    lcp_padded = _suffix.kasai(data, sa, isa)

    if rmq == "sparse":
        block = 1
        table, lg = _suffix.sparse_table(lcp_padded)
    elif rmq == "block":
        block = max(int(n).bit_length(), 2)
        table, lg = _suffix.sparse_table(_suffix.block_minima(lcp_padded, block))
    else:
        raise ConfigurationError(f"unknown rmq mode {rmq!r}")

    counts = np.bincount(data, minlength=256).astype(np.int64)
    char_hi = np.cumsum(counts)
    char_lo = char_hi - counts
    absent = counts == 0
    char_lo[absent] = 0
    char_hi[absent] = 0

    lcp = lcp_padded[: n - 1]
    for arr in (data, sa, isa, lcp, char_lo, char_hi):
        arr.flags.writeable = False
    return TextIndex(
        text=data,
        sa=sa,
        isa=isa,
        lcp=lcp,
        rmq_mode=rmq,
        char_lo=char_lo,
        char_hi=char_hi,
        kernel_args=(data, sa, isa, lcp_padded, table, lg, block),
    )


def _check_position(idx: TextIndex, i: int, what: str = "position") -> None:
    if not 0 <= i < idx.n:
        raise IndexError(f"{what} {i} outside [0, {idx.n})")


def lcp_suffixes(idx: TextIndex, i: int, j: int) -> int:
    """Longest common prefix of the suffixes starting at ``i`` and ``j``."""
    _check_position(idx, i)
    _check_position(idx, j)
    return int(_suffix.lcp_positions(idx.kernel_args, i, j))


def _pattern(pattern) -> np.ndarray:
    pat = _as_bytes(pattern)
    if pat.shape[0] == 0:
        raise ValueError("pattern must be non-empty")
    return pat


def sr_slow(idx: TextIndex, pattern) -> SuffixRange:
    pat = _pattern(pattern)
    return SuffixRange(*_suffix.sr_slow(idx.kernel_args, pat, 0, pat.shape[0]))


def sr_fast(idx: TextIndex, pattern) -> SuffixRange:
    pat = _pattern(pattern)
    return SuffixRange(*_suffix.sr_fast(idx.kernel_args, pat, 0, pat.shape[0]))


def longest_prefix_match(idx: TextIndex, pattern) -> tuple[int, SuffixRange]:
    pat = _pattern(pattern)
    length, lo, hi = _suffix.longest_prefix_match(idx.kernel_args, pat, 0, pat.shape[0])
    return int(length), SuffixRange(int(lo), int(hi))


def sr_of_char(idx: TextIndex, c) -> SuffixRange:
    if isinstance(c, (bytes, str)):
        (c,) = _as_bytes(c)
    c = int(c)
    if not 0 <= c < 256:
        raise ValueError(f"symbol {c} is not a byte")
    return SuffixRange(int(idx.char_lo[c]), int(idx.char_hi[c]))


def extend_range(idx: TextIndex, rank: int, length: int) -> SuffixRange:
    """All ranks whose suffixes share the first ``length`` symbols of ``sa[rank]``."""
    _check_position(idx, rank, "rank")
    if length < 0 or idx.sa[rank] + length > idx.n:
        raise ValueError(f"suffix at rank {rank} is shorter than {length}")
    lo, hi = _suffix.extend_range(idx.kernel_args, rank, length)
    return SuffixRange(int(lo), int(hi))
