"""Count pattern occurrences in a fixed text while the pattern is edited."""
from ._accel import BACKEND
from .engine import Session, SessionStats
from .oracle import NaiveSession, naive_count
from .partition import NodePool, PartitionTree, Piece
from .range_algebra import RangedString, concat, count, drop_back, drop_front
from .text_index import (
    ConfigurationError,
    SuffixRange,
    TextIndex,
    build_index,
    extend_range,
    lcp_suffixes,
    longest_prefix_match,
    sr_fast,
    sr_slow,
)

__all__ = [
    "BACKEND",
    "ConfigurationError",
    "NaiveSession",
    "NodePool",
    "PartitionTree",
    "Piece",
    "RangedString",
    "Session",
    "SessionStats",
    "SuffixRange",
    "TextIndex",
    "build_index",
    "concat",
    "count",
    "drop_back",
    "drop_front",
    "extend_range",
    "lcp_suffixes",
    "longest_prefix_match",
    "naive_count",
    "sr_fast",
    "sr_slow",
]
