"""Timing harness: engine edits against a full recount after every edit."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ._accel import BACKEND
from .engine import Session
from .oracle import NaiveSession
from .text_index import build_index


@dataclass
class BenchResult:
    text_size: int
    pattern_size: int
    ops: int
    backend: str
    build_s: float
    search_s: float
    engine_s: float
    naive_ops: int
    naive_s: float
    pieces: int
    mismatches: int = 0
    engine_counts: list = field(default_factory=list, repr=False)

    @property
    def engine_per_op(self) -> float:
        return self.engine_s / self.ops if self.ops else 0.0

    @property
    def naive_per_op(self) -> float:
        return self.naive_s / self.naive_ops if self.naive_ops else 0.0

    @property
    def speedup(self) -> float:
        if not self.ops or self.engine_per_op == 0.0:
            return float("nan")
        return self.naive_per_op / self.engine_per_op

    def table(self) -> str:
        rows = [
            ("backend", self.backend),
            ("text size", f"{self.text_size}"),
            ("pattern size", f"{self.pattern_size}"),
            ("pieces after search", f"{self.pieces}"),
            ("index build", f"{self.build_s:.3f} s"),
            ("initial search", f"{self.search_s:.3f} s"),
            ("engine edits", f"{self.ops} ops, {self.engine_s:.3f} s, {self.engine_per_op * 1e6:.2f} us/op"),
            ("naive recount", f"{self.naive_ops} ops, {self.naive_s:.3f} s, {self.naive_per_op * 1e6:.2f} us/op"),
            ("speedup", f"{self.speedup:.1f}x"),
            ("count mismatches", f"{self.mismatches}"),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def edit_script(rng: np.random.Generator, pattern_size: int, ops: int, alphabet: int):
    """Random single-symbol inserts and deletes; the length stays near its start."""
    script = []
    length = pattern_size
    kinds = rng.random(ops)
    draws = rng.random(ops)
    symbols = rng.integers(0, alphabet, ops) + ord("a")
    for kind, draw, sym in zip(kinds.tolist(), draws.tolist(), symbols.tolist()):
        if length == 0 or (kind < 0.5 and length <= pattern_size):
            script.append(("insert", int(draw * (length + 1)), sym))
            length += 1
        else:
            script.append(("delete", int(draw * length)))
            length -= 1
    return script


def run_bench(text_size: int, ops: int, pattern_size: int, seed: int = 0, *,
              alphabet: int = 4, naive_ops: int | None = None, warmup: bool = True) -> BenchResult:
    """Time ``ops`` random edits on the engine and on a naive recount.

    ``naive_ops`` limits how many of the edits the naive side replays (its
    per-op cost does not depend on which edit it is); ``None`` replays all.
    Counts are compared on every replayed edit.
    """
    if text_size < 1 or ops < 0 or pattern_size < 0:
        raise ValueError("sizes must be positive")
    rng = np.random.default_rng(seed)
    text = (rng.integers(0, alphabet, text_size) + ord("a")).astype(np.uint8).tobytes()
    pattern = (rng.integers(0, alphabet, pattern_size) + ord("a")).astype(np.uint8).tobytes()
    script = edit_script(rng, pattern_size, ops, alphabet)
    if warmup:
        _warm(alphabet)

    t0 = time.perf_counter()
    index = build_index(text)
    build_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    session = Session(index)
    session.set_pattern(pattern)
    search_s = time.perf_counter() - t0
    pieces = len(session.snapshot())

    counts = []
    insert, delete = session.insert_char, session.delete_char
    t0 = time.perf_counter()
    for op in script:
        counts.append(insert(op[1], op[2]) if op[0] == "insert" else delete(op[1]))
    engine_s = time.perf_counter() - t0

    replay = ops if naive_ops is None else min(naive_ops, ops)
    naive = NaiveSession(text, pattern)
    naive.count()
    mismatches = 0
    t0 = time.perf_counter()
    for op, expected in zip(script[:replay], counts):
        got = naive.apply_op(op)
        mismatches += got != expected
    naive_s = time.perf_counter() - t0

    return BenchResult(text_size, pattern_size, ops, BACKEND, build_s, search_s, engine_s,
                       replay, naive_s, pieces, mismatches, counts)


def _warm(alphabet: int) -> None:
    # compile every kernel the timed section touches on a throwaway session
    run_bench(64, 8, 16, seed=1, alphabet=alphabet, warmup=False)
