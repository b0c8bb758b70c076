"""dynpat command line: run scripts, fuzz against the naive scan, benchmark."""
from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass

from .bench import run_bench
from .engine import Session, apply
from .oracle import NaiveSession
from .script import ScriptError, format_op, parse, random_script, random_text
from .text_index import ConfigurationError, build_index

EXIT_IO, EXIT_PARSE, EXIT_RANGE, EXIT_DIVERGED = 2, 3, 4, 1


@dataclass
class FuzzReport:
    text: bytes
    script: list
    ops_run: int
    divergence: tuple | None  # (op number, op, engine count, naive count)
    max_char_edit_merges: int
    max_substring_merges: int

    @property
    def ok(self) -> bool:
        return self.divergence is None


def fuzz(text_size: int, ops: int, alphabet: int, seed: int, *, alien_rate: float = 0.03) -> FuzzReport:
    """Engine and naive session in lockstep on a seeded random text and script."""
    rng = random.Random(seed)
    text = random_text(rng, text_size, alphabet)
    script = random_script(rng, text, ops, alien_rate=alien_rate)
    session = Session(build_index(text), seed=seed & 0xFFFFFFFF or 1)
    naive = NaiveSession(text)
    divergence = None
    done = 0
    for done, op in enumerate(script, start=1):
        got, want = apply(session, op), naive.apply_op(op)
        if got != want:
            divergence = (done, op, got, want)
            break
    return FuzzReport(text, script, done, divergence,
                      session.stats.max_char_edit_merges, session.stats.max_substring_merges)


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def cmd_run(args) -> int:
    try:
        text = _read(args.text)
        ops_data = _read(args.ops)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        script = parse(ops_data)
    except ScriptError as exc:
        print(f"{args.ops}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        session = Session(build_index(text))
    except ConfigurationError as exc:
        print(f"{args.text}: {exc}", file=sys.stderr)
        return EXIT_IO
    out = sys.stdout
    for lineno, op in script:
        try:
            count = apply(session, op)
        except (IndexError, ValueError) as exc:
            out.flush()
            print(f"{args.ops}: line {lineno}: {exc}", file=sys.stderr)
            return EXIT_RANGE
        out.write(f"{count}\n")
    out.flush()
    return 0


def cmd_fuzz(args) -> int:
    report = fuzz(args.text_size, args.ops, args.alphabet, args.seed, alien_rate=args.alien_rate)
    if report.ok:
        print(f"pass: {report.ops_run} ops, text size {args.text_size}, alphabet {args.alphabet}, "
              f"seed {args.seed}")
        return 0
    step, op, got, want = report.divergence
    print(f"FAIL at op {step} ({format_op(op)}): engine {got}, naive {want}")
    if args.save:
        with open(args.save, "w") as fh:
            fh.writelines(format_op(o) + "\n" for o in report.script[:step])
        with open(args.save + ".text", "wb") as fh:
            fh.write(report.text)
        print(f"reproducer written to {args.save} and {args.save}.text")
    return EXIT_DIVERGED


def cmd_bench(args) -> int:
    result = run_bench(args.text_size, args.ops, args.pattern_size, args.seed,
                       alphabet=args.alphabet, naive_ops=args.naive_ops)
    print(result.table())
    return 0 if result.mismatches == 0 else EXIT_DIVERGED


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _non_negative(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return n


def _alphabet(value: str) -> int:
    n = _positive(value)
    if n > 26:
        raise argparse.ArgumentTypeError("alphabet size is at most 26")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynpat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="print the occurrence count after each scripted operation")
    p.add_argument("--text", required=True, help="text file, read as raw bytes")
    p.add_argument("--ops", required=True, help="operations file, one per line")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("fuzz", help="compare the engine with a naive recount on random scripts")
    p.add_argument("--text-size", type=_positive, default=1000)
    p.add_argument("--ops", type=_positive, default=10000)
    p.add_argument("--alphabet", type=_alphabet, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alien-rate", type=float, default=0.03,
                   help="chance that an inserted symbol is absent from the text")
    p.add_argument("--save", metavar="FILE", help="on failure, write the script prefix and text here")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("bench", help="time random symbol edits against a naive recount")
    p.add_argument("--text-size", type=_positive, default=1_000_000)
    p.add_argument("--ops", type=_non_negative, default=10_000)
    p.add_argument("--pattern-size", type=_non_negative, default=500_000)
    p.add_argument("--alphabet", type=_alphabet, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--naive-ops", type=_non_negative, default=None,
                   help="replay only this many edits on the naive side")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
