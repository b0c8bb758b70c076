"""Line-oriented edit scripts and a seeded generator of random ones.

Grammar, one operation per line, ``#`` starts a comment::

    search [<token>]
    insert <i> <char>
    delete <i>
    delsub <i> <j>
    move <i> <j> <k>
    copy <i> <j> <k>
    count

Tokens cannot contain whitespace; ``\\xHH`` encodes any byte and ``\\\\`` a
backslash.
"""
from __future__ import annotations

import random
import re

_ARITY = {"search": None, "insert": 2, "delete": 1, "delsub": 2, "move": 3, "copy": 3, "count": 0}
_ESCAPE = re.compile(rb"\\(x[0-9a-fA-F]{2}|\\)")


class ScriptError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def unescape(token: bytes) -> bytes:
    def sub(m):
        body = m.group(1)
        return b"\\" if body == b"\\" else bytes([int(body[1:], 16)])

    if b"\\" in _ESCAPE.sub(b"", token):
        raise ValueError(f"bad escape in {token!r}")
    return _ESCAPE.sub(sub, token)


def escape(data: bytes) -> str:
    out = []
    for b in data:
        ch = chr(b)
        if ch == "\\":
            out.append("\\\\")
        elif 33 <= b < 127 and ch != "#":
            out.append(ch)
        else:
            out.append(f"\\x{b:02x}")
    return "".join(out)


def parse_line(raw: bytes, lineno: int = 0):
    """One operation tuple, or ``None`` for a blank or comment line."""
    line = raw.split(b"#", 1)[0].split()
    if not line:
        return None
    name = line[0].decode("ascii", "replace")
    if name not in _ARITY:
        raise ScriptError(lineno, f"unknown operation {name!r}")
    args = line[1:]
    if name == "search":
        if len(args) > 1:
            raise ScriptError(lineno, "search takes at most one token")
        try:
            return ("search", unescape(args[0]) if args else b"")
        except ValueError as exc:
            raise ScriptError(lineno, str(exc)) from None
    if len(args) != _ARITY[name]:
        raise ScriptError(lineno, f"{name} takes {_ARITY[name]} arguments, got {len(args)}")
    if name == "insert":
        try:
            symbol = unescape(args[1])
        except ValueError as exc:
            raise ScriptError(lineno, str(exc)) from None
        if len(symbol) != 1:
            raise ScriptError(lineno, f"insert needs one symbol, got {args[1]!r}")
        return ("insert", _int(args[0], lineno), symbol[0])
    return (name, *(_int(a, lineno) for a in args))


def _int(token: bytes, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ScriptError(lineno, f"expected an integer, got {token!r}") from None
    if value < 0:
        raise ScriptError(lineno, f"negative index {value}")
    return value


def parse(data: bytes) -> list[tuple[int, tuple]]:
    """``(line number, operation)`` pairs for every non-blank line."""
    ops = []
    for lineno, raw in enumerate(data.splitlines(), start=1):
        op = parse_line(raw, lineno)
        if op is not None:
            ops.append((lineno, op))
    return ops


def format_op(op) -> str:
    name, *args = op
    if name == "search":
        return f"search {escape(args[0])}".rstrip()
    if name == "insert":
        return f"insert {args[0]} {escape(bytes([args[1]]))}"
    return " ".join([name, *map(str, args)])


def random_text(rng: random.Random, size: int, alphabet: int) -> bytes:
    letters = bytes(range(ord("a"), ord("a") + alphabet))
    return bytes(rng.choice(letters) for _ in range(size))


def random_script(rng: random.Random, text: bytes, n_ops: int, *, alien_rate: float = 0.03,
                  max_len: int = 48):
    """Valid operations of every kind, tracking the pattern length as it goes.

    Searches mostly pick substrings of ``text`` so counts are often non-zero;
    a few symbols come from outside the text's alphabet.
    """
    present = sorted(set(text))
    aliens = [b for b in range(ord("A"), ord("Z") + 1) if b not in present] or [0]
    length = 0

    def symbol():
        return rng.choice(aliens) if rng.random() < alien_rate else rng.choice(present)

    ops = []
    for _ in range(n_ops):
        roll = rng.random()
        if roll < 0.04 or (length == 0 and roll < 0.3):
            if rng.random() < 0.1:
                pattern = b""
            else:
                size = rng.randint(1, min(len(text), 24))
                start = rng.randrange(len(text) - size + 1)
                pattern = bytearray(text[start:start + size])
                if rng.random() < 0.3:
                    pattern[rng.randrange(size)] = symbol()
            ops.append(("search", bytes(pattern)))
            length = len(pattern)
        elif roll < 0.40 and length < max_len:
            ops.append(("insert", rng.randint(0, length), symbol()))
            length += 1
        elif roll < 0.65 and length > 0:
            ops.append(("delete", rng.randrange(length)))
            length -= 1
        elif roll < 0.73:
            i = rng.randint(0, length)
            j = rng.randint(i, min(length, i + 8))
            ops.append(("delsub", i, j))
            length -= j - i
        elif roll < 0.84:
            i = rng.randint(0, length)
            j = rng.randint(i, length)
            k = rng.randint(0, length - (j - i))
            ops.append(("move", i, j, k))
        elif roll < 0.95 and length < max_len:
            i = rng.randint(0, length)
            j = rng.randint(i, min(length, i + max_len - length))
            k = rng.randint(0, length)
            ops.append(("copy", i, j, k))
            length += j - i
        else:
            ops.append(("count",))
    return ops
