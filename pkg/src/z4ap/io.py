"""Plain-text set files.

One element per line, written as its n digits (coordinate 1 leftmost);
``#`` starts a comment line; blank lines are ignored.  The dimension is
taken from the first element line.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from .group import PointSet, pack

PathLike = Union[str, Path]


class SetFileError(ValueError):
    def __init__(self, message: str, lineno: int = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def parse_set(text: str, binary: bool = False) -> PointSet:
    n = None
    words = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        allowed = "01" if binary else "0123"
        bad = [ch for ch in line if ch not in allowed]
        if bad:
            raise SetFileError(f"invalid character {bad[0]!r} in {line!r}", lineno)
        if n is None:
            n = len(line)
        elif len(line) != n:
            raise SetFileError(f"element {line!r} has {len(line)} digits, expected {n}", lineno)
        digits = [int(ch) for ch in line]
        if binary:
            words.append(sum(b << i for i, b in enumerate(digits)))
        else:
            words.append(pack(digits))
    return PointSet(n or 0, words, binary=binary)


def read_set(path: PathLike, binary: bool = False) -> PointSet:
    return parse_set(Path(path).read_text(encoding="utf-8"), binary=binary)


def format_set(S: PointSet, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += ["".join(map(str, row)) for row in S.digit_rows()]
    return "\n".join(lines) + "\n"


def write_set(path: PathLike, S: PointSet, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_set(S, comments), encoding="utf-8")
