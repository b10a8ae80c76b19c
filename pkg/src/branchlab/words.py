"""Signed words over the generators a_1..a_d.

A letter is a nonzero int: ``+i`` stands for a_i and ``-i`` for its inverse.
Words are kept freely reduced at all times.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GeneratorRangeError, WordSyntaxError


@dataclass(frozen=True)
class GroupConfig:
    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 3 or self.d % 2 == 0:
            raise ValueError(f"d must be an odd integer >= 3, got {self.d!r}")

    @property
    def alphabet(self) -> range:
        return range(1, self.d + 1)


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class GroupWord:
    """A freely reduced word; immutable and hashable."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = (), d: int | None = None):
        raw = tuple(letters)
        for x in raw:
            if x == 0 or (d is not None and abs(x) > d):
                raise GeneratorRangeError(f"generator index {abs(x)} out of range 1..{d}")
        object.__setattr__(self, "letters", free_reduce(raw))

    def __setattr__(self, name, value):
        raise AttributeError("GroupWord is immutable")

    @classmethod
    def _from_reduced(cls, letters: tuple[int, ...]) -> "GroupWord":
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "GroupWord":
        return cls._from_reduced((i,) * power if power >= 0 else (-i,) * -power)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __pow__(self, n: int) -> "GroupWord":
        base = self if n >= 0 else self.inverse()
        return GroupWord(base.letters * abs(n))

    def inverse(self) -> "GroupWord":
        return GroupWord._from_reduced(tuple(-x for x in reversed(self.letters)))

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.letters)

    def max_index(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def shift(self, s: int, d: int) -> "GroupWord":
        """Add ``s`` to every generator index, cyclically modulo d."""
        return GroupWord(
            (1 if x > 0 else -1) * ((abs(x) - 1 + s) % d + 1) for x in self.letters
        )

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"GroupWord({format_word(self)!r})"


IDENTITY = GroupWord()


def reduce(raw: Sequence[int], d: int | None = None) -> GroupWord:
    return GroupWord(raw, d=d)


def comm(g: GroupWord, h: GroupWord) -> GroupWord:
    """[g, h] = g^-1 h^-1 g h."""
    return g.inverse() * h.inverse() * g * h


def conj(g: GroupWord, h: GroupWord) -> GroupWord:
    """g^h = h^-1 g h."""
    return h.inverse() * g * h


@dataclass(frozen=True)
class ExponentVector:
    components: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.components)

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        return ExponentVector(tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "ExponentVector":
        return ExponentVector(tuple(-a for a in self.components))

    def is_zero(self) -> bool:
        return not any(self.components)


def exponent_vector(w: GroupWord, d: int) -> ExponentVector:
    comps = [0] * d
    for x in w.letters:
        if x > 0:
            comps[x - 1] += 1
        else:
            comps[-x - 1] -= 1
    return ExponentVector(tuple(comps))


def total_exponent(w: GroupWord) -> int:
    """|w|_A, the sum of all signed exponents."""
    return sum(1 if x > 0 else -1 for x in w.letters)


_TOKEN = re.compile(r"\s*(?:(e)\b|a(\d+)(?:(')|\^(-?\d+))?)")


def parse(text: str, cfg: GroupConfig | int | None = None) -> GroupWord:
    """Parse ``"a1 a2' a3^2 a4^-1"``; ``e`` or the empty string is the identity."""
    d = cfg.d if isinstance(cfg, GroupConfig) else cfg
    letters: list[int] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            p = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError(f"unexpected input at position {p}: {text[p:p + 8]!r}", p)
        end = m.end()
        if end < n and not text[end].isspace():
            raise WordSyntaxError(f"missing separator at position {end}: {text[end:end + 8]!r}", end)
        if m.group(1) is None:
            i = int(m.group(2))
            if i < 1 or (d is not None and i > d):
                raise GeneratorRangeError(f"generator a{i} out of range 1..{d} at position {m.start(2) - 1}")
            if m.group(3):
                power = -1
            elif m.group(4) is not None:
                power = int(m.group(4))
            else:
                power = 1
            letters.extend([i if power > 0 else -i] * abs(power))
        pos = end
    return GroupWord(letters)


def format_word(w: GroupWord) -> str:
    if not w.letters:
        return "e"
    return " ".join(f"a{x}" if x > 0 else f"a{-x}'" for x in w.letters)


def parse_vertex(text: str, d: int) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "()", "root"):
        return ()
    if "," in text:
        parts = [p.strip() for p in text.split(",")]
    elif d <= 9:
        parts = list(text)
    else:
        parts = [text]
    try:
        v = tuple(int(p) for p in parts)
    except ValueError:
        raise WordSyntaxError(f"bad vertex {text!r}", 0) from None
    for x in v:
        if not 1 <= x <= d:
            raise GeneratorRangeError(f"vertex letter {x} out of range 1..{d}")
    return v


def format_vertex(v: Sequence[int], d: int) -> str:
    if d <= 9:
        return "".join(str(x) for x in v)
    return ",".join(str(x) for x in v)
