"""Seeded random words for property checks."""

from __future__ import annotations

import math
import random

from .tree import WreathSystem
from .words import GroupWord


def random_word(rng: random.Random, d: int, max_len: int, min_len: int = 0) -> GroupWord:
    n = rng.randint(min_len, max_len)
    return GroupWord(rng.choice((1, -1)) * rng.randint(1, d) for _ in range(n))


def random_positive_word(rng: random.Random, d: int, max_len: int, min_len: int = 0) -> tuple[int, ...]:
    return tuple(rng.randint(1, d) for _ in range(rng.randint(min_len, max_len)))


def perm_order(sys: WreathSystem, w: GroupWord, k: int) -> int:
    out = 1
    for c in sys.level_perm(w, k).cycles():
        out = math.lcm(out, len(c))
    return out


def random_stabilizer_word(rng: random.Random, sys: WreathSystem, k: int, max_len: int = 8) -> GroupWord:
    """u^m with m the order of u on level k, optionally conjugated."""
    u = random_word(rng, sys.d, max_len, 1)
    w = u ** perm_order(sys, u, k)
    if rng.random() < 0.5:
        v = random_word(rng, sys.d, 4)
        w = v.inverse() * w * v
    return w
