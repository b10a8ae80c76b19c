"""The positive monoid of G_d as a trace monoid.

a_i and a_j commute exactly when 1 < |i - j| < d - 1 (plain difference, so
a_1 and a_d do not commute).  Words here are tuples of positive indices.
"""

from __future__ import annotations

from typing import Sequence

from .words import GroupWord, parse


def commutes(i: int, j: int, d: int) -> bool:
    return 1 < abs(j - i) < d - 1


def _letters(w) -> tuple[int, ...]:
    if isinstance(w, str):
        w = parse(w)
    letters = w.letters if isinstance(w, GroupWord) else tuple(w)
    if any(x <= 0 for x in letters):
        raise ValueError("trace words must be positive (no inverse letters)")
    return letters


def normal_form(w, d: int) -> tuple[int, ...]:
    """Lexicographically least word in the commutation class of w.

    Repeatedly pulls out the smallest letter whose first occurrence commutes
    with everything in front of it.
    """
    rest = list(_letters(w))
    out = []
    while rest:
        best = None
        blockers: list[int] = []
        for pos, x in enumerate(rest):
            if all(commutes(x, y, d) for y in blockers):
                if best is None or x < rest[best]:
                    best = pos
            blockers.append(x)
        out.append(rest.pop(best))
    return tuple(out)


def monoid_equal(u, v, d: int) -> bool:
    return normal_form(u, d) == normal_form(v, d)


def is_normal(w: Sequence[int], d: int) -> bool:
    return tuple(w) == normal_form(w, d)


def growth_count(d: int, n: int) -> int:
    """Number of commutation classes of positive words of length n.

    Counts lex-least representatives.  Appending x to a normal word keeps it
    normal unless some letter y > x sits in the maximal suffix of letters
    commuting with x; one bit per letter tracks exactly that, so the count is
    a walk over at most 2^d states.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    comm = [[commutes(i, j, d) for j in range(1, d + 1)] for i in range(1, d + 1)]
    counts = {(False,) * d: 1}
    for _ in range(n):
        nxt: dict[tuple[bool, ...], int] = {}
        for state, c in counts.items():
            for x in range(d):
                if state[x]:
                    continue
                new = tuple(
                    (state[z] or x > z) if comm[x][z] else False for z in range(d)
                )
                nxt[new] = nxt.get(new, 0) + c
        counts = nxt
    return sum(counts.values())
