"""Membership in H_k, level stabilizers and rigid stabilizers of G_d.

Stabilizer membership is always decided by computing the level permutation;
the block-congruence criterion is only ever applied to tuples, so the two
can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotInStabilizerError
from .tree import WreathSystem, vertex_index
from .words import IDENTITY, GroupWord, total_exponent


def in_H(w: GroupWord, k: int) -> bool:
    """|w|_A = 0 mod 2^(k+1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return total_exponent(w) % 2 ** (k + 1) == 0


def in_level_stabilizer(sys: WreathSystem, w: GroupWord, k: int) -> bool:
    return sys.level_perm(w, k).is_identity()


def _level_of(n: int, d: int) -> int:
    k, size = 0, 1
    while size < n:
        size *= d
        k += 1
    if size != n:
        raise ValueError(f"tuple length {n} is not a power of {d}")
    return k


@dataclass(frozen=True)
class BlockCongruenceProfile:
    """``residues[r-1][t]`` is the block sum over entries d^r t + 1 .. d^r (t+1),
    reduced mod 2^(r+1)."""

    d: int
    level: int
    residues: tuple[tuple[int, ...], ...]

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.residues)

    def violations(self) -> list[tuple[int, int, int]]:
        """(r, t, residue) for each failing block."""
        return [
            (r, t, res)
            for r, row in enumerate(self.residues, start=1)
            for t, res in enumerate(row)
            if res
        ]


def profile_from_totals(totals: Sequence[int], d: int) -> BlockCongruenceProfile:
    k = _level_of(len(totals), d)
    rows = []
    for r in range(1, k + 1):
        size = d**r
        mod = 2 ** (r + 1)
        rows.append(tuple(sum(totals[t * size:(t + 1) * size]) % mod for t in range(len(totals) // size)))
    return BlockCongruenceProfile(d, k, tuple(rows))


def tuple_criterion(tup: Sequence[GroupWord], d: int, k: int | None = None) -> BlockCongruenceProfile:
    if k is not None and len(tup) != d**k:
        raise ValueError(f"expected {d**k} entries for level {k}, got {len(tup)}")
    return profile_from_totals([total_exponent(h) for h in tup], d)


def in_rigid_stabilizer(sys: WreathSystem, w: GroupWord, k: int) -> bool:
    if not in_level_stabilizer(sys, w, k):
        return False
    return all(in_H(s, k) for s in sys.sections_at_level(w, k))


def in_rist_of_vertex(sys: WreathSystem, w: GroupWord, u: Sequence[int]) -> bool:
    k = len(u)
    if not in_level_stabilizer(sys, w, k):
        return False
    if k == 0:
        return True
    target = vertex_index(u, sys.d)
    secs = sys.sections_at_level(w, k)
    for idx, s in enumerate(secs):
        if idx != target and not sys.is_identity(s):
            return False
    return in_H(secs[target], k)


def fractal_lift_exists(sys: WreathSystem, w: GroupWord, k: int, x: int) -> tuple[GroupWord, ...]:
    """A level-1 tuple with w at slot x lying in the image of the stabilizer.

    w alone at x when |w|_A = 0 mod 4, otherwise w at x and at x+1.
    """
    if not in_level_stabilizer(sys, w, k):
        raise NotInStabilizerError(f"{w} is not in the level-{k} stabilizer")
    d = sys.d
    out = [IDENTITY] * d
    out[x - 1] = w
    if total_exponent(w) % 4:
        out[x % d] = w
    return tuple(out)
