"""Orders of finite permutation groups: BFS enumeration and a stabilizer chain.

Permutations are tuples of images of 0..n-1 and compose left to right:
``mul(p, q)`` applies p first.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Sequence

from .errors import EnumerationOverflow
from .tree import LevelPermutation

Perm = tuple


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _as_tuples(gens) -> list[Perm]:
    out = []
    for g in gens:
        out.append(g.as_tuple() if isinstance(g, LevelPermutation) else tuple(g))
    if not out:
        raise ValueError("need at least one generator")
    n = len(out[0])
    if any(len(g) != n for g in out):
        raise ValueError("generators must share one degree")
    return out


class _Level:
    """One level of the chain: a base point, its orbit, and a transversal."""

    def __init__(self, point: int, n: int):
        self.point = point
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {point: tuple(range(n))}

    def extend(self):
        queue = deque(self.transversal)
        while queue:
            b = queue.popleft()
            tb = self.transversal[b]
            for g in self.gens:
                c = g[b]
                if c not in self.transversal:
                    self.transversal[c] = mul(tb, g)
                    queue.append(c)


class StabilizerChain:
    """Schreier-Sims: random Schreier generators, then a deterministic
    verification pass that sifts every Schreier generator."""

    def __init__(self, gens: Iterable, seed: int = 0, random_rounds: int = 30):
        self.gens = _as_tuples(gens)
        self.n = len(self.gens[0])
        self.identity = tuple(range(self.n))
        self.levels: list[_Level] = []
        self._rng = random.Random(seed)
        for g in self.gens:
            self._add(g)
        self._random_phase(random_rounds)
        self._verify()

    def sift(self, g: Perm) -> tuple[Perm, int]:
        """Strip g through the chain; return residue and the level it stopped at."""
        return _sift_from(self.levels, 0, g)

    def _add(self, g: Perm, start: int = 0) -> bool:
        h, depth = _sift_from(self.levels, start, g)
        if h == self.identity:
            return False
        if depth == len(self.levels):
            moved = next(i for i in range(self.n) if h[i] != i)
            self.levels.append(_Level(moved, self.n))
        for lvl in self.levels[start: depth + 1]:
            lvl.gens.append(h)
            lvl.extend()
        return True

    def _random_element(self) -> Perm:
        g = self.identity
        for p in self.gens:
            if self._rng.random() < 0.5:
                g = mul(g, p)
        for _ in range(self._rng.randint(1, 5)):
            g = mul(g, self._rng.choice(self.gens))
        return g

    def _random_phase(self, rounds: int):
        quiet = 0
        while quiet < rounds:
            quiet = 0 if self._add(self._random_element()) else quiet + 1

    def _verify(self):
        changed = True
        while changed:
            changed = False
            for depth in range(len(self.levels) - 1, -1, -1):
                lvl = self.levels[depth]
                for b, tb in list(lvl.transversal.items()):
                    for s in list(lvl.gens):
                        # Schreier generator t_b s t_{bs}^-1 fixes the base point
                        schreier = mul(mul(tb, s), inv(lvl.transversal[s[b]]))
                        if schreier == self.identity:
                            continue
                        if self._add(schreier, depth + 1):
                            changed = True
                if changed:
                    break

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    def order(self) -> int:
        out = 1
        for lvl in self.levels:
            out *= len(lvl.transversal)
        return out

    def contains(self, g) -> bool:
        g = g.as_tuple() if isinstance(g, LevelPermutation) else tuple(g)
        return self.sift(g)[0] == self.identity


def _sift_from(levels, start, g):
    for depth in range(start, len(levels)):
        lvl = levels[depth]
        t = lvl.transversal.get(g[lvl.point])
        if t is None:
            return g, depth
        g = mul(g, inv(t))
    return g, len(levels)


def group_order(gens: Sequence, seed: int = 0) -> int:
    return StabilizerChain(gens, seed=seed).order()


def bfs_enumerate(gens: Sequence, cap: int) -> set[Perm]:
    """All elements of the generated group; raises EnumerationOverflow past ``cap``."""
    gens = _as_tuples(gens)
    start = tuple(range(len(gens[0])))
    seen = {start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mul(g, s)
            if h not in seen:
                if len(seen) >= cap:
                    raise EnumerationOverflow(f"group has more than {cap} elements")
                seen.add(h)
                queue.append(h)
    return seen
