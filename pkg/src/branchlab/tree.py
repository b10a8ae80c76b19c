"""Wreath-recursion evaluation: vertex images, sections, level permutations,
and the word problem.

Conventions: vertices are tuples over 1..d; actions compose left to right,
so for a word ``x1 x2 ... xn`` the letter ``x1`` acts first, and
``(gh)|_u = g|_u h|_{g(u)}``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GeneratorRangeError, NotInStabilizerError, ResourceLimitError
from .words import GroupConfig, GroupWord

DEFAULT_MAX_VERTICES = 10**7


@dataclass(frozen=True, eq=False)
class LevelPermutation:
    """Permutation of X^k as an index array; vertex x1..xk has index
    sum (x_j - 1) d^(k-j)."""

    d: int
    level: int
    mapping: np.ndarray

    def __post_init__(self):
        self.mapping.setflags(write=False)

    def __eq__(self, other):
        return (
            isinstance(other, LevelPermutation)
            and self.d == other.d
            and self.level == other.level
            and np.array_equal(self.mapping, other.mapping)
        )

    def __hash__(self):
        return hash((self.d, self.level, self.mapping.tobytes()))

    def __mul__(self, other: "LevelPermutation") -> "LevelPermutation":
        # self first, then other
        return LevelPermutation(self.d, self.level, other.mapping[self.mapping])

    def inverse(self) -> "LevelPermutation":
        return LevelPermutation(self.d, self.level, np.argsort(self.mapping))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.mapping, np.arange(len(self.mapping))))

    def truncate(self) -> "LevelPermutation":
        """The induced permutation one level up."""
        if self.level == 0:
            raise ValueError("cannot truncate level 0")
        return LevelPermutation(self.d, self.level - 1, self.mapping[:: self.d] // self.d)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.mapping)

    def is_bijection(self) -> bool:
        return bool(np.array_equal(np.sort(self.mapping), np.arange(len(self.mapping))))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles over 0-based vertex indices."""
        seen = set()
        out = []
        m = self.mapping
        for i in range(len(m)):
            if i in seen or m[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = int(m[i])
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = int(m[j])
            out.append(tuple(cyc))
        return out


def vertex_index(v: Sequence[int], d: int) -> int:
    idx = 0
    for x in v:
        idx = idx * d + (x - 1)
    return idx


def index_vertex(idx: int, k: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        idx, r = divmod(idx, d)
        out.append(r + 1)
    return tuple(reversed(out))


class WreathSystem:
    """A self-similar action given by a recursion table.

    ``sections[i-1][x-1]`` is the section of a_i at vertex x, and
    ``root_perms[i-1][x-1]`` is a_i(x), both 1-based.  Set
    ``exponent_sum_invariant`` only when every identity word is known to have
    zero exponent vector; it enables a fast reject in :meth:`is_identity`.
    """

    def __init__(
        self,
        d: int,
        sections: Sequence[Sequence[GroupWord]],
        root_perms: Sequence[Sequence[int]],
        *,
        exponent_sum_invariant: bool = False,
        max_vertices: int = DEFAULT_MAX_VERTICES,
        name: str = "",
    ):
        if len(sections) != len(root_perms):
            raise ValueError("one section tuple and one root permutation per generator")
        self.d = d
        self.ngens = len(sections)
        self.name = name
        self.exponent_sum_invariant = exponent_sum_invariant
        self.max_vertices = max_vertices
        self.sections = tuple(tuple(s) for s in sections)
        self.root_perms = tuple(tuple(p) for p in root_perms)
        for i, (secs, perm) in enumerate(zip(self.sections, self.root_perms), start=1):
            if sorted(perm) != list(range(1, d + 1)):
                raise ValueError(f"root permutation of a{i} is not a bijection of 1..{d}")
            if len(secs) != d:
                raise ValueError(f"a{i} needs {d} sections")
            for s in secs:
                if s.max_index() > self.ngens:
                    raise GeneratorRangeError(f"section of a{i} uses an unknown generator")
        # 0-based lookup tables indexed by signed letter
        self._perm: dict[int, tuple[int, ...]] = {}
        self._sec: dict[int, tuple[tuple[int, ...], ...]] = {}
        for i in range(1, self.ngens + 1):
            p = tuple(y - 1 for y in self.root_perms[i - 1])
            pinv = [0] * d
            for x, y in enumerate(p):
                pinv[y] = x
            self._perm[i] = p
            self._perm[-i] = tuple(pinv)
            secs = tuple(s.letters for s in self.sections[i - 1])
            self._sec[i] = secs
            # a^-1|_x = (a|_{a^-1(x)})^-1
            self._sec[-i] = tuple(
                tuple(-y for y in reversed(secs[pinv[x]])) for x in range(d)
            )
        self._identity_memo: dict[tuple[int, ...], bool] = {}
        self._memo_lock = threading.Lock()
        self._gen_level_cache: dict[int, dict[int, np.ndarray]] = {}
        self._cache_lock = threading.Lock()

    @property
    def config(self) -> GroupConfig:
        return GroupConfig(self.d)

    # raw-tuple primitives

    def _check_word(self, w: GroupWord):
        if w.max_index() > self.ngens:
            raise GeneratorRangeError(f"generator index {w.max_index()} out of range 1..{self.ngens}")

    def _check_vertex(self, v: Sequence[int]):
        for x in v:
            if not 1 <= x <= self.d:
                raise GeneratorRangeError(f"vertex letter {x} out of range 1..{self.d}")

    def _root_image(self, letters: tuple[int, ...], x: int) -> int:
        perm = self._perm
        for a in letters:
            x = perm[a][x]
        return x

    def _section_raw(self, letters: tuple[int, ...], x: int) -> tuple[tuple[int, ...], int]:
        """Section at 0-based letter x and the image of x."""
        perm, sec = self._perm, self._sec
        out: list[int] = []
        for a in letters:
            s = sec[a][x]
            if s:
                for y in s:
                    if out and out[-1] == -y:
                        out.pop()
                    else:
                        out.append(y)
            x = perm[a][x]
        return tuple(out), x

    def _decompose_raw(self, letters: tuple[int, ...]) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
        """Root permutation (0-based images) and all first-level sections."""
        d = self.d
        perm, sec = self._perm, self._sec
        cur = list(range(d))
        outs: list[list[int]] = [[] for _ in range(d)]
        for a in letters:
            pa = perm[a]
            sa = sec[a]
            for x in range(d):
                c = cur[x]
                s = sa[c]
                if s:
                    o = outs[x]
                    for y in s:
                        if o and o[-1] == -y:
                            o.pop()
                        else:
                            o.append(y)
                cur[x] = pa[c]
        return tuple(cur), [tuple(o) for o in outs]

    def _exponents_zero(self, letters: tuple[int, ...]) -> bool:
        counts = [0] * (self.ngens + 1)
        for a in letters:
            if a > 0:
                counts[a] += 1
            else:
                counts[-a] -= 1
        return not any(counts)

    # public API

    def act(self, w: GroupWord, v: Sequence[int]) -> tuple[int, ...]:
        self._check_word(w)
        self._check_vertex(v)
        letters = w.letters
        out = []
        for x in v:
            s, y = self._section_raw(letters, x - 1)
            out.append(y + 1)
            letters = s
        return tuple(out)

    def section(self, w: GroupWord, u: Sequence[int]) -> GroupWord:
        self._check_word(w)
        self._check_vertex(u)
        letters = w.letters
        for x in u:
            letters, _ = self._section_raw(letters, x - 1)
        return GroupWord._from_reduced(letters)

    def decompose(self, w: GroupWord) -> tuple[tuple[GroupWord, ...], tuple[int, ...]]:
        """Wreath recursion of w: (sections at 1..d, root permutation 1-based)."""
        self._check_word(w)
        perm, secs = self._decompose_raw(w.letters)
        return (
            tuple(GroupWord._from_reduced(s) for s in secs),
            tuple(p + 1 for p in perm),
        )

    def root_perm(self, w: GroupWord) -> tuple[int, ...]:
        self._check_word(w)
        return tuple(self._root_image(w.letters, x) + 1 for x in range(self.d))

    def _guard(self, k: int):
        if k < 0:
            raise ValueError("level must be >= 0")
        if self.d**k > self.max_vertices:
            raise ResourceLimitError(
                f"level {k} has {self.d}^{k} vertices, above the bound {self.max_vertices}"
            )

    def _generator_level_arrays(self, k: int) -> dict[int, np.ndarray]:
        """Level-k permutation arrays for every signed letter, built from
        root permutations and level-(k-1) arrays of the sections."""
        cached = self._gen_level_cache.get(k)
        if cached is not None:
            return cached
        d = self.d
        if k == 0:
            table = {a: np.zeros(1, dtype=np.int64) for a in self._perm}
        else:
            lower = self._generator_level_arrays(k - 1)
            block = d ** (k - 1)
            table = {}
            for a in range(1, self.ngens + 1):
                arr = np.empty(d**k, dtype=np.int64)
                for x in range(d):
                    sub = self._compose_arrays(self._sec[a][x], lower, block)
                    arr[x * block:(x + 1) * block] = self._perm[a][x] * block + sub
                table[a] = arr
                table[-a] = np.argsort(arr)
        with self._cache_lock:
            self._gen_level_cache.setdefault(k, table)
        return self._gen_level_cache[k]

    @staticmethod
    def _compose_arrays(letters, table, size) -> np.ndarray:
        arr = np.arange(size, dtype=np.int64)
        for a in letters:
            arr = table[a][arr]
        return arr

    def level_perm(self, w: GroupWord, k: int) -> LevelPermutation:
        self._check_word(w)
        self._guard(k)
        table = self._generator_level_arrays(k)
        return LevelPermutation(self.d, k, self._compose_arrays(w.letters, table, self.d**k))

    def generator_level_perms(self, k: int) -> list[LevelPermutation]:
        return [self.level_perm(GroupWord.gen(i), k) for i in range(1, self.ngens + 1)]

    def is_identity(self, w: GroupWord) -> bool:
        return self.identity_closure(w)[0]

    def identity_closure(self, w: GroupWord) -> tuple[bool, int]:
        """Decide w = e; also return the number of words visited.

        Walks the closure of {w} under first-level sections.  Sections of a
        word never exceed its length, so the walk terminates.
        """
        self._check_word(w)
        start = w.letters
        if not start:
            return True, 1
        fast = self.exponent_sum_invariant
        if fast and not self._exponents_zero(start):
            return False, 1
        memo = self._identity_memo
        hit = memo.get(start)
        if hit is not None:
            return hit, 1
        identity = tuple(range(self.d))
        seen = {start}
        stack = [start]
        result = True
        while stack:
            u = stack.pop()
            perm, secs = self._decompose_raw(u)
            if perm != identity:
                result = False
                break
            for s in secs:
                if not s or s in seen:
                    continue
                if fast and not self._exponents_zero(s):
                    result = False
                    break
                known = memo.get(s)
                if known is False:
                    result = False
                    break
                seen.add(s)
                if known is None:
                    stack.append(s)
            if not result:
                break
        with self._memo_lock:
            if result:
                for s in seen:
                    memo[s] = True
            else:
                memo[start] = False
        return result, len(seen)

    def equal(self, u: GroupWord, v: GroupWord) -> bool:
        return self.is_identity(u * v.inverse())

    def sections_at_level(self, w: GroupWord, k: int) -> list[GroupWord]:
        """Sections at all level-k vertices in index order (no stabilizer check)."""
        self._check_word(w)
        self._guard(k)
        layer = [w.letters]
        for _ in range(k):
            nxt = []
            for letters in layer:
                _, secs = self._decompose_raw(letters)
                nxt.extend(secs)
            layer = nxt
        return [GroupWord._from_reduced(s) for s in layer]

    def section_tuple(self, w: GroupWord, k: int) -> list[GroupWord]:
        if not self.level_perm(w, k).is_identity():
            raise NotInStabilizerError(f"{w} is not in the level-{k} stabilizer")
        return self.sections_at_level(w, k)

    def in_level_stabilizer(self, w: GroupWord, k: int) -> bool:
        return self.level_perm(w, k).is_identity()

    def nontrivial_level(self, w: GroupWord) -> int | None:
        """Smallest k with level_perm(w, k) nontrivial, or None if w = e.

        Breadth-first over sections, so the first vertex with a nontrivial
        root permutation sits at minimal depth.
        """
        self._check_word(w)
        identity = tuple(range(self.d))
        seen = {w.letters}
        layer = [w.letters]
        depth = 0
        while layer:
            nxt = []
            for u in layer:
                perm, secs = self._decompose_raw(u)
                if perm != identity:
                    return depth + 1
                for s in secs:
                    if s and s not in seen:
                        seen.add(s)
                        nxt.append(s)
            layer = nxt
            depth += 1
        return None
