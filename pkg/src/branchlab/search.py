"""Bounded search for elements with prescribed first-level sections.

Meet in the middle over products of a basis of named elements.  Elements are
matched by a fingerprint (a level permutation plus the exponent vectors of
the first-level sections), which multiplies like the elements themselves;
every candidate is then checked exactly with the word problem before it is
returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .presets import all_named
from .tree import WreathSystem
from .words import IDENTITY, GroupWord, exponent_vector


@dataclass(frozen=True)
class SearchBudget:
    radius: int = 3
    max_nodes: int = 20_000
    fingerprint_depth: int = 2


@dataclass
class SearchResult:
    found: bool
    word: GroupWord | None
    nodes: int
    exhausted: bool = False
    candidates_checked: int = 0


class _Fingerprint:
    __slots__ = ("perm", "exps", "root")

    def __init__(self, perm: np.ndarray, exps: np.ndarray, root: np.ndarray):
        self.perm = perm  # level-(m+1) permutation
        self.exps = exps  # d x d, row x = exponent vector of the section at x
        self.root = root  # level-1 permutation, 0-based

    def __mul__(self, other: "_Fingerprint") -> "_Fingerprint":
        return _Fingerprint(
            other.perm[self.perm],
            self.exps + other.exps[self.root],
            other.root[self.root],
        )

    def inverse(self) -> "_Fingerprint":
        rinv = np.argsort(self.root)
        return _Fingerprint(np.argsort(self.perm), -self.exps[rinv], rinv)

    def key(self) -> bytes:
        return self.perm.tobytes() + self.exps.tobytes()


def _fingerprint_of_tuple(sys: WreathSystem, sections: Sequence[GroupWord], perm: Sequence[int], m: int) -> _Fingerprint:
    d = sys.d
    block = d**m
    arr = np.empty(d * block, dtype=np.int64)
    for x in range(d):
        arr[x * block:(x + 1) * block] = (perm[x] - 1) * block + sys.level_perm(sections[x], m).mapping
    exps = np.array([exponent_vector(s, d).components for s in sections], dtype=np.int64)
    return _Fingerprint(arr, exps, np.array([p - 1 for p in perm], dtype=np.int64))


def _fingerprint(sys: WreathSystem, w: GroupWord, m: int) -> _Fingerprint:
    secs, perm = sys.decompose(w)
    return _fingerprint_of_tuple(sys, secs, perm, m)


def default_basis(d: int) -> list[GroupWord]:
    words = [GroupWord.gen(i) for i in range(1, d + 1)]
    words += [e.word for e in all_named(d)]
    out = []
    seen = set()
    for w in words:
        for x in (w, w.inverse()):
            if x and x not in seen:
                seen.add(x)
                out.append(x)
    return out


def witness_search(
    sys: WreathSystem,
    target: Sequence[GroupWord],
    target_perm: Sequence[int] | None = None,
    budget: SearchBudget = SearchBudget(),
    basis: Sequence[GroupWord] | None = None,
) -> SearchResult:
    """Look for w with root permutation ``target_perm`` and w|_x = target[x].

    A negative result only means nothing was found within the budget.
    """
    d = sys.d
    target = tuple(target)
    if len(target) != d:
        raise ValueError(f"target needs {d} sections")
    target_perm = tuple(target_perm) if target_perm is not None else tuple(range(1, d + 1))
    basis = list(basis) if basis is not None else default_basis(d)
    m = budget.fingerprint_depth

    def verify(w: GroupWord) -> bool:
        secs, perm = sys.decompose(w)
        return perm == target_perm and all(sys.equal(s, t) for s, t in zip(secs, target))

    # ball of products of at most `radius` basis words, deduplicated by signature
    ball: list[tuple[GroupWord, _Fingerprint]] = [(IDENTITY, _fingerprint(sys, IDENTITY, m))]
    seen = {sys.decompose(IDENTITY)}
    frontier = list(ball)
    basis_fp = [(b, _fingerprint(sys, b, m)) for b in basis]
    exhausted = False
    for _ in range(budget.radius):
        nxt = []
        for w, fp in frontier:
            for b, bfp in basis_fp:
                u = w * b
                sig = sys.decompose(u)
                if sig in seen:
                    continue
                seen.add(sig)
                nxt.append((u, fp * bfp))
                if len(ball) + len(nxt) >= budget.max_nodes:
                    exhausted = True
                    break
            if exhausted:
                break
        ball.extend(nxt)
        frontier = nxt
        if exhausted or not nxt:
            break

    index: dict[bytes, list[GroupWord]] = {}
    for w, fp in ball:
        index.setdefault(fp.key(), []).append(w)
    goal = _fingerprint_of_tuple(sys, target, target_perm, m)
    checked = 0
    # shortest candidates first
    for u, ufp in ball:
        need = (ufp.inverse() * goal).key()
        for v in index.get(need, ()):
            w = u * v
            checked += 1
            if verify(w):
                return SearchResult(True, w, len(ball), exhausted, checked)
    return SearchResult(False, None, len(ball), exhausted, checked)
