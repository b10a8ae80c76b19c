"""The groups G_d and their named elements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BranchLabError
from .tree import WreathSystem
from .words import IDENTITY, GroupConfig, GroupWord, comm, conj


def cyc(j: int, d: int) -> int:
    """Reduce j into 1..d."""
    return (j - 1) % d + 1


def a(i: int, d: int, power: int = 1) -> GroupWord:
    return GroupWord.gen(cyc(i, d), power)


@lru_cache(maxsize=None)
def gd_system(d: int) -> WreathSystem:
    """G_d: a_i = (.., a_i at i, a_{i+1} at i+1, ..)(i i+1), indices mod d."""
    GroupConfig(d)
    sections = []
    perms = []
    for i in range(1, d + 1):
        j = cyc(i + 1, d)
        secs = [IDENTITY] * d
        secs[i - 1] = GroupWord.gen(i)
        secs[j - 1] = GroupWord.gen(j)
        perm = list(range(1, d + 1))
        perm[i - 1], perm[j - 1] = j, i
        sections.append(secs)
        perms.append(perm)
    return WreathSystem(d, sections, perms, exponent_sum_invariant=True, name=f"G_{d}")


def perm_from_cycles(d: int, cycles) -> tuple[int, ...]:
    """Product of cycles over 1..d, the leftmost cycle acting first."""
    images = list(range(1, d + 1))
    for c in cycles:
        step = {c[t]: c[(t + 1) % len(c)] for t in range(len(c))}
        images = [step.get(y, y) for y in images]
    return tuple(images)


@dataclass(frozen=True)
class NamedElement:
    name: str
    d: int
    word: GroupWord
    expected_sections: tuple[GroupWord, ...]
    expected_perm: tuple[int, ...]

    def verify(self, sys: WreathSystem | None = None) -> bool:
        sys = sys or gd_system(self.d)
        secs, perm = sys.decompose(self.word)
        if perm != self.expected_perm:
            return False
        return all(sys.equal(s, t) for s, t in zip(secs, self.expected_sections))


def _trivial(d):
    return (IDENTITY,) * d


def xi_word(d: int, i: int) -> GroupWord:
    i1, i2 = i + 1, i + 2
    return comm(a(i, d), a(i1, d)) * comm(a(i1, d), a(i2, d)) * comm(a(i1, d, 2), a(i2, d)).inverse()


def xi(d: int, i: int) -> NamedElement:
    GroupConfig(d)
    perm = perm_from_cycles(d, [(cyc(i, d), cyc(i + 2, d)), (cyc(i + 1, d), cyc(i + 3, d))])
    return NamedElement(f"xi_{i}", d, xi_word(d, i), _trivial(d), perm)


def eta_word(d: int, i: int) -> GroupWord:
    # eta_1 = xi_{d-2} xi_{d-4} ... xi_3 . xi_2 xi_4 ... xi_{d-1} . xi_d
    order = list(range(d - 2, 2, -2)) + list(range(2, d, 2)) + [d]
    w = IDENTITY
    for j in order:
        w = w * xi_word(d, j)
    return w.shift(i - 1, d)


def eta(d: int, i: int) -> NamedElement:
    GroupConfig(d)
    perm = perm_from_cycles(d, [(cyc(i, d), cyc(i + 1, d), cyc(i + 2, d))])
    return NamedElement(f"eta_{i}", d, eta_word(d, i), _trivial(d), perm)


def consecutive_spread(d: int, i: int) -> NamedElement:
    """[a_i, a_{i+1}] eta_i^-1 = (.., a_{i+1}^-1 at i, a_{i+1} at i+1, ..)."""
    GroupConfig(d)
    j = cyc(i + 1, d)
    word = comm(a(i, d), a(j, d)) * eta_word(d, i).inverse()
    secs = list(_trivial(d))
    secs[i - 1] = GroupWord.gen(j, -1)
    secs[j - 1] = GroupWord.gen(j)
    return NamedElement(f"spread_{i}", d, word, tuple(secs), tuple(range(1, d + 1)))


class WitnessesDeferred(BranchLabError):
    code = "deferred"


def rist1_generators(d: int) -> list[NamedElement]:
    """The two first-level rigid witnesses and their index shifts.

    ``rist_a_s`` has section a_{s+2}^-1 a_{s+4} at vertex s+1, and
    ``rist_b_s`` has (a_{s+1} a_{s+2})^2 there; everything else trivial.
    """
    GroupConfig(d)
    if d < 5:
        raise WitnessesDeferred("displayed rigid witnesses need d >= 5; use witness_search for d = 3")
    base_a = (
        a(1, d, -1) * a(4, d, -1) * a(2, d, -1) * a(1, d) * a(3, d) * a(4, d)
        * xi_word(d, 2) * xi_word(d, 1)
    )
    base_b = (conj(a(1, d), a(2, d)) * xi_word(d, 1)) ** 2
    sec_a = a(2, d, -1) * a(4, d)
    sec_b = (a(1, d) * a(2, d)) ** 2
    ident = tuple(range(1, d + 1))
    out = []
    for s in range(d):
        for tag, word, sec in (("a", base_a, sec_a), ("b", base_b, sec_b)):
            secs = list(_trivial(d))
            secs[s] = sec.shift(s, d)
            out.append(NamedElement(f"rist_{tag}_{s + 1}", d, word.shift(s, d), tuple(secs), ident))
    return out


def all_named(d: int) -> list[NamedElement]:
    out = [xi(d, i) for i in range(1, d + 1)]
    out += [eta(d, i) for i in range(1, d + 1)]
    out += [consecutive_spread(d, i) for i in range(1, d + 1)]
    if d >= 5:
        out += rist1_generators(d)
    return out
