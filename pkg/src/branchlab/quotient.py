"""Arithmetic in St(k)/Rist(k), the connecting maps between levels, and
finite truncations of the rigid kernel.

A coset is stored as its residue vector n_1..n_{d^k} mod 2^(k+1): the coset
of (a_1^{n_1}, ..., a_1^{n_{d^k}}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import CosetError, NotInStabilizerError
from .tree import WreathSystem
from .words import GroupWord, total_exponent


def _vp(j: int, d: int) -> int:
    """d-adic valuation of j > 0."""
    s = 0
    while j % d == 0:
        j //= d
        s += 1
    return s


@dataclass(frozen=True)
class QuotientCoset:
    d: int
    k: int
    n: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise CosetError("level must be >= 1")
        if len(self.n) != self.d**self.k:
            raise CosetError(f"need {self.d ** self.k} residues, got {len(self.n)}")
        mod = self.modulus
        arr = np.asarray(self.n, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= mod):
            raise CosetError(f"residues must lie in [0, {mod})")
        bad = block_violations(arr, self.d, self.k)
        if bad:
            r, t = bad[0]
            raise CosetError(f"block congruence fails at r={r}, t={t}")

    @property
    def modulus(self) -> int:
        return 2 ** (self.k + 1)

    @classmethod
    def identity(cls, d: int, k: int) -> "QuotientCoset":
        return cls(d, k, (0,) * d**k)

    def __mul__(self, other: "QuotientCoset") -> "QuotientCoset":
        return coset_mul(self, other)

    def to_json(self) -> dict:
        return {"d": self.d, "k": self.k, "n": list(self.n)}

    @classmethod
    def from_json(cls, obj: dict) -> "QuotientCoset":
        return cls(int(obj["d"]), int(obj["k"]), tuple(int(x) for x in obj["n"]))


def block_violations(n: Sequence[int], d: int, k: int) -> list[tuple[int, int]]:
    arr = np.asarray(n, dtype=np.int64)
    out = []
    for r in range(1, k + 1):
        sums = arr.reshape(-1, d**r).sum(axis=1) % 2 ** (r + 1)
        out.extend((r, int(t)) for t in np.flatnonzero(sums))
    return out


def coset_of(sys: WreathSystem, w: GroupWord, k: int) -> QuotientCoset:
    if not sys.level_perm(w, k).is_identity():
        raise NotInStabilizerError(f"{w} is not in the level-{k} stabilizer")
    mod = 2 ** (k + 1)
    return QuotientCoset(sys.d, k, tuple(total_exponent(s) % mod for s in sys.sections_at_level(w, k)))


def coset_mul(a: QuotientCoset, b: QuotientCoset) -> QuotientCoset:
    if (a.d, a.k) != (b.d, b.k):
        raise CosetError("cosets live at different levels")
    mod = a.modulus
    return QuotientCoset(a.d, a.k, tuple((x + y) % mod for x, y in zip(a.n, b.n)))


def alphas(d: int, k: int) -> tuple[int, ...]:
    """Orders of the cyclic factors, indexed j = 1 .. d^k - 1."""
    return tuple(2 ** (k + 1) if j % d else 2 ** (k - _vp(j, d)) for j in range(1, d**k))


@dataclass(frozen=True)
class ThetaImage:
    d: int
    k: int
    l: tuple[int, ...]

    def __post_init__(self):
        al = alphas(self.d, self.k)
        if len(self.l) != len(al):
            raise CosetError(f"need {len(al)} components, got {len(self.l)}")
        if any(not 0 <= x < m for x, m in zip(self.l, al)):
            raise CosetError("component out of range")

    def __add__(self, other: "ThetaImage") -> "ThetaImage":
        al = alphas(self.d, self.k)
        return ThetaImage(self.d, self.k, tuple((x + y) % m for x, y, m in zip(self.l, other.l, al)))

    def to_json(self) -> dict:
        return {"d": self.d, "k": self.k, "l": list(self.l), "alpha": list(alphas(self.d, self.k))}

    @classmethod
    def from_json(cls, obj: dict) -> "ThetaImage":
        return cls(int(obj["d"]), int(obj["k"]), tuple(int(x) for x in obj["l"]))


def theta(c: QuotientCoset) -> ThetaImage:
    d, k, n = c.d, c.k, c.n
    out = []
    for j in range(1, d**k):
        s = _vp(j, d)
        if s == 0:
            out.append(n[j - 1])
        else:
            r = j // d**s
            block = sum(n[(r - 1) * d**s: r * d**s])
            out.append((block // 2 ** (s + 1)) % 2 ** (k - s))
    return ThetaImage(d, k, tuple(out))


def theta_inv(t: ThetaImage) -> QuotientCoset:
    d, k, l = t.d, t.k, t.l
    mod = 2 ** (k + 1)
    n = [0] * d**k
    for j in range(1, d**k):
        if j % d:
            n[j - 1] = l[j - 1]
    # dependent coordinates, lower valuations first
    for s in range(1, k):
        size = d**s
        for r in range(1, d ** (k - s)):
            if r % d == 0:
                continue
            j = size * r
            rest = sum(n[(r - 1) * size: j - 1])
            n[j - 1] = (2 ** (s + 1) * l[j - 1] - rest) % mod
    n[-1] = -sum(n[:-1]) % mod
    return QuotientCoset(d, k, tuple(n))


def rho(c: QuotientCoset) -> QuotientCoset:
    """The connecting map from level k to level k-1."""
    d, k = c.d, c.k
    if k < 2:
        raise CosetError("rho needs a coset at level >= 2")
    sums = np.asarray(c.n, dtype=np.int64).reshape(-1, d).sum(axis=1)
    return QuotientCoset(d, k - 1, tuple(((sums // 2) % 2**k).tolist()))


def index_exponent(d: int, k: int) -> int:
    """t with [St(k) : Rist(k)] = 2^t."""
    num = (k + 1) * d ** (k + 1) - (k + 3) * d**k + d ** (k - 1) + 1
    t, rem = divmod(num, d - 1)
    assert rem == 0
    return t


@dataclass(frozen=True)
class KernelElement:
    """Levels 1..K of a rigid-kernel element."""

    d: int
    tower: tuple[QuotientCoset, ...]

    def __post_init__(self):
        for lvl, c in enumerate(self.tower, start=1):
            if c.k != lvl or c.d != self.d:
                raise CosetError(f"tower entry {lvl} has the wrong shape")
        for upper, lower in zip(self.tower[1:], self.tower):
            if rho(upper) != lower:
                raise CosetError(f"tower not compatible between levels {lower.k} and {upper.k}")

    @property
    def depth(self) -> int:
        return len(self.tower)

    def __mul__(self, other: "KernelElement") -> "KernelElement":
        return KernelElement(self.d, tuple(a * b for a, b in zip(self.tower, other.tower)))

    def to_json(self) -> dict:
        return {"d": self.d, "K": self.depth, "tower": [list(c.n) for c in self.tower]}

    @classmethod
    def from_json(cls, obj: dict) -> "KernelElement":
        d = int(obj["d"])
        return cls(d, tuple(QuotientCoset(d, k, tuple(n)) for k, n in enumerate(obj["tower"], start=1)))


def free_positions(d: int, k: int) -> list[int]:
    """1-based coordinates j <= d^k with d not dividing j."""
    return [j for j in range(1, d**k + 1) if j % d]


@lru_cache(maxsize=None)
def _free_mask(d: int, k: int) -> np.ndarray:
    mask = np.ones(d**k, dtype=bool)
    mask[d - 1::d] = False
    mask.setflags(write=False)
    return mask


def kernel_from_free(d: int, free: Sequence[Sequence[int]]) -> KernelElement:
    """Unique kernel element whose coordinates at free positions are given.

    ``free[k-1]`` lists even values in [0, 2^(k+1)) for the positions of
    :func:`free_positions` at level k.
    """
    tower: list[QuotientCoset] = []
    prev: np.ndarray | None = None
    for k, vals in enumerate(free, start=1):
        mask = _free_mask(d, k)
        vals = np.asarray(vals, dtype=np.int64)
        if vals.shape != (int(mask.sum()),):
            raise CosetError(f"level {k} needs {int(mask.sum())} free values, got {vals.size}")
        mod = 2 ** (k + 1)
        bad = (vals % 2 != 0) | (vals < 0) | (vals >= mod)
        if bad.any():
            v = int(vals[np.argmax(bad)])
            raise CosetError(f"free value {v} at level {k} must be even and in [0, {mod})")
        n = np.zeros(d**k, dtype=np.int64)
        n[mask] = vals
        blocks = n.reshape(-1, d)
        rest = blocks[:, :-1].sum(axis=1)
        blocks[:, -1] = (-rest if k == 1 else 2 * prev - rest) % mod
        tower.append(QuotientCoset(d, k, tuple(n.tolist())))
        prev = n
    return KernelElement(d, tuple(tower))


def phi(el: KernelElement) -> list[list[int]]:
    """Halved free coordinates per level; level k lands in C_{2^k}^(d^k - d^(k-1))."""
    out = []
    for c in el.tower:
        n = np.asarray(c.n, dtype=np.int64)[_free_mask(el.d, c.k)]
        out.append(((n // 2) % 2**c.k).tolist())
    return out


def phi_inv(d: int, eta: Sequence[Sequence[int]]) -> KernelElement:
    return kernel_from_free(d, [2 * (np.asarray(v, dtype=np.int64) % 2**k) for k, v in enumerate(eta, start=1)])


def coset_order(c: QuotientCoset) -> int:
    mod = c.modulus
    out = 1
    for x in c.n:
        out = max(out, mod // math.gcd(x, mod))
    return out


@dataclass(frozen=True)
class TorsionProfile:
    orders: tuple[int, ...]
    finite_evidence: bool


def torsion_profile(el: KernelElement) -> TorsionProfile:
    """Orders of the truncations to depth 1..K.

    Evidence of finite order means the order has stopped growing and sits
    below 2^K; this says nothing certain about the untruncated element.
    """
    orders = []
    cur = 1
    for c in el.tower:
        cur = max(cur, coset_order(c))
        orders.append(cur)
    K = el.depth
    if K == 0:
        return TorsionProfile((), True)
    stable = K == 1 or orders[-1] == orders[-2]
    return TorsionProfile(tuple(orders), stable and orders[-1] < 2**K)


@dataclass
class BranchKernelReport:
    d: int
    k: int
    first_entry_total: int
    first_entry_in_H: bool
    tuple_admissible: bool
    forced_total: int
    forced_in_H: bool
    witness: GroupWord | None = None
    witness_total: int | None = None

    @property
    def passed(self) -> bool:
        ok = self.first_entry_in_H and self.tuple_admissible and self.forced_total == 2 and not self.forced_in_H
        if self.witness is not None:
            ok = ok and self.witness_total == self.forced_total
        return ok

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "first_entry_total": self.first_entry_total,
            "first_entry_in_H": self.first_entry_in_H,
            "tuple_admissible": self.tuple_admissible,
            "forced_total": self.forced_total,
            "forced_in_H": self.forced_in_H,
            "witness": str(self.witness) if self.witness is not None else None,
            "witness_total": self.witness_total,
            "conclusion": "Rist(k) is not contained in H" if self.passed else "check failed",
            "passed": self.passed,
        }


def branch_kernel_check(d: int, k: int, search_budget=None) -> BranchKernelReport:
    """Arithmetic behind the non-trivial branch kernel at level k.

    The tuple (a_1^(2^(k+1)), e, ..., e) is admissible and its first entry
    lies in H_k, so it is the image of a rigid element g.  Section totals
    double at each level, so |g|_A = 2^(k+1) / 2^k = 2, which is not 0 mod 4.
    With ``search_budget`` (k = 1 only) an actual g is searched for.
    """
    from .presets import gd_system
    from .stabilizers import in_H, tuple_criterion
    from .words import IDENTITY

    if k < 1:
        raise ValueError("k must be >= 1")
    first = GroupWord.gen(1, 2 ** (k + 1))
    tup = [first] + [IDENTITY] * (d**k - 1)
    forced, rem = divmod(total_exponent(first), 2**k)
    assert rem == 0
    report = BranchKernelReport(
        d=d,
        k=k,
        first_entry_total=total_exponent(first),
        first_entry_in_H=in_H(first, k),
        tuple_admissible=tuple_criterion(tup, d, k).is_zero(),
        forced_total=forced,
        forced_in_H=forced % 4 == 0,
    )
    if search_budget is not None and k == 1:
        from .search import witness_search

        res = witness_search(gd_system(d), tup, None, search_budget)
        if res.found:
            report.witness = res.word
            report.witness_total = total_exponent(res.word)
    return report
