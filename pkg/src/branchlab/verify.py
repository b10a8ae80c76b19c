"""Seeded property suites run by ``branchlab verify``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import quotient as qk
from .indices import aut_index_wreath, gd_index, hausdorff_dimension, index_table
from .permgroup import group_order
from .presets import all_named, gd_system, xi
from .sampling import random_positive_word, random_stabilizer_word, random_word
from .stabilizers import in_H, in_level_stabilizer, in_rigid_stabilizer, tuple_criterion
from .trace import growth_count, monoid_equal
from .words import GroupWord, exponent_vector, format_word, parse, total_exponent


@dataclass
class VerifyConfig:
    d: int = 3
    seed: int = 0
    samples: int = 500
    max_len: int = 10
    max_level: int = 2


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str):
        self.checked += 1
        if not ok and len(self.failures) < 20:
            self.failures.append(message)

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checked": self.checked, "failures": self.failures}


def suite_words(cfg: VerifyConfig, rng: random.Random) -> SuiteResult:
    res = SuiteResult("words")
    d = cfg.d
    for _ in range(cfg.samples):
        u, v = random_word(rng, d, cfg.max_len), random_word(rng, d, cfg.max_len)
        ev = exponent_vector(u * v, d)
        res.check(ev == exponent_vector(u, d) + exponent_vector(v, d), f"additivity {u} | {v}")
        res.check(exponent_vector(u.inverse(), d) == -exponent_vector(u, d), f"inverse {u}")
        res.check(GroupWord(u.letters) == u, f"idempotent {u}")
        res.check(parse(format_word(u), d) == u, f"round trip {u}")
    return res


def suite_tree(cfg: VerifyConfig, rng: random.Random) -> SuiteResult:
    res = SuiteResult("tree")
    d = cfg.d
    sys = gd_system(d)
    for _ in range(cfg.samples):
        w = random_word(rng, d, cfg.max_len)
        u = tuple(rng.randint(1, d) for _ in range(rng.randint(0, 3)))
        v = tuple(rng.randint(1, d) for _ in range(rng.randint(0, 3)))
        su = sys.section(w, u)
        res.check(sys.section(w, u + v) == sys.section(su, v), f"section composition {w} at {u}|{v}")
        res.check(sys.act(w, u + v) == sys.act(w, u) + sys.act(su, v), f"action composition {w}")
        secs, perm = sys.decompose(w)
        res.check(sum(total_exponent(s) for s in secs) == 2 * total_exponent(w), f"doubling {w}")
        even_perm = _perm_parity(perm) == 0
        res.check(even_perm == (total_exponent(w) % 2 == 0), f"parity {w}")
        ident = sys.is_identity(w)
        if ident:
            res.check(exponent_vector(w, d).is_zero(), f"exponent sum of identity {w}")
        lvl = sys.nontrivial_level(w)
        res.check((lvl is None) == ident, f"decision paths disagree on {w}")
        if lvl is not None and lvl <= 4:
            res.check(not sys.level_perm(w, lvl).is_identity(), f"level {lvl} trivial for {w}")
            res.check(sys.level_perm(w, lvl - 1).is_identity(), f"level {lvl - 1} nontrivial for {w}")
        pw = GroupWord(random_positive_word(rng, d, cfg.max_len))
        for x, s in enumerate(sys.decompose(pw)[0], start=1):
            res.check(not s or s.letters[0] == x, f"section of {pw} at {x} starts wrong")
            for p, q in zip(s.letters, s.letters[1:]):
                res.check((q - p) % d in (1, d - 1), f"adjacent pair a{p} a{q} in section of {pw}")
    return res


def _perm_parity(perm) -> int:
    seen = set()
    parity = 0
    for i in range(1, len(perm) + 1):
        if i in seen:
            continue
        j, n = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j - 1]
            n += 1
        parity ^= (n - 1) & 1
    return parity


def suite_presets(cfg: VerifyConfig, rng: random.Random) -> SuiteResult:
    res = SuiteResult("presets")
    d = cfg.d
    sys = gd_system(d)
    for el in all_named(d):
        res.check(el.verify(sys), f"{el.name} signature")
    if d >= 5:
        for i in range(1, d + 1):
            res.check(sys.is_identity(xi(d, i).word ** 2), f"xi_{i}^2 != e")
    return res


def suite_stab(cfg: VerifyConfig, rng: random.Random) -> SuiteResult:
    res = SuiteResult("stab")
    d = cfg.d
    sys = gd_system(d)
    for k in range(1, cfg.max_level + 1):
        for _ in range(cfg.samples):
            w = random_word(rng, d, cfg.max_len) if rng.random() < 0.5 else random_stabilizer_word(rng, sys, k)
            if in_level_stabilizer(sys, w, k):
                prof = tuple_criterion(sys.section_tuple(w, k), d, k)
                res.check(prof.is_zero(), f"criterion fails for {w} at level {k}: {prof.violations()[:3]}")
            res.check(not in_H(w, k + 1) or in_H(w, k), f"H nesting {w}")
        low = GroupWord.gen(1, 2 ** (k + 1))
        res.check(in_H(low, k) and not in_H(low, k + 1), f"H_{k} = H_{k + 1}")
    for el in all_named(d):
        if in_level_stabilizer(sys, el.word, 1):
            res.check(tuple_criterion(sys.section_tuple(el.word, 1), d, 1).is_zero(), f"{el.name} criterion")
        if el.name.startswith("rist_"):
            res.check(in_rigid_stabilizer(sys, el.word, 1), f"{el.name} not rigid")
    return res


def suite_quotient(cfg: VerifyConfig, rng: random.Random) -> SuiteResult:
    res = SuiteResult("quotient")
    d = cfg.d
    sys = gd_system(d)
    for k in range(1, cfg.max_level + 1):
        for _ in range(max(1, cfg.samples // 5)):
            u = random_stabilizer_word(rng, sys, k)
            v = random_stabilizer_word(rng, sys, k)
            cu, cv = qk.coset_of(sys, u, k), qk.coset_of(sys, v, k)
            res.check(qk.coset_of(sys, u * v, k) == qk.coset_mul(cu, cv), f"coset product {u} | {v}")
            res.check(qk.theta_inv(qk.theta(cu)) == cu, f"theta round trip {cu.n}")
            res.check(qk.theta(cu * cv) == qk.theta(cu) + qk.theta(cv), f"theta homomorphism at level {k}")
            w = random_stabilizer_word(rng, sys, k + 1)
            res.check(qk.rho(qk.coset_of(sys, w, k + 1)) == qk.coset_of(sys, w, k), f"rho consistency {w}")
    for K in range(1, 5):
        for _ in range(max(1, cfg.samples // 10)):
            eta = [[rng.randrange(2**k) for _ in qk.free_positions(d, k)] for k in range(1, K + 1)]
            el = qk.phi_inv(d, eta)
            res.check(qk.phi(el) == eta, f"phi round trip depth {K}")
            res.check(all(x % 2 == 0 for c in el.tower for x in c.n), "odd kernel coordinate")
    for k in (1, 2, 3):
        res.check(qk.branch_kernel_check(d, k).passed, f"branch kernel arithmetic at k={k}")
    return res


def suite_trace(cfg: VerifyConfig, rng: random.Random) -> SuiteResult:
    res = SuiteResult("trace")
    d = cfg.d
    sys = gd_system(d)
    max_len = 3 if d > 5 else 4 if d == 5 else 5
    words = [w for n in range(max_len + 1) for w in itertools.product(range(1, d + 1), repeat=n)]
    by_content: dict[tuple, list] = {}
    for w in words:
        by_content.setdefault(tuple(sorted(w)), []).append(w)
    for group in by_content.values():
        for u, v in itertools.product(group, repeat=2):
            res.check(monoid_equal(u, v, d) == sys.equal(GroupWord(u), GroupWord(v)), f"trace/group disagree {u} {v}")
    for n in range(0, 9):
        res.check(growth_count(d, n) >= 2**n, f"growth below 2^{n}")
    return res


def suite_indices(cfg: VerifyConfig, rng: random.Random) -> SuiteResult:
    res = SuiteResult("indices")
    d = cfg.d
    sys = gd_system(d)
    kmax = 2 if d <= 5 else 1
    for k in range(1, kmax + 1):
        res.check(group_order(sys.generator_level_perms(k), seed=cfg.seed) == gd_index(d, k).value, f"order at level {k}")
    for row in index_table(d, 6):
        res.check(row.gd.value == gd_index(d, row.k).value * row.st_step.value, f"telescoping at k={row.k}")
        res.check(row.aut.value == aut_index_wreath(d, row.k + 1), f"wreath order at k={row.k}")
    h = hausdorff_dimension(d, 20)
    res.check(abs(h.ratios[-1] - h.value) < 1e-6, "hausdorff ratios do not converge")
    return res


SUITES: dict[str, Callable[[VerifyConfig, random.Random], SuiteResult]] = {
    "words": suite_words,
    "tree": suite_tree,
    "presets": suite_presets,
    "stab": suite_stab,
    "quotient": suite_quotient,
    "trace": suite_trace,
    "indices": suite_indices,
}


def run_suites(cfg: VerifyConfig, names: list[str] | None = None) -> list[SuiteResult]:
    out = []
    for name in names or list(SUITES):
        rng = random.Random(f"{cfg.seed}:{name}:{cfg.d}")
        out.append(SUITES[name](cfg, rng))
    return out
