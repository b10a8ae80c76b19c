"""Search for an element of G_3 with sections (a_1^4, e, e) and trivial root action.

No closed-form rigid witness is displayed for d = 3, so one is found by a
meet-in-the-middle search and then checked exactly.
"""

import argparse
import time
from dataclasses import dataclass

from branchlab.presets import gd_system
from branchlab.search import SearchBudget, witness_search
from branchlab.stabilizers import in_H, in_rigid_stabilizer
from branchlab.words import IDENTITY, GroupWord, format_word, total_exponent


@dataclass
class Config:
    d: int = 3
    power: int = 4
    radius: int = 4
    max_nodes: int = 100_000


def main(cfg: Config):
    sys = gd_system(cfg.d)
    target = [GroupWord.gen(1, cfg.power)] + [IDENTITY] * (cfg.d - 1)
    t0 = time.perf_counter()
    res = witness_search(sys, target, budget=SearchBudget(radius=cfg.radius, max_nodes=cfg.max_nodes))
    dt = time.perf_counter() - t0
    if not res.found:
        print(f"not found (nodes={res.nodes}, exhausted={res.exhausted}, {dt:.1f}s)")
        return
    w = res.word
    print(f"found in {dt:.1f}s, length {len(w)}: {format_word(w)}")
    print("total exponent:", total_exponent(w), "in H_1:", in_H(w, 1))
    print("rigid at level 1:", in_rigid_stabilizer(sys, w, 1))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--radius", type=int, default=4)
    ap.add_argument("--max-nodes", type=int, default=100_000)
    a = ap.parse_args()
    main(Config(d=a.d, radius=a.radius, max_nodes=a.max_nodes))
