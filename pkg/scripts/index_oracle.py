"""Compare Schreier-Sims orders of level actions with the closed-form indices."""

import argparse
import time
from dataclasses import dataclass

from branchlab.indices import gd_index
from branchlab.permgroup import group_order
from branchlab.presets import gd_system


@dataclass
class Config:
    cases: tuple = ((3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1))
    seed: int = 0


def main(cfg: Config):
    print("d k order closed_form match seconds")
    for d, k in cfg.cases:
        t0 = time.perf_counter()
        order = group_order(gd_system(d).generator_level_perms(k), seed=cfg.seed)
        closed = gd_index(d, k).value
        print(d, k, order, closed, order == closed, f"{time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    main(Config(seed=ap.parse_args().seed))
