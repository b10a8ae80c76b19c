"""Finite index ratios r_k against the limiting Hausdorff dimension."""

import argparse
from dataclasses import dataclass

import mpmath

from branchlab.indices import hausdorff_dimension


@dataclass
class Config:
    degrees: tuple = (3, 5, 7)
    k_max: int = 25
    dps: int = 40


def main(cfg: Config):
    for d in cfg.degrees:
        res = hausdorff_dimension(d, cfg.k_max, cfg.dps)
        print(f"d={d} limit={mpmath.nstr(res.value, 20)}")
        for k, r in enumerate(res.ratios, start=1):
            print(f"  k={k:2d} r_k={mpmath.nstr(r, 20)} gap={mpmath.nstr(r - res.value, 5)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=25)
    ap.add_argument("--dps", type=int, default=40)
    a = ap.parse_args()
    main(Config(k_max=a.kmax, dps=a.dps))
