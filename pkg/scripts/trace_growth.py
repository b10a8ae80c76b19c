"""Growth of the positive monoid: number of commutation classes of length n."""

import argparse
import csv
import sys
from dataclasses import dataclass

from branchlab.trace import growth_count


@dataclass
class Config:
    degrees: tuple = (3, 5, 7, 9)
    n_max: int = 12


def main(cfg: Config):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["d", "n", "count", "count/2^n", "count/d^n"])
    for d in cfg.degrees:
        for n in range(cfg.n_max + 1):
            c = growth_count(d, n)
            w.writerow([d, n, c, f"{c / 2**n:.4g}", f"{c / d**n:.4g}"])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, action="append")
    ap.add_argument("--n-max", type=int, default=12)
    a = ap.parse_args()
    main(Config(degrees=tuple(a.d) if a.d else Config.degrees, n_max=a.n_max))
