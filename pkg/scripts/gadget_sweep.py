"""Failure rate of the desk-mode gadget generator over a (q, r) grid.

    python scripts/gadget_sweep.py --seeds 100 --k 2
"""
import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from rslattice.errors import VerificationFailed
from rslattice.local_density import generate_gadget


@dataclass(frozen=True)
class SweepConfig:
    qs: tuple = (5, 7, 11, 13)
    rs: tuple = (1, 2, 3)
    k: int = 2
    p: int = 1
    alpha: Fraction = Fraction(3, 4)
    seeds: int = 100


def run(cfg: SweepConfig):
    for q in cfg.qs:
        for r in cfg.rs:
            fails = 0
            for seed in range(cfg.seeds):
                try:
                    generate_gadget(cfg.p, cfg.alpha, r, q, cfg.k, seed=seed)
                except VerificationFailed:
                    fails += 1
            yield {"q": q, "r": r, "k": cfg.k, "seeds": cfg.seeds, "failures": fails,
                   "rate": round(fails / cfg.seeds, 4)}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--q", default="5,7,11,13")
    ap.add_argument("--r", default="1,2,3")
    a = ap.parse_args()
    cfg = SweepConfig(qs=tuple(map(int, a.q.split(","))), rs=tuple(map(int, a.r.split(","))),
                      k=a.k, seeds=a.seeds)
    w = csv.DictWriter(sys.stdout, fieldnames=["q", "r", "k", "seeds", "failures", "rate"])
    w.writeheader()
    for row in run(cfg):
        w.writerow(row)
        sys.stdout.flush()


if __name__ == "__main__":
    main()
