"""Random list-decoding trials: the soft decoder against the parity oracle.

    python scripts/decoding_trials.py --trials 200
"""
import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from rslattice.decoding import RSCode, list_radius_sq, rs_encode, rs_list_decode_l2, rs_list_decode_oracle
from rslattice.field_core import FieldPoly


@dataclass(frozen=True)
class TrialConfig:
    qs: tuple = (5, 7, 11)
    ks: tuple = (1, 2, 3)
    epsilon: Fraction = Fraction(1, 10)
    trials: int = 200
    seed: int = 7


def received(rng, code, eps):
    rsq = float(list_radius_sq(code.n - code.dimension, eps))
    c = rs_encode(code, FieldPoly(code.q, rng.integers(0, code.q, size=code.dimension).tolist()))
    e = rng.normal(size=code.n)
    e *= rng.uniform(0, 1.05) * sqrt(rsq) / np.linalg.norm(e)  # a few land just outside the ball
    return [a + Fraction(float(b)).limit_denominator(100) for a, b in zip(c, e)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=7)
    a = ap.parse_args()
    cfg = TrialConfig(trials=a.trials, seed=a.seed)
    rng = np.random.default_rng(cfg.seed)
    grid = [(q, k) for q in cfg.qs for k in cfg.ks if k < q - 1]
    sizes, mismatches, t0 = [], 0, time.time()
    for _ in range(cfg.trials):
        q, k = grid[int(rng.integers(len(grid)))]
        code = RSCode.full(q, q - k)
        y = received(rng, code, cfg.epsilon)
        got = set(rs_list_decode_l2(code, cfg.epsilon, y).vectors())
        want = set(rs_list_decode_oracle(code, cfg.epsilon, y).vectors())
        mismatches += got != want
        sizes.append(len(want))
    hist = np.bincount(sizes)
    print(f"trials={cfg.trials} mismatches={mismatches} seconds={time.time() - t0:.1f}")
    print("list size histogram:", {i: int(c) for i, c in enumerate(hist) if c})
    sys.exit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
