"""Theta profiles and lattice point count bounds on a grid of temperatures.

    python scripts/theta_sweep.py --q 5 --k 1
"""
import argparse
import csv
import sys
from dataclasses import dataclass

from rslattice.derand_lab import LineCoset, ParityCoset, np_bounds, theta
from rslattice.rs_lattice import build_parity_check


@dataclass(frozen=True)
class ThetaConfig:
    q: int = 5
    k: int = 1
    p: int = 1
    taus: tuple = (0.2, 0.5, 1.0, 2.0)
    deltas: tuple = (0.3, 0.6, 1.0)
    r_pow_p: int = 3


def cosets(cfg: ThetaConfig):
    yield "line", LineCoset()
    H = build_parity_check(cfg.q, cfg.k)
    for u in [(0,) * cfg.k, (1,) + (0,) * (cfg.k - 1)]:
        yield f"parity{u}", ParityCoset(H, u)


def run(cfg: ThetaConfig):
    for name, coset in cosets(cfg):
        for tau in cfg.taus:
            prof = theta(cfg.p, tau, coset)
            for delta in cfg.deltas:
                rep = np_bounds(cfg.p, cfg.r_pow_p, coset, tau, delta)
                yield {"coset": name, "tau": tau, "theta": f"{prof.theta:.10g}", "mu": f"{prof.mu:.10g}",
                       "delta": delta, "count": rep.count, "upper": f"{rep.upper_bound:.6g}",
                       "h_p": f"{rep.h_p:.6g}", "lower": f"{rep.lower_bound:.6g}",
                       "ok": rep.upper_ok and rep.lower_ok}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--p", type=int, default=1)
    ap.add_argument("--r-pow-p", type=int, default=3)
    a = ap.parse_args()
    cfg = ThetaConfig(q=a.q, k=a.k, p=a.p, r_pow_p=a.r_pow_p)
    w = None
    for row in run(cfg):
        if w is None:
            w = csv.DictWriter(sys.stdout, fieldnames=list(row))
            w.writeheader()
        w.writerow(row)


if __name__ == "__main__":
    main()
