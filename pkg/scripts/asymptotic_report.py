"""Asymptotic gadget parameters and the density inequality as r grows.

    python scripts/asymptotic_report.py --p 1 --alpha 3/4 --r-max 6
"""
import argparse
import csv
import sys
from fractions import Fraction

from rslattice.local_density import asymptotic_parameters


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=1)
    ap.add_argument("--alpha", type=Fraction, default=Fraction(3, 4))
    ap.add_argument("--delta", type=Fraction, default=Fraction(1, 4))
    ap.add_argument("--r-max", type=int, default=6)
    a = ap.parse_args()
    w = csv.writer(sys.stdout)
    w.writerow(["r", "epsilon", "k", "h", "ell", "q_lower", "q", "log_lhs", "log_rhs", "holds"])
    for r in range(1, a.r_max + 1):
        rep = asymptotic_parameters(a.p, a.alpha, r, a.delta)
        w.writerow([r, rep.epsilon, rep.k, rep.h, rep.ell, rep.q_lower, rep.q,
                    f"{rep.log_lhs:.6g}", f"{rep.log_rhs:.6g}", rep.inequality_holds])
        sys.stdout.flush()


if __name__ == "__main__":
    main()
