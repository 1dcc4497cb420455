"""Fincke-Pohst style enumeration of lattice points in a Euclidean ball.

Pruning uses floating-point Gram-Schmidt data with a relative slack, so the
enumeration can only over-report candidates; callers re-check every candidate
with exact integer/rational arithmetic.
"""
from __future__ import annotations

from fractions import Fraction
from math import ceil, floor, sqrt
from typing import Iterator, Sequence

import numpy as np

from .errors import DEFAULT_WORK_LIMIT, WorkLimitExceeded

SLACK = 1e-7


def _cholesky(cols: Sequence[Sequence[int]]) -> np.ndarray:
    B = np.array(cols, dtype=float).T  # d x R
    G = B.T @ B
    return np.linalg.cholesky(G).T  # upper triangular R with G = R^T R


def points_in_ball(cols: Sequence[Sequence[int]], radius_sq, center: Sequence | None = None,
                   work_limit: int | None = DEFAULT_WORK_LIMIT) -> Iterator[tuple[int, ...]]:
    """Coefficient vectors x with ||B x - center||_2^2 <= radius_sq (superset, see module doc).

    ``cols`` must be linearly independent.
    """
    R = len(cols)
    if R == 0:
        yield ()
        return
    Rm = _cholesky(cols)
    B = np.array(cols, dtype=float).T
    r2 = float(radius_sq)
    if center is None:
        y = np.zeros(R)
    else:
        c = np.array([float(Fraction(v)) for v in center])
        y, *_ = np.linalg.lstsq(B, c, rcond=None)
        perp = c - B @ y
        r2 -= float(perp @ perp)
    r2 = r2 * (1 + SLACK) + SLACK
    if r2 < 0:
        return
    nodes = 0
    x = [0] * R
    diag = np.diag(Rm)

    def rec(i, partial):
        nonlocal nodes
        nodes += 1
        if work_limit is not None and nodes > work_limit:
            raise WorkLimitExceeded(f"enumeration exceeded {work_limit} nodes")
        # offset from the already fixed coordinates j > i
        off = sum(Rm[i, j] * (x[j] - y[j]) for j in range(i + 1, R))
        centre = y[i] - off / diag[i]
        rem = r2 - partial
        if rem < 0:
            return
        half = sqrt(rem) / diag[i]
        lo, hi = ceil(centre - half - SLACK), floor(centre + half + SLACK)
        for xi in range(lo, hi + 1):
            t = diag[i] * (xi - y[i]) + off
            np_ = partial + t * t
            if np_ <= r2:
                x[i] = xi
                if i == 0:
                    yield tuple(x)
                else:
                    yield from rec(i - 1, np_)
        x[i] = 0

    yield from rec(R - 1, 0.0)


def l2_radius_sq_for_lp(p: int, radius_pow, dim: int) -> float:
    """A Euclidean radius^2 whose ball contains the l_p ball ||v||_p^p <= radius_pow."""
    rp = float(Fraction(radius_pow))
    if rp <= 0:
        return 0.0
    if p <= 2:
        return rp ** (2 / p)
    return dim ** (1 - 2 / p) * rp ** (2 / p)


def lp_pow(v: Sequence, p: int):
    return sum(abs(a) ** p for a in v)


def combine(cols, coeffs):
    d = len(cols[0])
    out = [0] * d
    for a, c in zip(coeffs, cols):
        if a:
            for i, v in enumerate(c):
                out[i] += a * v
    return out
