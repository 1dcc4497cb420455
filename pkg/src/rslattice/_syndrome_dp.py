"""Small helpers for dynamic programs indexed by syndromes in F_q^k.

A syndrome table is a numpy array of shape ``(q,) * k`` (possibly with leading
extra axes).  Adding a fixed vector ``v`` to every syndrome is a cyclic roll.
"""
from __future__ import annotations

import numpy as np


def shift(table: np.ndarray, vec, k: int) -> np.ndarray:
    """``out[s + vec] = table[s]`` over the trailing ``k`` syndrome axes."""
    nd = table.ndim
    axes = tuple(range(nd - k, nd))
    shifts = tuple(int(v) for v in vec)
    if not any(shifts):
        return table.copy()
    return np.roll(table, shifts, axis=axes)


def column_vectors(rows, q: int):
    """Columns of a k x n matrix as lists of residues."""
    n = len(rows[0])
    return [[row[j] % q for row in rows] for j in range(n)]


def scaled(vec, c: int, q: int):
    return [(c * v) % q for v in vec]


def idx(s) -> tuple:
    return tuple(int(v) for v in s)


def count_dtype(bound: int):
    """int64 when values provably fit, else Python ints (object arrays)."""
    return np.int64 if bound < 2**62 else object
