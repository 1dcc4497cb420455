"""Dense binary cosets, biased projections and locally dense gadgets.

The gadget is a lattice basis A with minimum distance at least ell (in
p-th power), a shift x, and a 0/1 matrix T such that T maps the short vectors
of x + L(A) onto every point of the hypercube {0,1}^r.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial, floor, isqrt, log, sqrt
from typing import Sequence

import numpy as np

from . import _syndrome_dp as sdp
from .errors import DEFAULT_WORK_LIMIT, VerificationFailed, check_work
from .field_core import MR_EXACT_BOUND, find_prime_at_least
from .rs_lattice import (
    LatticeBasis,
    ParityCheckMatrix,
    Syndrome,
    build_parity_check,
    enumerate_coset_vectors,
    lattice_basis,
    min_dist_certified_bound,
    solve_in_basis,
    syndrome,
)

DEFAULT_RETRIES = 10


@dataclass(frozen=True)
class CosetCount:
    u: Syndrome
    h: int
    count: int


@dataclass
class LocallyDenseGadget:
    p: int
    alpha: Fraction
    ell: int
    q: int
    k: int
    x: list[int]
    T: list[list[int]]
    A: LatticeBasis
    cover: dict = field(default_factory=dict, repr=False)  # hypercube point -> short coset vector

    @property
    def r(self) -> int:
        return len(self.T)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def radius_pow(self) -> Fraction:
        """alpha^p * ell, the p-th power radius of the short coset vectors."""
        return self.alpha**self.p * self.ell

    def H(self) -> ParityCheckMatrix:
        return self.A.source if self.A.source is not None else build_parity_check(self.q, self.k)

    def coefficients_for(self, c: Sequence[int]) -> list[int]:
        """z with A z + x = v, where v is the stored short vector mapping to c."""
        v = self.cover[tuple(c)]
        z = solve_in_basis(self.A, [a - b for a, b in zip(v, self.x)])
        if z is None:
            raise VerificationFailed("cover vector is not in the shifted lattice")
        return z

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "alpha": [self.alpha.numerator, self.alpha.denominator],
            "ell": self.ell,
            "q": self.q,
            "k": self.k,
            "x": list(self.x),
            "T": [list(r) for r in self.T],
            "basis": [list(c) for c in self.A.columns],
        }

    @classmethod
    def from_json(cls, d: dict) -> "LocallyDenseGadget":
        H = build_parity_check(d["q"], d["k"])
        A = LatticeBasis(tuple(tuple(c) for c in d["basis"]), source=H)
        g = cls(d["p"], Fraction(*d["alpha"]), d["ell"], d["q"], d["k"], list(d["x"]), [list(r) for r in d["T"]], A)
        return g


@dataclass(frozen=True)
class ParameterReport:
    p: int
    alpha: Fraction
    r: int
    delta: Fraction
    epsilon: Fraction
    k: int
    q_lower: int
    q: int | None
    h: int
    ell: int
    log_lhs: float
    log_rhs: float

    @property
    def inequality_holds(self) -> bool:
        return self.log_lhs >= self.log_rhs


# -- counting and sampling --------------------------------------------------

def coset_count_table(H: ParityCheckMatrix, h: int, work_limit: int | None = DEFAULT_WORK_LIMIT) -> np.ndarray:
    """Array K[u] = #{x binary, weight h, Hx = u} over all q^k syndromes."""
    q, k, n = H.q, H.k, H.n
    if not 0 <= h <= n:
        raise ValueError("need 0 <= h <= |S|")
    check_work(q**k * (h + 1) * n, work_limit, "coset count DP")
    dt = sdp.count_dtype(comb(n, h))
    # dp[w] = syndrome table of weight-w prefixes
    dp = np.zeros((h + 1,) + (q,) * k, dtype=dt)
    dp[(0,) + (0,) * k] = 1
    for col in H.columns:
        moved = sdp.shift(dp[:-1], col, k)
        dp[1:] = dp[1:] + moved
    return dp[h]


def count_binary_coset_vectors(H: ParityCheckMatrix, u, h: int,
                               work_limit: int | None = DEFAULT_WORK_LIMIT) -> CosetCount:
    u = u if isinstance(u, Syndrome) else Syndrome(H.q, tuple(u))
    if len(u) != H.k:
        raise ValueError("syndrome length must equal k")
    table = coset_count_table(H, h, work_limit)
    return CosetCount(u, h, int(table[sdp.idx(u.values)]))


def sample_dense_shift(H: ParityCheckMatrix, h: int, seed) -> list[int]:
    """Uniform element of B_{n,h}: h ones at distinct random positions."""
    n = H.n
    if not 0 <= h <= n:
        raise ValueError("need 0 <= h <= n")
    rng = np.random.default_rng(seed)
    x = [0] * n
    for i in rng.choice(n, size=h, replace=False):
        x[int(i)] = 1
    return x


def pigeonhole_bound(q: int, k: int, h: int, n: int | None = None) -> tuple[Fraction, int]:
    n = q if n is None else n
    if not 0 <= h <= n:
        raise ValueError("need 0 <= h <= n")
    b = Fraction(comb(n, h), q**k)
    return b, floor(b)


def sauer_bias(r: int, h: int) -> Fraction:
    return Fraction(1, 4 * h * r)


def sample_sauer_matrix(r: int, n: int, h: int, seed) -> list[list[int]]:
    """r x n 0/1 matrix, each entry 1 with probability 1/(4hr), one uniform per entry."""
    if h < 1 or r < 1:
        raise ValueError("need h >= 1 and r >= 1")
    rng = np.random.default_rng(seed)
    u = rng.random((r, n))
    # u < 1/(4hr)  <=>  u * 4hr < 1
    return (u * (4 * h * r) < 1).astype(int).tolist()


def check_hypercube_cover(T: Sequence[Sequence[int]], W, max_r: int = 20) -> bool:
    return find_hypercube_cover(T, W, max_r) is not None


def find_hypercube_cover(T, W, max_r: int = 20) -> dict | None:
    """Map each c in {0,1}^r to some w in W with T w = c (over Z), or None."""
    r = len(T)
    if r > max_r:
        raise ValueError(f"r={r} too large to enumerate 2^r targets")
    want = 1 << r
    cover = {}
    for w in W:
        img = tuple(sum(t * a for t, a in zip(row, w)) for row in T)
        if img not in cover and all(v in (0, 1) for v in img):
            cover[img] = tuple(w)
            if len(cover) == want:
                break
    if len(cover) < want:
        return None
    return {c: cover[c] for c in product((0, 1), repeat=r)}


# -- gadget generation ------------------------------------------------------

def epsilon_for(p: int, alpha) -> Fraction:
    return 2 * Fraction(alpha) ** p - 1


def verify_gadget(g: LocallyDenseGadget, work_limit: int | None = DEFAULT_WORK_LIMIT) -> dict | None:
    """Re-check both gadget properties from scratch; returns the cover map or None.

    Item 1 uses the 2k bound (needs k <= n/2 and ell <= 2k).  Item 2 enumerates
    the whole short coset (x + L) with ||v||_p^p <= alpha^p ell and looks for
    a preimage of every hypercube point.
    """
    H = g.H()
    if 2 * H.k > H.n or g.ell > min_dist_certified_bound(H, g.p):
        return None
    if lattice_basis(H).columns != g.A.columns:
        return None
    u = syndrome(H, g.x)
    V = enumerate_coset_vectors(H, u, g.p, g.radius_pow, work_limit=work_limit)
    cover = find_hypercube_cover(g.T, V)
    if cover is None:
        return None
    for v in cover.values():
        if sum(abs(a) ** g.p for a in v) > g.radius_pow:
            return None
        if solve_in_basis(g.A, [a - b for a, b in zip(v, g.x)]) is None:
            return None
    return cover


def generate_gadget(p: int, alpha, r: int, q: int, k: int, seed=0,
                    retries: int = DEFAULT_RETRIES,
                    work_limit: int | None = DEFAULT_WORK_LIMIT) -> LocallyDenseGadget:
    """Desk-scale gadget over H_q(k, F_q); raises VerificationFailed after ``retries`` tries."""
    alpha = Fraction(alpha)
    eps = epsilon_for(p, alpha)
    if eps <= 0:
        raise ValueError(f"alpha^p = {alpha ** p} must exceed 1/2")
    h = floor((1 + eps) * k)
    H = build_parity_check(q, k)
    if h > H.n:
        raise ValueError(f"h={h} exceeds n={H.n}")
    if 2 * k > H.n:
        raise ValueError("need k <= q/2 for the distance bound")
    A = lattice_basis(H)
    ell = 2 * k
    streams = np.random.SeedSequence(seed).spawn(retries)
    for ss in streams:
        sx, sT = ss.spawn(2)
        x = sample_dense_shift(H, h, sx)
        T = sample_sauer_matrix(r, H.n, h, sT)
        g = LocallyDenseGadget(p, alpha, ell, q, k, x, T, A)
        cover = verify_gadget(g, work_limit)
        if cover is not None:
            g.cover = cover
            return g
    raise VerificationFailed(f"no verified gadget after {retries} attempts (q={q}, k={k}, r={r})")


def asymptotic_parameters(p: int, alpha, r: int, delta=Fraction(1, 4), find_q: bool = True) -> ParameterReport:
    """Parameter recipe for large r, with the density inequality checked in logs.

    k = ceil(r^(1/(1/2 - delta))), q = least prime >= k^(3(1+eps)/eps),
    h = floor((1+eps)k), ell = 2k.  Compares log(C(q,h)/(10 q^k)) with
    log(h! q^(240 r sqrt h)).
    """
    alpha, delta = Fraction(alpha), Fraction(delta)
    eps = epsilon_for(p, alpha)
    if eps <= 0:
        raise ValueError("alpha^p must exceed 1/2")
    if not 0 < delta < Fraction(1, 2):
        raise ValueError("delta must lie in (0, 1/2)")
    expo = 1 / (Fraction(1, 2) - delta)
    k = _ceil_rational_power(r, expo)
    q_lower = max(2, _ceil_rational_power(k, 3 * (1 + eps) / eps))
    # beyond the certified primality range only the lower bound is reported
    q = find_prime_at_least(q_lower) if find_q and q_lower < MR_EXACT_BOUND // 2 else None
    h = floor((1 + eps) * k)
    qq = q if q is not None else q_lower
    log_lhs = _log_comb(qq, h) - log(10) - k * log(qq)
    log_rhs = log(factorial(h)) + 240 * r * sqrt(h) * log(qq)
    return ParameterReport(p, alpha, r, delta, eps, k, q_lower, q, h, 2 * k, log_lhs, log_rhs)


def _log_comb(n: int, m: int) -> float:
    from math import lgamma
    return lgamma(n + 1) - lgamma(m + 1) - lgamma(n - m + 1)


def _ceil_rational_power(base: int, e: Fraction) -> int:
    """Smallest integer m with m >= base^e, exactly (m^den >= base^num)."""
    e = Fraction(e)
    num, den = e.numerator, e.denominator
    target = base**num
    lo, hi = 0, 1
    while hi**den < target:
        hi *= 2
    while hi - lo > 1:  # invariant: lo^den < target <= hi^den
        mid = (lo + hi) // 2
        if mid**den >= target:
            hi = mid
        else:
            lo = mid
    return max(hi, 1)
