"""From binary-combination closest vector instances to shortest vector instances.

Given (B, t, s) and a gadget (A, ell, x, T), the output basis is

    [ B T A    B T x - t ]
    [ beta A   beta x    ]

with threshold s'^p = s^p + alpha^p beta^p ell.  All thresholds are carried
as exact p-th powers; beta is a rational picked inside its admissible range
and the matrix is scaled to clear its denominator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil, sqrt
from typing import Sequence

from .enumeration import combine, l2_radius_sq_for_lp, lp_pow, points_in_ball
from .errors import DEFAULT_WORK_LIMIT, WorkLimitExceeded
from .local_density import LocallyDenseGadget

YES, NO, NEITHER, BOUNDARY = "YES", "NO", "NEITHER", "BOUNDARY"


@dataclass
class GapCVPPrimeInstance:
    """``B`` is row-major d x r with the basis vectors as columns."""

    B: list[list[int]]
    t: list[int]
    s_pow_p: Fraction
    gamma: Fraction
    p: int

    def __post_init__(self):
        self.s_pow_p = Fraction(self.s_pow_p)
        self.gamma = Fraction(self.gamma)
        if len(self.t) != len(self.B):
            raise ValueError("t must have one entry per row of B")
        if self.s_pow_p <= 0 or self.gamma < 1:
            raise ValueError("need s > 0 and gamma >= 1")

    @property
    def d(self) -> int:
        return len(self.B)

    @property
    def r(self) -> int:
        return len(self.B[0]) if self.B else 0

    def columns(self) -> list[list[int]]:
        return [[row[j] for row in self.B] for j in range(self.r)]

    def to_json(self) -> dict:
        return {"p": self.p, "B": self.B, "t": self.t, "s_pow_p": _rat(self.s_pow_p), "gamma": _rat(self.gamma)}

    @classmethod
    def from_json(cls, d) -> "GapCVPPrimeInstance":
        return cls([list(r) for r in d["B"]], list(d["t"]), Fraction(*d["s_pow_p"]), Fraction(*d["gamma"]), d["p"])


@dataclass
class GapSVPInstance:
    B: list[list[int]]
    s_pow_p: Fraction
    gamma: Fraction
    p: int
    beta: Fraction | None = None
    scale: int = 1  # every entry (and s') was multiplied by this to clear beta's denominator

    def __post_init__(self):
        self.s_pow_p = Fraction(self.s_pow_p)
        self.gamma = Fraction(self.gamma)

    @property
    def rank(self) -> int:
        return len(self.B[0]) if self.B else 0

    def columns(self) -> list[list[int]]:
        return [[row[j] for row in self.B] for j in range(self.rank)]

    def to_json(self) -> dict:
        return {"p": self.p, "B": self.B, "s_prime_pow_p": _rat(self.s_pow_p), "gamma_prime": _rat(self.gamma)}

    @classmethod
    def from_json(cls, d) -> "GapSVPInstance":
        return cls([list(r) for r in d["B"]], Fraction(*d["s_prime_pow_p"]), Fraction(*d["gamma_prime"]), d["p"])


@dataclass
class PromiseVerdict:
    verdict: str
    witness: tuple | None = None
    certificate: dict = field(default_factory=dict)


def _rat(x: Fraction) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


# -- beta ---------------------------------------------------------------------

def admissible_beta_interval(p: int, alpha, gamma, gamma_prime, s_pow_p, ell) -> tuple[Fraction, Fraction]:
    """[beta_min^p, beta_max^p] as exact rationals.

    Lower end keeps the w = 0 branch out of reach; upper end keeps the w != 0
    branch out of reach.  Empty exactly when gamma is below
    gamma' (1 - (alpha gamma')^p)^(-1/p).
    """
    alpha, gamma, gp, sp = map(Fraction, (alpha, gamma, gamma_prime, s_pow_p))
    if not (gp >= 1 and alpha * gp < 1):
        raise ValueError("need 1 <= gamma' < 1/alpha")
    if sp <= 0 or ell <= 0:
        raise ValueError("need s > 0 and ell > 0")
    ap = alpha**p
    lo = gp**p * sp / (ell * (1 - (alpha * gp) ** p))
    hi = (gamma**p * sp / gp**p - sp) / (ap * ell)
    if lo > hi:
        raise ValueError(f"empty beta interval: [{lo}, {hi}] (gamma too small)")
    return lo, hi


def _rational_root_floor(x: Fraction, p: int, den: int) -> int:
    """Largest m with (m/den)^p <= x, for x >= 0."""
    target = x * den**p  # need m^p <= target
    m = int(float(target) ** (1 / p)) + 2
    while m > 0 and m**p > target:
        m -= 1
    while (m + 1) ** p <= target:
        m += 1
    return m


def choose_beta(p: int, lo: Fraction, hi: Fraction, max_den: int = 10**6) -> Fraction:
    """Smallest-denominator rational beta with lo < beta^p <= hi.

    Falls back to beta^p == lo when that is the only option and lo is a
    rational p-th power (the reduced instance may then sit on the boundary).
    """
    for den in range(1, max_den + 1):
        m = _rational_root_floor(hi, p, den)
        if m > 0 and Fraction(m, den) ** p > lo:
            # smallest numerator above lo for this denominator
            m_lo = _rational_root_floor(lo, p, den) + 1
            return Fraction(m_lo, den)
        if lo == hi:
            break
    for den in range(1, min(max_den, 10**4) + 1):
        m = _rational_root_floor(lo, p, den)
        if Fraction(m, den) ** p == lo:
            return Fraction(m, den)
    raise ValueError("no rational beta with beta^p in the admissible interval")


def s_prime_pow_p(p: int, alpha, s_pow_p, beta, ell) -> Fraction:
    return Fraction(s_pow_p) + Fraction(alpha) ** p * Fraction(beta) ** p * ell


# -- builder ------------------------------------------------------------------

def canonical_yes_instance(p: int, gamma_prime) -> GapSVPInstance:
    return GapSVPInstance([[1]], Fraction(1), Fraction(gamma_prime), p)


def build_svp_instance(cvp: GapCVPPrimeInstance, gadget: LocallyDenseGadget, gamma_prime, beta=None) -> GapSVPInstance:
    p = cvp.p
    if gadget.p != p:
        raise ValueError("gadget and instance use different norms")
    if gadget.r != cvp.r:
        raise ValueError(f"gadget projects to {gadget.r} coordinates, instance has rank {cvp.r}")
    gamma_prime = Fraction(gamma_prime)
    lo, hi = admissible_beta_interval(p, gadget.alpha, cvp.gamma, gamma_prime, cvp.s_pow_p, gadget.ell)
    beta = choose_beta(p, lo, hi) if beta is None else Fraction(beta)
    if not lo <= beta**p <= hi:
        raise ValueError(f"beta^p = {beta ** p} outside [{lo}, {hi}]")
    if not any(cvp.t):
        return canonical_yes_instance(p, gamma_prime)

    bn, bd = beta.numerator, beta.denominator
    A_cols = [list(c) for c in gadget.A.columns]
    T = gadget.T
    Bcols = cvp.columns()

    def top(vec):
        Tv = [sum(a * b for a, b in zip(row, vec)) for row in T]
        return combine(Bcols, Tv)

    cols = []
    for a in A_cols:
        cols.append([bd * v for v in top(a)] + [bn * v for v in a])
    last_top = [v - w for v, w in zip(top(gadget.x), cvp.t)]
    cols.append([bd * v for v in last_top] + [bn * v for v in gadget.x])
    rows = [[c[i] for c in cols] for i in range(len(cols[0]))]
    sp = s_prime_pow_p(p, gadget.alpha, cvp.s_pow_p, beta, gadget.ell) * bd**p
    return GapSVPInstance(rows, sp, gamma_prime, p, beta=beta, scale=bd)


def yes_witness(cvp: GapCVPPrimeInstance, gadget: LocallyDenseGadget, c: Sequence[int]) -> list[int]:
    """Coefficients (z, 1) of the short vector built from a close binary combination c."""
    return gadget.coefficients_for(c) + [1]


# -- verifiers ----------------------------------------------------------------

def _gram_schmidt_rank(cols) -> int:
    # exact rank via fraction elimination
    m = [[Fraction(v) for v in c] for c in cols]
    rank = 0
    ncols = len(m[0]) if m else 0
    for j in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][j] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][j] != 0:
                f = m[i][j] / m[rank][j]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def columns_independent(cols) -> bool:
    return _gram_schmidt_rank(cols) == len(cols)


def _perp_sq(cols, t) -> Fraction:
    """Exact squared Euclidean distance from t to the real span of cols."""
    basis: list[list[Fraction]] = []
    for c in cols:
        v = [Fraction(a) for a in c]
        for b in basis:
            bb = sum(x * x for x in b)
            f = sum(x * y for x, y in zip(v, b)) / bb
            v = [x - f * y for x, y in zip(v, b)]
        if any(v):
            basis.append(v)
    v = [Fraction(a) for a in t]
    for b in basis:
        bb = sum(x * x for x in b)
        f = sum(x * y for x, y in zip(v, b)) / bb
        v = [x - f * y for x, y in zip(v, b)]
    return sum(x * x for x in v)


def _lp_to_l2_factor_sq(p: int, dim: int) -> Fraction:
    """c^2 with ||v||_p >= c ||v||_2 for every v in R^dim."""
    if p <= 2:
        return Fraction(1)
    # ||v||_2 <= dim^(1/2 - 1/p) ||v||_p; return a rational lower bound for dim^(2/p - 1)
    return Fraction(dim ** (2 / p - 1)).limit_denominator(10**6) * Fraction(999, 1000)


def verify_cvp_instance(cvp: GapCVPPrimeInstance, work_limit: int | None = DEFAULT_WORK_LIMIT,
                        max_w: int = 10**4) -> PromiseVerdict:
    """Exhaustive classification of a binary-combination CVP instance.

    YES: some c in {0,1}^r has ||Bc - t||_p^p <= s^p.
    NO: every w != 0 has dist_p(w t, L(B))^p > (gamma s)^p.  Multiples with
    |w| beyond W = gamma s / (c * dist_2(t, span B)) are far by the
    orthogonal component alone; the rest are checked by enumeration.
    """
    p = cvp.p
    if cvp.r > 12:
        raise ValueError("rank too large for 2^r enumeration")
    cols = cvp.columns()
    if not columns_independent(cols):
        raise ValueError("columns of B must be independent")
    best = None
    for c in product((0, 1), repeat=cvp.r):
        v = [a - b for a, b in zip(combine(cols, c), cvp.t)]
        val = lp_pow(v, p)
        if val <= cvp.s_pow_p and (best is None or val < best[0]):
            best = (val, c)
    if best is not None:
        return PromiseVerdict(YES, best[1], {"distance_pow_p": best[0]})

    far_pow = cvp.gamma**p * cvp.s_pow_p
    perp = _perp_sq(cols, cvp.t)
    if perp == 0:
        return PromiseVerdict(NEITHER, None, {"reason": "t lies in the rational span of B"})
    # |w|^2 * c^2 * perp > (gamma s)^2 is enough; (gamma s)^2 = far_pow^(2/p)
    gs_sq = float(far_pow) ** (2 / p)
    W = ceil(sqrt(gs_sq / float(_lp_to_l2_factor_sq(p, cvp.d) * perp)) * (1 + 1e-9)) + 1
    if W > max_w:
        raise WorkLimitExceeded(f"w range {W} exceeds cap {max_w}")
    r2 = l2_radius_sq_for_lp(p, far_pow, cvp.d)
    for w in range(1, W + 1):
        center = [w * a for a in cvp.t]
        for z in points_in_ball(cols, r2, center=center, work_limit=work_limit):
            v = [a - b for a, b in zip(combine(cols, z), center)]
            if lp_pow(v, p) <= far_pow:
                return PromiseVerdict(NEITHER, (w,) + tuple(z), {"w_range": W})
    return PromiseVerdict(NO, None, {"w_range": W, "l2_radius_sq": r2})


def shortest_vector_pow(cols, p: int, radius_pow, work_limit: int | None = DEFAULT_WORK_LIMIT):
    """(min ||v||_p^p, coefficients) over nonzero lattice vectors with ||v||_p^p <= radius_pow, or None."""
    d = len(cols[0])
    r2 = l2_radius_sq_for_lp(p, radius_pow, d)
    best = None
    for z in points_in_ball(cols, r2, work_limit=work_limit):
        if not any(z):
            continue
        val = lp_pow(combine(cols, z), p)
        if val <= radius_pow and (best is None or (val, z) < best):
            best = (val, z)
    return best


def verify_svp_instance(svp: GapSVPInstance, work_limit: int | None = DEFAULT_WORK_LIMIT) -> PromiseVerdict:
    """YES if lambda_1^p <= s'^p, NO if lambda_1^p > (gamma' s')^p, BOUNDARY on equality, else NEITHER."""
    p = svp.p
    if svp.rank > 16:
        raise ValueError("rank too large for exhaustive enumeration")
    cols = svp.columns()
    if not columns_independent(cols):
        raise ValueError("basis columns are dependent")
    far_pow = svp.gamma**p * svp.s_pow_p
    best = shortest_vector_pow(cols, p, far_pow, work_limit)
    cert = {"search_radius_pow_p": far_pow}
    if best is None:
        return PromiseVerdict(NO, None, cert)
    val, z = best
    cert["lambda1_pow_p"] = val
    if val <= svp.s_pow_p:
        return PromiseVerdict(YES, z, cert)
    if val == far_pow:
        return PromiseVerdict(BOUNDARY, z, cert)
    return PromiseVerdict(NEITHER, z, cert)
