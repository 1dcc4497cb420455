"""Experiments around deterministic dense-coset constructions.

Three probes: turning a syndrome into a received word whose nearby codewords
correspond to the binary vectors of the coset; the Fourier expansion of the
number of h-term column sums hitting a syndrome (with complete character sums
and their Weil bound); and exponential-weight theta sums used as smooth
proxies for point counts.
"""
from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from . import _syndrome_dp as sdp
from .errors import DEFAULT_WORK_LIMIT, WorkLimitExceeded, check_work
from .field_core import FieldMultiset, FieldPoly, elementary_from_power_sums, require_prime
from .rs_lattice import ParityCheckMatrix, Syndrome, build_parity_check, enumerate_coset_vectors, syndrome


# -- syndrome -> received word ------------------------------------------------

def received_word_from_syndrome(q: int, k: int, S: Sequence[int] | None, h: int, u) -> list[int]:
    """Vector r with r(s) = g_T(s) for s in T, for every weight-h support T in the coset of u.

    The power sums p_0..p_{k-1} of T are the syndrome entries; Newton's
    identities give e_0..e_{k-1}, hence the top k coefficients of the root
    polynomial f_T.  With r(x) = sum_{i<k} (-1)^i e_i x^(h-i), f_T - r has
    degree <= h - k and equals -r on T.
    """
    require_prime(q)
    S = list(range(q)) if S is None else list(S)
    vals = list(u.values) if isinstance(u, Syndrome) else [int(a) % q for a in u]
    if len(vals) != k:
        raise ValueError("syndrome length must equal k")
    if k > q or len(S) < k:
        raise ValueError("need k <= q and |S| >= k")
    if not k <= h <= len(S):
        raise ValueError("need k <= h <= |S|")
    if vals[0] != h % q:
        raise ValueError(f"u_0 = {vals[0]} is not h mod q = {h % q}; no weight-h support has this syndrome")
    e = [int(v) for v in elementary_from_power_sums(vals, k, q)]
    coeffs = [0] * (h + 1)
    for i in range(k):
        coeffs[h - i] = (-1) ** i * e[i]
    r = FieldPoly(q, coeffs)
    return [(-r(s)) % q for s in S]


def agreeing_codewords(q: int, dimension: int, S: Sequence[int], word: Sequence[int], min_agree: int) -> list[tuple[int, ...]]:
    """Codewords of RS_q[dimension, S] agreeing with ``word`` on >= min_agree coordinates (exhaustive)."""
    out = []
    for coeffs in product(range(q), repeat=dimension):
        f = FieldPoly(q, coeffs)
        c = tuple(f(s) for s in S)
        if sum(1 for a, b in zip(c, word) if a == b) >= min_agree:
            out.append(c)
    return out


# -- character sums -----------------------------------------------------------

@dataclass(frozen=True)
class CharacterSumResult:
    value: complex
    magnitude: float
    weil_bound: float
    polynomial: FieldPoly
    k: int

    @property
    def weil_applies(self) -> bool:
        return 1 <= self.polynomial.degree < self.k

    @property
    def within_weil(self) -> bool:
        return not self.weil_applies or self.magnitude <= self.weil_bound + 1e-9


def character_sum(q: int, poly: FieldPoly, k: int | None = None) -> CharacterSumResult:
    """sum_a exp(-2 pi i p(a) / q); the bound (k - 2) sqrt(q) covers deg p < k."""
    if poly.degree >= q:
        raise ValueError("degree must be below q")
    k = max(poly.degree + 1, 1) if k is None else k
    vals = np.array([poly(a) for a in range(q)], dtype=float)
    z = np.exp(-2j * np.pi * vals / q)
    value = complex(math.fsum(z.real), math.fsum(z.imag))
    return CharacterSumResult(value, abs(value), (k - 2) * math.sqrt(q), poly, k)


# -- sequence counts and their Fourier expansion ------------------------------

def exact_sequence_count(q: int, k: int, h: int, s, work_limit: int | None = DEFAULT_WORK_LIMIT) -> int:
    """#{(a_1..a_h) in F_q^h : sum_j column(a_j) = s}, columns of H_q(k, F_q)."""
    return int(sequence_count_table(q, k, h, work_limit)[sdp.idx(_vals(s, q))])


def sequence_count_table(q: int, k: int, h: int, work_limit: int | None = DEFAULT_WORK_LIMIT) -> np.ndarray:
    check_work(q**k * h * q, work_limit, "sequence count DP")
    H = build_parity_check(q, k)
    dt = sdp.count_dtype(q**h)
    table = np.zeros((q,) * k, dtype=dt)
    table[(0,) * k] = 1
    for _ in range(h):
        nxt = np.zeros_like(table)
        for col in H.columns:
            nxt = nxt + sdp.shift(table, col, k)
        table = nxt
    return table


def _vals(s, q):
    return list(s.values) if isinstance(s, Syndrome) else [int(a) % q for a in s]


@dataclass(frozen=True)
class FourierCountDecomposition:
    main_term: Fraction  # contribution of the characters constant on the columns
    correction: complex
    exact_count: int
    uncorrected_main_term: int  # q^(h+1), the main term without the 1/q^k normalization

    @property
    def reconciliation_error(self) -> float:
        return abs(float(self.main_term) + self.correction - self.exact_count)


def column_character_sums(q: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """(U, S_U): all u in F_q^k (rows of U) and S_u = sum_a exp(2 pi i <u, col_a>/q)."""
    H = build_parity_check(q, k)
    U = np.array(list(product(range(q), repeat=k)), dtype=np.int64)
    cols = np.array(H.columns, dtype=np.int64).T  # k x q
    E = (U @ cols) % q
    S = np.exp(2j * np.pi * E / q).sum(axis=1)
    return U, S


def fourier_count_identity(q: int, k: int, h: int, s, work_limit: int | None = DEFAULT_WORK_LIMIT) -> FourierCountDecomposition:
    """count(s) = q^-k sum_u S_u^h exp(-2 pi i <u, s>/q), split by whether u only
    touches the constant row (then S_u = q exp(2 pi i u_0/q))."""
    check_work(q**k * q, work_limit, "character table")
    sv = np.array(_vals(s, q), dtype=np.int64)
    U, S = column_character_sums(q, k)
    phase = np.exp(-2j * np.pi * ((U @ sv) % q) / q)
    terms = S**h * phase
    const = ~np.any(U[:, 1:], axis=1) if k > 1 else np.ones(len(U), dtype=bool)
    main = Fraction(q ** (h + 1), q**k) if (h - int(sv[0])) % q == 0 else Fraction(0)
    correction = complex(terms[~const].sum()) / q**k
    exact = exact_sequence_count(q, k, h, s, work_limit)
    return FourierCountDecomposition(main, correction, exact, q ** (h + 1))


def barrier_h(q: int, k: int, h_max: int = 10**4) -> int | None:
    """Least h >= k with q^(h+1-k) > ((k-2) sqrt q)^h, the point where the main
    term beats the worst-case Weil error."""
    for h in range(k, h_max + 1):
        lhs = (h + 1 - k) * math.log(q)
        if k == 2:
            return h
        rhs = h * math.log((k - 2) * math.sqrt(q))
        if lhs > rhs:
            return h
    return None


# -- theta sums -----------------------------------------------------------------

@dataclass(frozen=True)
class LineCoset:
    """(cZ + x)^dim, a product of one-dimensional cosets."""

    c: Fraction = Fraction(1)
    x: Fraction = Fraction(0)
    dim: int = 1


@dataclass(frozen=True)
class ParityCoset:
    """{v in Z^n : H v = u mod q}."""

    H: ParityCheckMatrix
    u: tuple[int, ...]

    @classmethod
    def of_shift(cls, H: ParityCheckMatrix, x: Sequence[int]) -> "ParityCoset":
        return cls(H, syndrome(H, x).values)


@dataclass(frozen=True)
class ThetaProfile:
    p: int
    tau: float
    coset: object
    truncation: int
    theta: float
    mu: float
    second_moment: float  # E[||v||_p^(2p)]
    tail_bound: float

    @property
    def variance(self) -> float:
        return self.second_moment - self.mu**2


def _line_terms(c: Fraction, x: Fraction, p: int, tau: float, M: int):
    """Values |c m + x|^p for |m| <= M."""
    return [abs(float(c * m + x)) ** p for m in range(-M, M + 1)]


def _tail_1d(tau: float, start: float, step: float, j: int) -> float:
    """Bound on sum_{t >= 0} y_t^j exp(-tau y_t), y_t = start + t*step >= 1, p-th powers >= y.

    Uses y^j e^{-tau y} <= C_j e^{-tau y / 2} with C_j = sup y^j e^{-tau y/2} = (2j/(e tau))^j.
    """
    if start < 1:
        raise ValueError("tail start must be >= 1")
    if j == 0:
        return math.exp(-tau * start) / (1 - math.exp(-tau * step))
    cj = (2 * j / (math.e * tau)) ** j
    return cj * math.exp(-tau * start / 2) / (1 - math.exp(-tau * step / 2))


def _residue_weights(q: int, p: int, tau: float, M: int):
    """Per residue class r mod q: sums over |m| <= M, m = r mod q, of
    e^{-tau|m|^p}, |m|^p e^{..}, |m|^{2p} e^{..}; plus per-class tail bounds."""
    g = np.zeros((3, q))
    for m in range(-M, M + 1):
        y = abs(m) ** p
        w = math.exp(-tau * y)
        g[0, m % q] += w
        g[1, m % q] += y * w
        g[2, m % q] += y * y * w
    # |m| > M: |m|^p >= |m| >= M + 1, both signs, spacing 1 (coarse but valid per class)
    tails = np.array([2 * _tail_1d(tau, M + 1, 1, j) for j in range(3)]) if M + 1 >= 1 else None
    return g, tails


def _parity_dp(H: ParityCheckMatrix, u, weights: np.ndarray) -> tuple[float, float, float]:
    """Sum over the coset of prod_i w0, with first and second moment accumulators."""
    q, k = H.q, H.k
    A = np.zeros((q,) * k)
    B = np.zeros_like(A)
    C = np.zeros_like(A)
    A[(0,) * k] = 1.0
    w0, w1, w2 = weights
    for col in H.columns:
        nA, nB, nC = np.zeros_like(A), np.zeros_like(A), np.zeros_like(A)
        for r in range(q):
            if w0[r] == 0 and w1[r] == 0 and w2[r] == 0:
                continue
            vec = [(r * c) % q for c in col]
            sA, sB, sC = (sdp.shift(T, vec, k) for T in (A, B, C))
            nA += sA * w0[r]
            nB += sB * w0[r] + sA * w1[r]
            nC += sC * w0[r] + 2 * sB * w1[r] + sA * w2[r]
        A, B, C = nA, nB, nC
    i = sdp.idx(u)
    return float(A[i]), float(B[i]), float(C[i])


def theta(p: int, tau: float, coset, tolerance: float = 1e-12, work_limit: int | None = DEFAULT_WORK_LIMIT,
          max_truncation: int = 10**5) -> ThetaProfile:
    """Theta_p(tau; coset) = sum exp(-tau ||v||_p^p), with mu and the second moment.

    Truncation grows until the certified tail bound drops below ``tolerance``.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    if not isinstance(p, int) or p < 1:
        raise ValueError("integer p >= 1 required")
    M = max(4, int(math.ceil(8 / tau)))
    while M <= max_truncation:
        if isinstance(coset, LineCoset):
            prof = _theta_line(p, tau, coset, M)
        elif isinstance(coset, ParityCoset):
            check_work(coset.H.q ** (coset.H.k + 1) * coset.H.n, work_limit, "theta DP")
            prof = _theta_parity(p, tau, coset, M)
        else:
            raise TypeError(f"unsupported coset type {type(coset).__name__}")
        if prof.tail_bound < tolerance:
            return prof
        M *= 2
    raise WorkLimitExceeded(f"tail bound above {tolerance} at truncation {max_truncation}")


def _theta_line(p, tau, coset: LineCoset, M: int) -> ThetaProfile:
    c, x = abs(Fraction(coset.c)), Fraction(coset.x)
    ys = _line_terms(c, x, p, tau, M)
    ws = [math.exp(-tau * y) for y in ys]
    t1 = math.fsum(ws)
    m1 = math.fsum(y * w for y, w in zip(ys, ws))
    m2 = math.fsum(y * y * w for y, w in zip(ys, ws))
    # points beyond |m| > M have |v| >= c(M+1) - |x|
    start = float(c * (M + 1) - abs(x))
    tails = [2 * _tail_1d(tau, start, float(c), j) for j in range(3)] if start >= 1 else [math.inf] * 3
    d = coset.dim
    theta1 = t1
    mu1 = m1 / t1
    sec1 = m2 / t1
    theta_v = theta1**d
    # the norm is additive over the product
    mu = d * mu1
    var = d * (sec1 - mu1**2)
    second = var + mu**2
    tail = (t1 + tails[0]) ** d - theta_v if math.isfinite(tails[0]) else math.inf
    return ThetaProfile(p, tau, coset, M, theta_v, mu, second, tail)


def _theta_parity(p, tau, coset: ParityCoset, M: int) -> ThetaProfile:
    H = coset.H
    g, tails = _residue_weights(H.q, p, tau, M)
    A, B, C = _parity_dp(H, coset.u, g)
    Ahi, _, _ = _parity_dp(H, coset.u, g + tails[:, None])
    tail = Ahi - A
    return ThetaProfile(p, tau, coset, M, A, B / A, C / A, tail)


@dataclass
class DerivativeReport:
    rows: list = field(default_factory=list)  # dicts per tau

    @property
    def all_ok(self) -> bool:
        return all(r["ok"] for r in self.rows)


def theta_derivative_checks(p: int, tau_grid: Sequence[float], coset, step: float = 1e-4,
                            tol_first: float = 1e-6, tol_second: float = 1e-5) -> DerivativeReport:
    """Central differences of ln Theta against -mu and against the variance."""
    rep = DerivativeReport()
    for tau in tau_grid:
        lo, mid, hi = (theta(p, t, coset, tolerance=1e-14) for t in (tau - step, tau, tau + step))
        l0, l1, l2 = math.log(lo.theta), math.log(mid.theta), math.log(hi.theta)
        first = (l2 - l0) / (2 * step)
        second = (l2 - 2 * l1 + l0) / step**2
        err1 = abs(first + mid.mu)
        err2 = abs(second - mid.variance)
        rep.rows.append({
            "tau": tau, "dlog": first, "mu": mid.mu, "d2log": second, "variance": mid.variance,
            "first_error": err1, "second_error": err2,
            "ok": err1 <= tol_first and err2 <= tol_second and first < 0 and second > 0,
        })
    return rep


@dataclass(frozen=True)
class NpBoundsReport:
    r_pow_p: Fraction
    count: int
    upper_bound: float
    upper_ok: bool
    lower_radius_pow_p: float
    lower_count: int
    h_p: float
    lower_bound: float
    lower_ok: bool  # vacuously true when h_p <= 0


def count_points(p: int, coset, radius_pow, work_limit: int | None = DEFAULT_WORK_LIMIT) -> int:
    """#{v in coset : ||v||_p^p <= radius_pow}, exact.

    Parity cosets: DP over (accumulated integer cost, syndrome).  Line
    cosets: merge the one-dimensional value multiset ``dim`` times.
    """
    radius_pow = Fraction(radius_pow)
    if radius_pow < 0:
        return 0
    if isinstance(coset, ParityCoset):
        return _count_parity(p, coset, math.floor(radius_pow), work_limit)
    if isinstance(coset, LineCoset):
        c, x = abs(Fraction(coset.c)), Fraction(coset.x)
        bound = 1
        while (c * bound - abs(x)) ** p <= radius_pow:
            bound *= 2
        vals = Counter(abs(c * m + x) ** p for m in range(-bound, bound + 1))
        vals = Counter({v: n for v, n in vals.items() if v <= radius_pow})
        totals = Counter({Fraction(0): 1})
        for _ in range(coset.dim):
            nxt = Counter()
            for a, na in totals.items():
                for b, nb in vals.items():
                    if a + b <= radius_pow:
                        nxt[a + b] += na * nb
            totals = nxt
        return sum(totals.values())
    raise TypeError(f"unsupported coset type {type(coset).__name__}")


def _count_parity(p: int, coset: "ParityCoset", cap: int, work_limit) -> int:
    H = coset.H
    q, k = H.q, H.k
    check_work((cap + 1) * q**k * H.n * (2 * cap + 1), work_limit, "point count DP")
    bound = 0
    while (bound + 1) ** p <= cap:
        bound += 1
    table = np.zeros((cap + 1,) + (q,) * k, dtype=object)
    table[(0,) + (0,) * k] = 1
    for col in H.columns:
        nxt = np.zeros_like(table)
        for z in range(-bound, bound + 1):
            cz = abs(z) ** p
            moved = sdp.shift(table[: cap + 1 - cz], [(z * a) % q for a in col], k)
            nxt[cz:] += moved
        table = nxt
    return int(table[(slice(None),) + sdp.idx(coset.u)].sum())


def np_bounds(p: int, r_pow_p, coset, tau: float, delta: float, slack: float = 1e-9) -> NpBoundsReport:
    """Check N(r) <= e^{tau r^p} Theta(tau) and
    N(mu(tau)^{1/p}) >= e^{(tau+delta) mu(tau+2 delta)} H_p(tau, delta)."""
    r_pow_p = Fraction(r_pow_p)
    t0 = theta(p, tau, coset)
    t1 = theta(p, tau + delta, coset)
    t2 = theta(p, tau + 2 * delta, coset)
    n_r = count_points(p, coset, r_pow_p)
    upper = math.exp(tau * float(r_pow_p)) * t0.theta
    hp = t1.theta - math.exp(-delta * t0.mu) * t0.theta - math.exp(delta * t2.mu) * t2.theta
    lower = math.exp((tau + delta) * t2.mu) * hp
    # mu is a float; count with a tiny outward margin so boundary points are kept
    n_mu = count_points(p, coset, Fraction(t0.mu * (1 + slack)).limit_denominator(10**12))
    lower_ok = hp <= 0 or n_mu >= lower * (1 - slack)
    return NpBoundsReport(r_pow_p, n_r, upper, n_r <= upper * (1 + slack), t0.mu, n_mu, hp, lower, lower_ok)
