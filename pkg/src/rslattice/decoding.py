"""Reed-Solomon encoding and decoding, and decoding of the matching lattices.

The soft list decoder follows the interpolate-then-factor recipe: give every
(point, symbol) pair a multiplicity that decreases with its torus distance to
the received coordinate, interpolate a bivariate Q through those points with
Koetter's algorithm, and read candidate messages off the Y-roots of Q with
Roth-Ruckenstein.  A codeword whose total multiplicity exceeds the weighted
degree of Q is guaranteed to be found; before returning, the decoder checks
that *every* word inside the radius has that much multiplicity, and raises
the multiplicity scale until it does.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor, log2, sqrt
from typing import Sequence

import numpy as np

from .errors import DEFAULT_WORK_LIMIT, WorkLimitExceeded, check_work
from .field_core import FieldPoly, inv_mod, require_prime, solve_mod


@dataclass(frozen=True)
class RSCode:
    q: int
    dimension: int
    points: tuple[int, ...]

    def __post_init__(self):
        require_prime(self.q)
        if len(set(self.points)) != len(self.points):
            raise ValueError("evaluation points must be distinct")
        if not 0 <= self.dimension <= len(self.points):
            raise ValueError("need 0 <= dimension <= |S|")

    @classmethod
    def full(cls, q: int, dimension: int) -> "RSCode":
        return cls(q, dimension, tuple(range(q)))

    @property
    def n(self) -> int:
        return len(self.points)


def canonical_mod(x, q: int) -> Fraction:
    """Representative of x + qZ in [-q/2, q/2)."""
    x = Fraction(x)
    half = Fraction(q, 2)
    return (x + half) % q - half


@dataclass(frozen=True)
class TorusVector:
    q: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(canonical_mod(c, self.q) for c in self.coords))

    def __len__(self):
        return len(self.coords)


def torus_dist_sq(y, a: int, q: int) -> Fraction:
    d = canonical_mod(Fraction(y) - a, q)
    return d * d


@dataclass
class DecodeList:
    radius_sq: Fraction
    items: list = field(default_factory=list)  # (vector, dist_sq)
    certificate: dict = field(default_factory=dict)

    def vectors(self) -> list[tuple[int, ...]]:
        return [v for v, _ in self.items]


def _sorted_items(items):
    return sorted(items, key=lambda it: (it[1], it[0]))


def rs_encode(code: RSCode, poly: FieldPoly) -> tuple[int, ...]:
    if poly.degree >= code.dimension:
        raise ValueError(f"degree {poly.degree} >= dimension {code.dimension}")
    return tuple(poly(s) for s in code.points)


def rs_unique_decode(code: RSCode, received: Sequence[int]) -> tuple[int, ...] | None:
    """Berlekamp-Welch: find E monic of degree e and N with N(s) = y E(s)."""
    q, n, K = code.q, code.n, code.dimension
    y = [int(v) % q for v in received]
    if len(y) != n:
        raise ValueError("received word has wrong length")
    e = (n - K) // 2
    if K == 0:
        zero = (0,) * n
        return zero if sum(1 for v in y if v) <= e else None
    # unknowns: N_0..N_{e+K-1}, E_0..E_{e-1}; equation N(s) - y E(s) = y s^e
    rows, rhs = [], []
    for s, yi in zip(code.points, y):
        row = [pow(s, j, q) for j in range(e + K)] + [(-yi * pow(s, j, q)) % q for j in range(e)]
        rows.append(row)
        rhs.append(yi * pow(s, e, q) % q)
    sol = solve_mod(rows, rhs, q)
    if sol is None:
        return None
    N = FieldPoly(q, sol[: e + K])
    E = FieldPoly(q, sol[e + K:] + [1])
    f, rem = N.divmod(E)
    if not rem.is_zero() or f.degree >= K:
        return None
    c = tuple(f(s) for s in code.points)
    if sum(1 for a, b in zip(c, y) if a != b) > e:
        return None
    return c


# -- soft list decoding -------------------------------------------------------

def list_radius_sq(k: int, epsilon) -> Fraction:
    return (1 - Fraction(epsilon)) * (k + 1) / 2


def _candidates(y: TorusVector, radius_sq: Fraction):
    """Per coordinate, the residues a with torus distance^2 <= radius_sq."""
    q = y.q
    out = []
    for yi in y.coords:
        opts = []
        for a in range(q):
            d2 = torus_dist_sq(yi, a, q)
            if d2 <= radius_sq:
                opts.append((a, d2))
        out.append(opts)
    return out


def _multiplicities(y: TorusVector, M: int) -> list[dict[int, int]]:
    """m(i, a) = floor(M (1 - d)) for torus distance d < 1, else 0."""
    q = y.q
    out = []
    for yi in y.coords:
        row = {}
        for a in range(q):
            d = abs(canonical_mod(Fraction(yi) - a, q))
            if d < 1:
                m = floor(M * (1 - d))
                if m > 0:
                    row[a] = m
        out.append(row)
    return out


def _min_score_in_ball(cands, mult, radius_sq):
    """Least total multiplicity over all words within the radius (Pareto DP)."""
    front = {Fraction(0): 0}  # dist_sq -> min score
    for opts, mrow in zip(cands, mult):
        nxt: dict[Fraction, int] = {}
        for d0, s0 in front.items():
            for a, d2 in opts:
                dd = d0 + d2
                if dd <= radius_sq:
                    sc = s0 + mrow.get(a, 0)
                    if dd not in nxt or sc < nxt[dd]:
                        nxt[dd] = sc
        # prune dominated states: larger distance and no smaller score
        pruned, best = {}, None
        for dd in sorted(nxt):
            if best is None or nxt[dd] < best:
                pruned[dd] = nxt[dd]
                best = nxt[dd]
        front = pruned
        if not front:
            return None
    return min(front.values())


def _num_monomials(D: int, w: int) -> int:
    """#{(i, j) : i + w j <= D}."""
    if w == 0:
        raise ValueError("weight must be positive")
    return sum(D - w * j + 1 for j in range(D // w + 1))


def _hasse_vec(x: int, u: int, size: int, q: int) -> np.ndarray:
    """v[i] = C(i, u) x^(i-u) mod q, the functional 'u-th Hasse derivative at x'."""
    v = np.zeros(size, dtype=np.int64)
    for i in range(u, size):
        v[i] = comb(i, u) % q * pow(x, i - u, q) % q
    return v


def _wdeg(g: np.ndarray, w: int) -> int:
    nz = np.nonzero(g)
    if len(nz[0]) == 0:
        return -1
    return int(np.max(nz[0] + w * nz[1]))


def interpolate(points: list[tuple[int, int, int]], q: int, w: int, D: int, work_limit=DEFAULT_WORK_LIMIT) -> np.ndarray:
    """Koetter's algorithm: a Q(X, Y) of least (1, w)-weighted degree <= D
    vanishing to order m at each (x, a, m) in ``points``.  Returned as Q[i, j].

    Candidates whose weighted degree passes D are dropped: they can never be
    the answer, and they are only ever chosen as pivot when every other
    candidate with a nonzero discrepancy has even larger degree.
    """
    L = D // w
    C = sum(m * (m + 1) // 2 for _, _, m in points)
    xsize = D + 2
    check_work((L + 1) * xsize * (L + 1) * C, work_limit, "interpolation")
    G = np.zeros((L + 1, xsize, L + 1), dtype=np.int64)
    for j in range(L + 1):
        G[j, 0, j] = 1
    degs = [w * j for j in range(L + 1)]
    alive = list(range(L + 1))
    powers = np.arange(xsize)
    for x, a, m in points:
        xp = np.array([pow(x, i, q) for i in range(xsize)], dtype=np.int64)
        for v in range(m):
            ey = _hasse_vec(a, v, L + 1, q)
            Gy = np.tensordot(G[alive], ey, axes=([2], [0])) % q  # (alive, xsize)
            for u in range(m - v):
                ex = _hasse_x(xp, x, u, xsize, q)
                disc = (Gy @ ex) % q
                nz = [t for t in range(len(alive)) if disc[t]]
                if not nz:
                    continue
                ts = min(nz, key=lambda t: (degs[alive[t]], alive[t]))
                js = alive[ts]
                ds = int(disc[ts])
                gs = G[js].copy()
                for t in nz:
                    if t != ts:
                        j = alive[t]
                        G[j] = (ds * G[j] - int(disc[t]) * gs) % q
                # g* <- (X - x) g*
                shifted = np.zeros_like(gs)
                shifted[1:] = gs[:-1]
                G[js] = (shifted - x * gs) % q
                degs[js] += 1
                if degs[js] > D:
                    alive.pop(ts)
                    if not alive:
                        raise ValueError("degree bound D too small for the constraints")
                Gy = np.tensordot(G[alive], ey, axes=([2], [0])) % q
    best = min(alive, key=lambda j: (_wdeg(G[j], w), j))
    return G[best]


def _hasse_x(xp: np.ndarray, x: int, u: int, size: int, q: int) -> np.ndarray:
    """v[i] = C(i, u) x^(i-u) mod q, using precomputed powers ``xp`` of x."""
    v = np.zeros(size, dtype=np.int64)
    for i in range(u, size):
        v[i] = comb(i, u) % q * int(xp[i - u]) % q
    return v


def _trim(Q: np.ndarray) -> np.ndarray:
    nz = np.nonzero(Q)
    if len(nz[0]) == 0:
        return Q[:1, :1] * 0
    return Q[: nz[0].max() + 1, : nz[1].max() + 1]


def _y_roots(Q: np.ndarray, q: int) -> list[int]:
    """Roots in F_q of Q(0, Y), after dividing out the largest power of X."""
    row = Q[0]
    roots = []
    for g in range(q):
        acc = 0
        for c in reversed(row.tolist()):
            acc = (acc * g + c) % q
        if acc == 0:
            roots.append(g)
    return roots


def _divide_x_power(Q: np.ndarray) -> np.ndarray:
    nz = np.nonzero(Q)
    if len(nz[0]) == 0:
        return Q
    return Q[nz[0].min():]


def _substitute(Q: np.ndarray, g: int, q: int) -> np.ndarray:
    """Q(X, X Y + g)."""
    I, J = Q.shape
    out = np.zeros((I + J, J), dtype=np.int64)
    for j in range(J):
        col = Q[:, j]
        if not col.any():
            continue
        for t in range(j + 1):
            c = comb(j, t) % q * pow(g, j - t, q) % q
            if c:
                out[t: t + I, t] = (out[t: t + I, t] + c * col) % q
    return out


def find_y_roots(Q: np.ndarray, K: int, q: int) -> list[tuple[int, ...]]:
    """All f with deg f < K such that (Y - f(X)) divides Q (Roth-Ruckenstein).

    Returns coefficient tuples, lowest degree first.  Candidates are a
    superset only in the sense that callers filter by distance anyway.
    """
    found = []

    def rec(Qd, depth, prefix):
        Qd = _trim(_divide_x_power(Qd))
        if not Qd.any():
            found.append(tuple(prefix) + (0,) * (K - depth))
            return
        if depth == K:
            # Y - f divides Q iff the remaining polynomial vanishes at Y = 0
            if not Qd[:, 0].any():
                found.append(tuple(prefix))
            return
        for g in _y_roots(Qd, q):
            rec(_substitute(Qd, g, q), depth + 1, prefix + [g])

    rec(Q, 0, [])
    return sorted(set(found))


@dataclass(frozen=True)
class SoftDecoderConfig:
    start_multiplicity: int = 2
    max_multiplicity: int = 64


def rs_list_decode_l2(code: RSCode, epsilon, yhat, config: SoftDecoderConfig = SoftDecoderConfig(),
                      work_limit: int | None = DEFAULT_WORK_LIMIT) -> DecodeList:
    """All codewords within squared torus distance (1 - eps)(k + 1)/2 of yhat, k = |S| - dim."""
    q, n, K = code.q, code.n, code.dimension
    if not isinstance(yhat, TorusVector):
        yhat = TorusVector(q, tuple(Fraction(v) for v in yhat))
    if len(yhat) != n:
        raise ValueError("received vector has wrong length")
    k = n - K
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    rsq = list_radius_sq(k, eps)
    cands = _candidates(yhat, rsq)

    if K <= 1:
        consts = [(0,) * n] if K == 0 else [tuple([a] * n) for a in range(q)]
        items = []
        for c in consts:
            d2 = sum(torus_dist_sq(y, a, q) for y, a in zip(yhat.coords, c))
            if d2 <= rsq:
                items.append((c, d2))
        return DecodeList(rsq, _sorted_items(items), {"method": "direct"})

    w = K - 1
    M = config.start_multiplicity
    while M <= config.max_multiplicity:
        mult = _multiplicities(yhat, M)
        min_score = _min_score_in_ball(cands, mult, rsq)
        if min_score is None:  # empty ball
            return DecodeList(rsq, [], {"method": "empty-ball"})
        C = sum(m * (m + 1) // 2 for row in mult for m in row.values())
        D = 0
        while _num_monomials(D, w) <= C:
            D += 1
        if min_score > D:
            pts = [(s, a, m) for s, row in zip(code.points, mult) for a, m in sorted(row.items())]
            Q = interpolate(pts, q, w, D, work_limit)
            wd = _wdeg(Q, w)
            assert 0 <= wd <= D
            items = []
            for f in find_y_roots(Q, K, q):
                poly = FieldPoly(q, f)
                c = tuple(poly(s) for s in code.points)
                d2 = sum(torus_dist_sq(y, a, q) for y, a in zip(yhat.coords, c))
                if d2 <= rsq:
                    items.append((c, d2))
            cert = {"method": "interpolation", "multiplicity": M, "weighted_degree": wd,
                    "min_score_in_ball": min_score}
            return DecodeList(rsq, _sorted_items(items), cert)
        M *= 2
    raise WorkLimitExceeded(f"no certified multiplicity up to {config.max_multiplicity}")


def rs_list_decode_oracle(code: RSCode, epsilon, yhat, work_limit: int | None = DEFAULT_WORK_LIMIT) -> DecodeList:
    """Reference list decoder: enumerate words in the ball, keep those in the code.

    Membership is tested against the parity checks sum_s c_s L_s(s) s^i = 0
    of the dual code, so this shares nothing with the interpolation route.
    """
    q, n, K = code.q, code.n, code.dimension
    if not isinstance(yhat, TorusVector):
        yhat = TorusVector(q, tuple(Fraction(v) for v in yhat))
    rsq = list_radius_sq(n - K, epsilon)
    cands = _candidates(yhat, rsq)
    # dual of RS[K, S] is a GRS code with column multipliers 1/prod_{t != s}(s - t)
    mults = []
    for s in code.points:
        prod = 1
        for t in code.points:
            if t != s:
                prod = prod * (s - t) % q
        mults.append(inv_mod(prod, q))
    checks = [[mults[j] * pow(s, i, q) % q for j, s in enumerate(code.points)] for i in range(n - K)]
    total = 1
    for opts in cands:
        total *= max(len(opts), 1)
    check_work(total, work_limit, "ball enumeration")
    items = []

    def rec(i, word, d2, synd):
        if i == n:
            if not any(synd):
                items.append((tuple(word), d2))
            return
        for a, da in cands[i]:
            if d2 + da <= rsq:
                rec(i + 1, word + [a], d2 + da, [(sv + a * row[i]) % q for sv, row in zip(synd, checks)])

    rec(0, [], Fraction(0), [0] * (n - K))
    return DecodeList(rsq, _sorted_items(items), {"method": "enumeration"})


# -- lattice decoding ---------------------------------------------------------

def default_codimension(q: int) -> int:
    return floor(q / (2 * log2(q)))


def lift(c: Sequence[int], y: Sequence, q: int) -> tuple[int, ...]:
    """Closest point of c + qZ^n to y, coordinatewise."""
    out = []
    for ci, yi in zip(c, y):
        yi = Fraction(yi)
        out.append(int(yi - canonical_mod(yi - ci, q)))
    return tuple(out)


def lattice_decode_minkowski(q: int, k: int | None, epsilon, y: Sequence, config: SoftDecoderConfig = SoftDecoderConfig(),
                             work_limit: int | None = DEFAULT_WORK_LIMIT) -> DecodeList:
    """All v in the parity lattice of H_q(k, F_q) with ||y - v||^2 <= (1 - eps)(k + 1)/2."""
    require_prime(q)
    k = default_codimension(q) if k is None else k
    if len(y) != q:
        raise ValueError("y must have length q")
    rsq = list_radius_sq(k, epsilon)
    if 4 * rsq >= q * q:
        raise ValueError("decoding radius must be below q/2")
    y = [Fraction(v) for v in y]
    code = RSCode.full(q, q - k)
    yhat = TorusVector(q, tuple(y))
    codewords = rs_list_decode_l2(code, epsilon, yhat, config, work_limit)
    items = []
    for c, _ in codewords.items:
        v = lift(c, y, q)
        d2 = sum((a - b) ** 2 for a, b in zip(y, v))
        items.append((v, d2))
    return DecodeList(rsq, _sorted_items(items), dict(codewords.certificate, k=k))


@dataclass(frozen=True)
class MinkowskiReport:
    q: int
    k: int
    lower: float
    sqrt_2k: float
    minkowski: float
    cap: float

    @property
    def chain_holds(self) -> bool:
        return self.lower <= self.sqrt_2k <= self.minkowski <= self.cap


def minkowski_report(q: int) -> MinkowskiReport:
    if q < 3:
        raise ValueError("q must be >= 3")
    k = default_codimension(q)
    lg = log2(q)
    lower = sqrt(max(q / lg - 2, 0.0))
    return MinkowskiReport(q, k, lower, sqrt(2 * k), sqrt(q) * q ** (k / q), sqrt(2 * q))
