"""Vandermonde parity checks and their Construction-A lattices.

``build_parity_check(q, k, S)`` gives the k x |S| matrix with entry ``s**i``;
the associated lattice is ``{z in Z^n : H z = 0 mod q}``.  Everything here is
exact integer arithmetic; numpy is only used for the syndrome-indexed tables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterator, Sequence

import numpy as np

from . import _syndrome_dp as sdp
from .errors import DEFAULT_WORK_LIMIT, check_work
from .field_core import nullspace_mod, rank_mod, require_prime


@dataclass(frozen=True)
class ParityCheckMatrix:
    q: int
    k: int
    points: tuple[int, ...]

    def __post_init__(self):
        require_prime(self.q)
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if any(not 0 <= s < self.q for s in self.points):
            raise ValueError("points must be residues in [0, q)")
        if len(set(self.points)) != len(self.points):
            raise ValueError("evaluation points must be distinct")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def rows(self) -> list[list[int]]:
        return [[pow(s, i, self.q) for s in self.points] for i in range(self.k)]

    def column(self, j: int) -> list[int]:
        s = self.points[j]
        return [pow(s, i, self.q) for i in range(self.k)]

    @property
    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.n)]


@dataclass(frozen=True)
class Syndrome:
    q: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) % self.q for v in self.values))

    def __len__(self):
        return len(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True)
class LatticeBasis:
    """Square integer basis; ``columns[j]`` is the j-th basis vector."""

    columns: tuple[tuple[int, ...], ...]
    source: ParityCheckMatrix | None = None
    rows_dependent: bool = False

    @property
    def dim(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    @property
    def rank(self) -> int:
        return len(self.columns)

    def matrix(self) -> list[list[int]]:
        """Row-major d x R matrix whose columns are the basis vectors."""
        return [[c[i] for c in self.columns] for i in range(self.dim)]

    def determinant(self) -> int:
        """|det| of the square basis (basis is triangular after HNF)."""
        return abs(int_det([list(c) for c in self.columns]))

    def combine(self, coeffs: Sequence[int]) -> list[int]:
        out = [0] * self.dim
        for a, c in zip(coeffs, self.columns):
            if a:
                for i, v in enumerate(c):
                    out[i] += a * v
        return out


@dataclass(frozen=True)
class MinDistResult:
    p: int
    radius_bound: Fraction
    value: int | None
    witness: tuple[int, ...] | None = None

    @property
    def exceeds_bound(self) -> bool:
        return self.value is None


def build_parity_check(q: int, k: int, S: Sequence[int] | None = None) -> ParityCheckMatrix:
    if S is None:
        S = range(q)
    return ParityCheckMatrix(q, k, tuple(int(s) for s in S))


def syndrome(H: ParityCheckMatrix, x: Sequence[int]) -> Syndrome:
    if len(x) != H.n:
        raise ValueError(f"vector length {len(x)} != |S| = {H.n}")
    vals = [sum(h * xi for h, xi in zip(row, x)) % H.q for row in H.rows]
    return Syndrome(H.q, tuple(vals))


def in_lattice(H: ParityCheckMatrix, x: Sequence[int]) -> bool:
    return syndrome(H, x).is_zero()


# -- exact integer HNF ------------------------------------------------------

def hermite_basis(generators: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``generators``.

    Returns the nonzero rows: upper-echelon, positive pivots, entries above
    each pivot reduced into ``[0, pivot)``.
    """
    rows = [list(map(int, g)) for g in generators]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    pivots: list[int] = []
    for c in range(ncols):
        active = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        if not active:
            continue
        # Euclid on column c until a single row carries it
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                f = r[c] // piv[c]
                r2 = [a - f * b for a, b in zip(r, piv)]
                (nxt if r2[c] != 0 else rest).append(r2)
            active = nxt
        piv = active[0]
        if piv[c] < 0:
            piv = [-a for a in piv]
        for i, prev in enumerate(out):
            f = prev[c] // piv[c]
            if f:
                out[i] = [a - f * b for a, b in zip(prev, piv)]
        out.append(piv)
        pivots.append(c)
        rows = [r for r in rest if any(r)]
    return out


def int_det(cols: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in cols]
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    sign, prev = 1, 1
    for i in range(n - 1):
        if m[i][i] == 0:
            sw = next((j for j in range(i + 1, n) if m[j][i] != 0), None)
            if sw is None:
                return 0
            m[i], m[sw] = m[sw], m[i]
            sign = -sign
        for j in range(i + 1, n):
            for l in range(i + 1, n):
                m[j][l] = (m[j][l] * m[i][i] - m[j][i] * m[i][l]) // prev
        prev = m[i][i]
    return sign * m[n - 1][n - 1]


def lattice_basis(H: ParityCheckMatrix) -> LatticeBasis:
    """HNF basis of ker(H) + qZ^n from the generating set (lifted kernel | qI)."""
    q, n = H.q, H.n
    kernel = nullspace_mod(H.rows, q, n)
    gens = kernel + [[q if i == j else 0 for i in range(n)] for j in range(n)]
    rows = hermite_basis(gens)
    assert len(rows) == n
    dependent = rank_mod(H.rows, q) < H.k
    return LatticeBasis(tuple(tuple(r) for r in rows), source=H, rows_dependent=dependent)


def solve_in_basis(basis: LatticeBasis, v: Sequence[int]) -> list[int] | None:
    """Integer coefficients z with basis.combine(z) == v, for an HNF basis."""
    cols = basis.columns
    n = len(cols)
    pivots = [next(i for i, a in enumerate(c) if a != 0) for c in cols]
    rem = list(v)
    z = [0] * n
    for j in range(n):
        pc = pivots[j]
        if rem[pc] % cols[j][pc]:
            return None
        z[j] = rem[pc] // cols[j][pc]
        rem = [a - z[j] * b for a, b in zip(rem, cols[j])]
    return z if not any(rem) else None


# -- minimum distance -------------------------------------------------------

def _pow_cost(z: int, p: int) -> int:
    return abs(z) ** p


def coordinate_values(q: int, p: int, cap: int) -> list[int]:
    """Integers z with |z|^p <= cap, ordered by value."""
    bound = 0
    while (bound + 1) ** p <= cap:
        bound += 1
    return list(range(-bound, bound + 1))


def suffix_cost_tables(H: ParityCheckMatrix, p: int, cap: int, target=None,
                       work_limit: int | None = DEFAULT_WORK_LIMIT) -> list[np.ndarray]:
    """``tables[i][s]``: cheapest way to finish a vector whose first i
    coordinates have syndrome ``s``.

    That is, the min of sum_{j>=i} |z_j|^p over integer z_i..z_{n-1} with
    s + sum_{j>=i} z_j H_j = target (mod q), clipped at ``cap + 1``.
    """
    q, k, n = H.q, H.k, H.n
    check_work(q**k * n * max(cap, 1), work_limit, "syndrome DP")
    inf = cap + 1
    # uint8 when moved + cost cannot overflow before clipping
    dtype = np.uint8 if 2 * inf < 255 else np.int64
    best_cost = {}
    for z in coordinate_values(q, p, cap):
        c = z % q
        cost = _pow_cost(z, p)
        if c not in best_cost or cost < best_cost[c]:
            best_cost[c] = cost
    last = np.full((q,) * k, inf, dtype=dtype)
    last[sdp.idx(target if target is not None else [0] * k)] = 0
    tables = [last]
    cols = H.columns
    for j in range(n - 1, -1, -1):
        cur = np.full((q,) * k, inf, dtype=dtype)
        for c, cost in best_cost.items():
            moved = sdp.shift(tables[-1], sdp.scaled(cols[j], -c, q), k)
            moved += dtype(cost)
            np.minimum(moved, dtype(inf), out=moved)
            np.minimum(cur, moved, out=cur)
        tables.append(cur)
    tables.reverse()
    return tables


def min_dist_exact(H: ParityCheckMatrix, p: int, budget, work_limit: int | None = DEFAULT_WORK_LIMIT) -> MinDistResult:
    """Exact min of ||x||_p^p over nonzero lattice vectors, if <= budget.

    Vectors entirely divisible by q cost at least q^p; every other nonzero
    vector has a nonzero residue somewhere, and replacing each coordinate by
    the smallest representative of its residue can only lower the cost.  So the
    answer is min(q^p, best over nonzero residue patterns), the latter found by
    fixing the first nonzero coordinate and reading a suffix table.
    """
    if not isinstance(p, int) or p < 1:
        raise ValueError("only integer p >= 1 is supported")
    budget = Fraction(budget)
    cap = floor(budget)
    q, k, n = H.q, H.k, H.n
    if cap < 1:
        return MinDistResult(p, budget, None)
    tables = suffix_cost_tables(H, p, cap, work_limit=work_limit)
    inf = cap + 1
    cols = H.columns
    zs = [z for z in coordinate_values(q, p, cap) if z % q != 0]

    # best cost with first nonzero coordinate at j (prefix all zero)
    def first_nz_best(j):
        best = inf
        for z in zs:
            s = sdp.scaled(cols[j], z, q)
            best = min(best, _pow_cost(z, p) + int(tables[j + 1][sdp.idx(s)]))
        return best

    firsts = [first_nz_best(j) for j in range(n)]
    code_best = min(firsts) if firsts else inf
    mult_q = q**p
    value = min(code_best, mult_q)
    if value > cap:
        return MinDistResult(p, budget, None)

    candidates = []
    if mult_q == value:
        candidates.append(tuple([-q] + [0] * (n - 1)))
    if code_best == value:
        candidates.append(_lex_min_witness(H, p, tables, firsts, value, zs))
    return MinDistResult(p, budget, value, min(candidates))


def _lex_min_witness(H, p, tables, firsts, value, zs):
    q, n = H.q, H.n
    cols = H.columns
    # suffix minimum of first-nonzero costs decides when a zero prefix may continue
    later = [min(firsts[j:]) if j < n else None for j in range(n + 1)]
    vec = []
    s = [0] * H.k
    remaining = value
    all_zero = True
    for j in range(n):
        opts = sorted(set([0] + zs))
        for z in opts:
            cz = _pow_cost(z, p)
            if cz > remaining:
                continue
            if z == 0 and all_zero:
                ok = j + 1 < n and later[j + 1] == remaining
            else:
                s2 = [(a + z * b) % q for a, b in zip(s, cols[j])]
                ok = cz + int(tables[j + 1][sdp.idx(s2)]) == remaining
            if ok:
                vec.append(z)
                s = [(a + z * b) % q for a, b in zip(s, cols[j])]
                remaining -= cz
                all_zero = all_zero and z == 0
                break
        else:  # pragma: no cover - tables guarantee a continuation
            raise AssertionError("witness reconstruction failed")
    return tuple(vec)


def min_dist_certified_bound(H: ParityCheckMatrix, p: int) -> int:
    """2k, a lower bound on lambda_1^(p)^p valid whenever k <= |S|/2."""
    if 2 * H.k > H.n:
        raise ValueError(f"bound needs k <= |S|/2 (k={H.k}, |S|={H.n})")
    return 2 * H.k


def roots_of_unity_coset_vectors(q: int, k: int, S: Sequence[int] | None = None):
    """Indicators of the cosets of the order-k subgroup of F_q^*, all in syndrome (k,0,...,0)."""
    require_prime(q)
    if k < 1 or (q - 1) % k:
        raise ValueError(f"k={k} does not divide q-1={q - 1}")
    points = list(range(q)) if S is None else list(S)
    if not set(range(1, q)) <= set(points):
        raise ValueError("evaluation set must contain F_q^*")
    pos = {s: i for i, s in enumerate(points)}
    subgroup = sorted({pow(a, (q - 1) // k, q) for a in range(1, q)})
    seen = set()
    vectors = []
    for a in range(1, q):
        if a in seen:
            continue
        coset = {a * g % q for g in subgroup}
        seen |= coset
        v = [0] * len(points)
        for c in coset:
            v[pos[c]] = 1
        vectors.append(v)
    u = Syndrome(q, (k,) + (0,) * (k - 1))
    return u, vectors


# -- coset enumeration ------------------------------------------------------

def enumerate_coset_vectors(H: ParityCheckMatrix, u, p: int, radius_pow,
                            work_limit: int | None = DEFAULT_WORK_LIMIT,
                            max_output: int | None = None) -> Iterator[tuple[int, ...]]:
    """All integer v with H v = u (mod q) and ||v||_p^p <= radius_pow, in lex order.

    Depth-first over coordinates; a branch is entered only if the suffix table
    proves a completion within the remaining budget exists, so the running
    time is proportional to the output size times n.
    """
    cap = floor(Fraction(radius_pow))
    if cap < 0:
        return
    q, k, n = H.q, H.k, H.n
    target = list(u.values) if isinstance(u, Syndrome) else [int(a) % q for a in u]
    tables = suffix_cost_tables(H, p, cap, target=target, work_limit=work_limit)
    if int(tables[0][sdp.idx([0] * k)]) > cap:
        return
    cols = H.columns
    values = coordinate_values(q, p, cap)
    emitted = 0
    vec = [0] * n

    def rec(j, s, used):
        nonlocal emitted
        if j == n:
            emitted += 1
            if max_output is not None and emitted > max_output:
                check_work(emitted, max_output, "coset enumeration")
            yield tuple(vec)
            return
        for z in values:
            cz = _pow_cost(z, p)
            if used + cz > cap:
                continue
            s2 = [(a + z * b) % q for a, b in zip(s, cols[j])]
            if used + cz + int(tables[j + 1][sdp.idx(s2)]) <= cap:
                vec[j] = z
                yield from rec(j + 1, s2, used + cz)
        vec[j] = 0

    yield from rec(0, [0] * k, 0)
