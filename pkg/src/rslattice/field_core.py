"""Prime-field arithmetic and the symmetric-polynomial toolkit.

Residues are stored as plain ``int`` in ``[0, q)``; ``FieldElem`` wraps one
together with its modulus for callers that want operator syntax.  The
convention ``0**0 == 1`` is used everywhere (Python's ``pow`` already agrees).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import isqrt
from typing import Iterable, Sequence

# Miller-Rabin with the first 13 prime bases is exact below this bound.
MR_EXACT_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
PRIME_SEARCH_CEILING = MR_EXACT_BOUND


def is_prime(n: int) -> bool:
    """Deterministic primality for n < MR_EXACT_BOUND."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    if n >= MR_EXACT_BOUND:
        raise ValueError(f"primality of {n} cannot be certified (>= {MR_EXACT_BOUND})")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    r = isqrt(n)
    d = 5
    while d <= r:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def require_prime(q: int) -> int:
    if not isinstance(q, int) or not is_prime(q):
        raise ValueError(f"modulus {q!r} is not prime")
    return q


def find_prime_at_least(lower: int, ceiling: int = PRIME_SEARCH_CEILING) -> int:
    """Smallest prime >= ``lower``, certified by trial division."""
    if lower < 2:
        raise ValueError("lower must be >= 2")
    n = lower
    while n <= ceiling:
        if is_prime(n):
            return n
        n += 1
    raise ValueError(f"no prime found in [{lower}, {ceiling}]")


def inv_mod(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {q}")
    return pow(a, -1, q)


@dataclass(frozen=True)
class FieldElem:
    value: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"{self.value} is not a residue mod {self.modulus}")

    @classmethod
    def of(cls, value: int, q: int) -> "FieldElem":
        return cls(value % q, q)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.value
        return int(other) % self.modulus

    def __add__(self, other):
        return FieldElem.of(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem.of(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return FieldElem.of(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return FieldElem.of(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem.of(-self.value, self.modulus)

    def __truediv__(self, other):
        return self * inv_mod(self._coerce(other), self.modulus)

    def __pow__(self, e: int):
        if e < 0:
            return FieldElem(pow(inv_mod(self.value, self.modulus), -e, self.modulus), self.modulus)
        return FieldElem(pow(self.value, e, self.modulus), self.modulus)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class FieldMultiset:
    """Multiset over F_q, canonicalized as sorted (residue, multiplicity) pairs."""

    modulus: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for r, m in self.entries:
            if not 0 <= r < self.modulus or m <= 0:
                raise ValueError(f"bad multiset entry ({r}, {m}) mod {self.modulus}")
        if list(self.entries) != sorted(self.entries) or len({r for r, _ in self.entries}) != len(self.entries):
            raise ValueError("entries must be sorted with distinct residues; use from_values")

    @classmethod
    def from_values(cls, q: int, values: Iterable[int]) -> "FieldMultiset":
        counts = Counter(int(v) % q for v in values)
        return cls(q, tuple(sorted(counts.items())))

    @property
    def total_size(self) -> int:
        return sum(m for _, m in self.entries)

    def elements(self) -> list[int]:
        return [r for r, m in self.entries for _ in range(m)]

    def __len__(self):
        return self.total_size


class FieldPoly:
    """Univariate polynomial over F_q, coefficients lowest degree first."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs: Iterable[int] = ()):
        c = [int(a) % q for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.q = q
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, q: int) -> "FieldPoly":
        return cls(q, (0, 1))

    @property
    def coefficients(self) -> list[FieldElem]:
        return [FieldElem(a, self.q) for a in self.coeffs]

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, FieldPoly) and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return f"FieldPoly(q={self.q}, 0)"
        terms = [f"{a}x^{i}" if i else str(a) for i, a in enumerate(self.coeffs) if a]
        return f"FieldPoly(q={self.q}, {' + '.join(reversed(terms))})"

    def __call__(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % self.q
        return acc

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FieldPoly(self.q, (x + y for x, y in zip(a, b)))

    def __neg__(self):
        return FieldPoly(self.q, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldPoly(self.q, (a * other for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return FieldPoly(self.q)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FieldPoly(self.q, out)

    __rmul__ = __mul__

    def divmod(self, other: "FieldPoly") -> tuple["FieldPoly", "FieldPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = self.q
        rem = list(self.coeffs)
        lead_inv = inv_mod(other.coeffs[-1], q)
        dq = len(rem) - len(other.coeffs) + 1
        quot = [0] * max(dq, 0)
        for i in range(dq - 1, -1, -1):
            c = rem[i + len(other.coeffs) - 1] * lead_inv % q
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = (rem[i + j] - c * b) % q
        return FieldPoly(q, quot), FieldPoly(q, rem)

    def evaluate_all(self, points: Sequence[int]) -> list[int]:
        return [self(s) for s in points]


def power_sums(T: FieldMultiset, count: int) -> list[FieldElem]:
    """``[p_0(T), ..., p_{count-1}(T)]`` counted with multiplicity."""
    if count < 1:
        raise ValueError("count must be >= 1")
    q = T.modulus
    out = []
    for i in range(count):
        out.append(FieldElem(sum(m * pow(r, i, q) for r, m in T.entries) % q, q))
    return out


def elementary_from_power_sums(p: Sequence, count: int, q: int | None = None) -> list[FieldElem]:
    """Newton recursion ``i e_i = sum_j (-1)^(j-1) e_{i-j} p_j`` for i < count.

    ``p[0]`` is not used.  ``q`` may be omitted when ``p`` holds FieldElems.
    """
    if q is None:
        q = p[0].modulus
    if count < 1:
        raise ValueError("count must be >= 1")
    if count > q:
        raise ValueError(f"count={count} > q={q}: Newton division by i would hit 0 mod q")
    if len(p) < count:
        raise ValueError("need at least `count` power sums")
    ps = [int(v) % q for v in p]
    e = [1]
    for i in range(1, count):
        acc = 0
        for j in range(1, i + 1):
            term = e[i - j] * ps[j]
            acc += term if j % 2 == 1 else -term
        e.append(acc * inv_mod(i, q) % q)
    return [FieldElem(v, q) for v in e]


def elementary_direct(T: FieldMultiset, count: int) -> list[FieldElem]:
    """Subset-product sums over the multiset, evaluated by brute force."""
    q = T.modulus
    elems = T.elements()
    out = []
    for i in range(count):
        if i == 0:
            out.append(FieldElem(1, q))
            continue
        acc = 0
        for Z in combinations(elems, i):
            prod = 1
            for z in Z:
                prod = prod * z % q
            acc += prod
        out.append(FieldElem(acc % q, q))
    return out


def root_polynomial(T: FieldMultiset) -> FieldPoly:
    """Monic ``prod_{t in T} (x - t)``."""
    q = T.modulus
    f = FieldPoly(q, (1,))
    for t in T.elements():
        f = f * FieldPoly(q, (-t, 1))
    return f


# -- linear algebra over F_q -------------------------------------------------

def rref_mod(rows: Sequence[Sequence[int]], q: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_q; returns (rows, pivot columns)."""
    m = [[int(a) % q for a in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = inv_mod(m[r][c], q)
        m[r] = [a * inv % q for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_mod(rows, q: int) -> int:
    return len(rref_mod(rows, q)[1])


def nullspace_mod(rows: Sequence[Sequence[int]], q: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of ``{x : rows x = 0}`` with an identity block on the free columns."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref_mod(rows, q) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] % q
        basis.append(v)
    return basis


def solve_mod(rows: Sequence[Sequence[int]], rhs: Sequence[int], q: int) -> list[int] | None:
    """One solution of ``rows x = rhs`` over F_q (free variables set to 0), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    red, pivots = rref_mod(aug, q)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return x
