from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from rslattice.field_core import (
    FieldElem,
    FieldMultiset,
    FieldPoly,
    elementary_direct,
    elementary_from_power_sums,
    find_prime_at_least,
    is_prime,
    nullspace_mod,
    power_sums,
    rank_mod,
    root_polynomial,
    solve_mod,
)


def vals(xs):
    return tuple(int(v) for v in xs)


def ms(q, *xs):
    return FieldMultiset.from_values(q, xs)


def naive_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


@pytest.mark.parametrize("T, count, expected", [
    (ms(5, 1, 4), 3, (2, 0, 2)),
    (ms(5), 2, (0, 0)),
    (ms(5, 0), 2, (1, 0)),  # 0^0 = 1
])
def test_power_sums(T, count, expected):
    assert vals(power_sums(T, count)) == expected


@pytest.mark.parametrize("p, count, expected", [
    ((2, 0, 2), 3, (1, 0, 4)),
    ((3,), 1, (1,)),
])
def test_newton_examples(p, count, expected):
    assert vals(elementary_from_power_sums(p, count, q=5)) == expected


def test_newton_rejects_count_above_q():
    with pytest.raises(ValueError):
        elementary_from_power_sums([0] * 6, 6, q=5)


@pytest.mark.parametrize("T, count, expected", [
    (ms(5, 1, 4), 3, (1, 0, 4)),
    (ms(5), 2, (1, 0)),
    (ms(5, 2, 2), 3, (1, 4, 4)),
])
def test_elementary_direct(T, count, expected):
    assert vals(elementary_direct(T, count)) == expected


@pytest.mark.parametrize("T, coeffs", [
    (ms(5, 1, 4), (4, 0, 1)),
    (ms(5, 2, 3), (1, 0, 1)),
    (ms(5), (1,)),
])
def test_root_polynomial(T, coeffs):
    assert vals(root_polynomial(T).coefficients) == coeffs


@pytest.mark.parametrize("lower, expected", [(5, 5), (24, 29), (100, 101), (2, 2)])
def test_find_prime_at_least(lower, expected):
    assert find_prime_at_least(lower) == expected


def test_find_prime_rejects_ceiling():
    with pytest.raises(ValueError):
        find_prime_at_least(24, ceiling=28)


def test_is_prime_matches_trial_division():
    assert all(is_prime(n) == naive_is_prime(n) for n in range(5000))
    # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime(3215031751)
    assert is_prime(2**61 - 1)


def test_field_elem_rejects_out_of_range():
    with pytest.raises(ValueError):
        FieldElem(5, 5)
    assert (FieldElem(3, 5) / 2).value == 4
    assert (FieldElem(0, 5) ** 0).value == 1


multisets = st.sampled_from([5, 7, 11]).flatmap(
    lambda q: st.tuples(st.just(q), st.lists(st.integers(0, q - 1), max_size=min(6, q - 1))))


@settings(max_examples=500, deadline=None)
@given(multisets)
def test_newton_matches_direct(case):
    q, xs = case
    T = FieldMultiset.from_values(q, xs)
    for c in range(1, min(len(xs) + 1, q) + 1):
        assert vals(elementary_from_power_sums(power_sums(T, c), c)) == vals(elementary_direct(T, c))


@settings(max_examples=200, deadline=None)
@given(multisets)
def test_root_polynomial_vanishes_and_matches_elementary(case):
    q, xs = case
    T = FieldMultiset.from_values(q, xs)
    f = root_polynomial(T)
    assert f.degree == len(xs)
    assert all(f(t) == 0 for t in xs)
    e = vals(elementary_direct(T, len(xs) + 1))
    signed = tuple((-1) ** i * e[i] % q for i in range(len(xs) + 1))
    assert vals(f.coefficients)[::-1] == signed


@pytest.mark.parametrize("q", [5, 7])
def test_power_sums_injective_on_small_multisets(q):
    for k in range(1, q // 2 + 1):
        groups = {}
        for size in range(2 * k):
            for T in combinations_with_replacement(range(q), size):
                key = vals(power_sums(FieldMultiset.from_values(q, T), k))
                groups.setdefault(key, []).append(T)
        for group in groups.values():
            for i, T in enumerate(group):
                for U in group[i + 1:]:
                    assert len(T) + len(U) >= 2 * k, (q, k, T, U)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), max_size=5), st.lists(st.integers(0, 6), min_size=1, max_size=5))
def test_poly_divmod_roundtrip(a, b):
    q = 7
    A, B = FieldPoly(q, a), FieldPoly(q, b)
    if B.is_zero:
        return
    Q, R = A.divmod(B)
    assert Q * B + R == A
    assert R.degree < B.degree


def test_linear_algebra_mod_q():
    rows = [[1, 1, 1, 1, 1], [0, 1, 2, 3, 4]]
    assert rank_mod(rows, 5) == 2
    ns = nullspace_mod(rows, 5)
    assert len(ns) == 3
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) % 5 == 0 for r in rows)
    x = solve_mod(rows, [2, 0], 5)
    assert [sum(a * b for a, b in zip(r, x)) % 5 for r in rows] == [2, 0]
