from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rslattice.errors import WorkLimitExceeded
from rslattice.rs_lattice import (
    build_parity_check,
    enumerate_coset_vectors,
    in_lattice,
    lattice_basis,
    min_dist_certified_bound,
    min_dist_exact,
    roots_of_unity_coset_vectors,
    solve_in_basis,
    syndrome,
)


def brute_min_dist(H, p, box):
    best = None
    for v in product(range(-box, box + 1), repeat=H.n):
        if any(v) and in_lattice(H, v):
            c = sum(abs(a) ** p for a in v)
            best = c if best is None else min(best, c)
    return best


@pytest.mark.parametrize("q, k, S, rows", [
    (5, 2, None, [[1, 1, 1, 1, 1], [0, 1, 2, 3, 4]]),
    (5, 1, None, [[1, 1, 1, 1, 1]]),
    (7, 3, [1, 2, 4], [[1, 1, 1], [1, 2, 4], [1, 4, 2]]),
])
def test_build_parity_check(q, k, S, rows):
    assert build_parity_check(q, k, S).rows == rows


@pytest.mark.parametrize("q, k, S", [(5, 0, None), (5, 2, [1, 1]), (6, 2, None)])
def test_build_parity_check_rejects(q, k, S):
    with pytest.raises(ValueError):
        build_parity_check(q, k, S)


def test_syndrome_examples():
    H = build_parity_check(5, 2)
    assert syndrome(H, (0, 1, 0, 0, 1)).values == (2, 0)
    assert syndrome(H, (0,) * 5).is_zero()
    assert syndrome(H, (0, 0, 5, 0, 0)).is_zero()
    with pytest.raises(ValueError):
        syndrome(H, (1, 2))


@pytest.mark.parametrize("q, k, S, det", [
    (5, 1, None, 5),
    (5, 2, None, 25),
    (5, 2, [1, 3], 25),
])
def test_lattice_basis_determinant(q, k, S, det):
    H = build_parity_check(q, k, S)
    B = lattice_basis(H)
    assert B.determinant() == det
    assert all(in_lattice(H, c) for c in B.columns)
    for i in range(H.n):
        e = [0] * H.n
        e[i] = q
        assert solve_in_basis(B, e) is not None


def test_lattice_basis_flags_dependent_rows():
    H = build_parity_check(5, 3, [0, 1])
    assert lattice_basis(H).rows_dependent


@pytest.mark.parametrize("q, k, budget, value", [
    (5, 2, 6, 4),
    (5, 1, 3, 2),
    (7, 3, 8, 6),
])
def test_min_dist_examples(q, k, budget, value):
    H = build_parity_check(q, k)
    res = min_dist_exact(H, 1, budget)
    assert res.value == value
    assert in_lattice(H, res.witness)
    assert sum(abs(a) for a in res.witness) == value


def test_min_dist_witness_is_lex_smallest():
    H = build_parity_check(5, 2)
    res = min_dist_exact(H, 1, 6)
    ties = [v for v in product(range(-4, 5), repeat=5)
            if any(v) and in_lattice(H, v) and sum(map(abs, v)) == 4]
    assert res.witness == min(ties)


def test_min_dist_exceeds_bound():
    res = min_dist_exact(build_parity_check(5, 2), 1, 3)
    assert res.exceeds_bound and res.witness is None


@pytest.mark.parametrize("q, k, p", [(5, 1, 1), (5, 2, 1), (5, 1, 2), (5, 2, 2), (7, 1, 3)])
def test_min_dist_matches_brute_force(q, k, p):
    H = build_parity_check(q, k)
    expected = min(brute_min_dist(H, p, 2), q**p)
    assert min_dist_exact(H, p, expected + 1).value == expected


def test_min_dist_rejects_fractional_p_and_respects_work_limit():
    H = build_parity_check(5, 2)
    with pytest.raises((ValueError, TypeError)):
        min_dist_exact(H, 1.5, 4)
    with pytest.raises(WorkLimitExceeded):
        min_dist_exact(build_parity_check(13, 6), 1, 12, work_limit=10)


@pytest.mark.parametrize("q, k, p, bound", [(5, 2, 1, 4), (5, 2, 2, 4), (7, 3, 1, 6)])
def test_certified_bound(q, k, p, bound):
    assert min_dist_certified_bound(build_parity_check(q, k), p) == bound


def test_certified_bound_requires_small_k():
    with pytest.raises(ValueError):
        min_dist_certified_bound(build_parity_check(5, 3), 1)


@pytest.mark.parametrize("q, k, count", [(5, 2, 2), (7, 3, 2), (5, 4, 1), (7, 2, 3), (13, 4, 3)])
def test_roots_of_unity_vectors(q, k, count):
    H = build_parity_check(q, k)
    u, vecs = roots_of_unity_coset_vectors(q, k)
    assert u.values == (k,) + (0,) * (k - 1)
    assert len(vecs) == count
    for v in vecs:
        assert sum(v) == k and syndrome(H, v) == u
    for a, b in zip(vecs, vecs[1:]):
        assert not any(x and y for x, y in zip(a, b))
        d = [x - y for x, y in zip(a, b)]
        assert in_lattice(H, d) and sum(map(abs, d)) == 2 * k


def test_roots_of_unity_example_vectors():
    _, vecs = roots_of_unity_coset_vectors(5, 2)
    assert sorted(vecs) == sorted([[0, 1, 0, 0, 1], [0, 0, 1, 1, 0]])
    with pytest.raises(ValueError):
        roots_of_unity_coset_vectors(5, 3)


@pytest.mark.parametrize("q, k, u, radius", [(5, 2, (2, 0), 2), (5, 2, (1, 3), 3), (5, 1, (0,), 2)])
def test_enumerate_coset_vectors_matches_brute_force(q, k, u, radius):
    H = build_parity_check(q, k)
    got = list(enumerate_coset_vectors(H, u, 1, radius))
    expected = sorted(v for v in product(range(-radius, radius + 1), repeat=H.n)
                      if sum(map(abs, v)) <= radius and syndrome(H, v).values == u)
    assert got == expected


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.data())
def test_min_dist_never_below_trivial_code_bound(q, data):
    k = data.draw(st.integers(1, q // 2))
    res = min_dist_exact(build_parity_check(q, k), 1, 2 * k + 2)
    assert res.value is not None and res.value >= max(k + 1, 2 * k)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=5, max_size=5))
def test_solve_in_basis_recovers_lattice_points(coeffs):
    H = build_parity_check(5, 2)
    B = lattice_basis(H)
    v = B.combine(coeffs)
    assert solve_in_basis(B, v) == list(coeffs)
    w = list(v)
    w[0] += 1
    assert solve_in_basis(B, w) is None
