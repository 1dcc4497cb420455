from fractions import Fraction
from itertools import combinations, product
from math import comb, sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rslattice.errors import VerificationFailed
from rslattice.local_density import (
    LocallyDenseGadget,
    asymptotic_parameters,
    check_hypercube_cover,
    coset_count_table,
    count_binary_coset_vectors,
    epsilon_for,
    find_hypercube_cover,
    generate_gadget,
    pigeonhole_bound,
    sample_dense_shift,
    sample_sauer_matrix,
    sauer_bias,
    verify_gadget,
)
from rslattice.rs_lattice import build_parity_check, in_lattice, lattice_basis, syndrome


def brute_count(H, u, h):
    return sum(1 for supp in combinations(range(H.n), h)
               if syndrome(H, [1 if i in supp else 0 for i in range(H.n)]).values == tuple(u))


@pytest.mark.parametrize("q, k, u, h, count", [
    (5, 2, (2, 0), 2, 2),
    (5, 2, (0, 0), 0, 1),
    (7, 2, (2, 0), 2, 3),
    (7, 3, (0, 0, 0), 0, 1),
])
def test_count_examples(q, k, u, h, count):
    assert count_binary_coset_vectors(build_parity_check(q, k), u, h).count == count


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7]), st.integers(1, 2), st.data())
def test_count_matches_brute_force(q, k, data):
    H = build_parity_check(q, k)
    h = data.draw(st.integers(0, q))
    u = tuple(data.draw(st.integers(0, q - 1)) for _ in range(k))
    assert count_binary_coset_vectors(H, u, h).count == brute_count(H, u, h)


@pytest.mark.parametrize("q, k, h", [(5, 2, 2), (7, 2, 3), (11, 2, 4), (7, 3, 3)])
def test_counts_sum_to_binomial_and_beat_pigeonhole(q, k, h):
    H = build_parity_check(q, k)
    table = np.asarray(coset_count_table(H, h), dtype=object)
    assert sum(table.ravel()) == comb(q, h)
    bound, _ = pigeonhole_bound(q, k, h)
    assert max(table.ravel()) >= bound


@pytest.mark.parametrize("q, k, h, bound", [
    (5, 2, 2, Fraction(2, 5)),
    (11, 2, 3, Fraction(165, 121)),
    (7, 3, 0, Fraction(1, 343)),
])
def test_pigeonhole_bound(q, k, h, bound):
    assert pigeonhole_bound(q, k, h)[0] == bound


@pytest.mark.parametrize("h", [0, 7])
def test_sample_dense_shift_extremes(h):
    H = build_parity_check(7, 2)
    assert sample_dense_shift(H, h, seed=3) == [1 if h else 0] * 7


def test_sample_dense_shift_is_reproducible_and_has_weight_h():
    H = build_parity_check(11, 2)
    xs = [sample_dense_shift(H, 3, seed=s) for s in range(50)]
    assert xs == [sample_dense_shift(H, 3, seed=s) for s in range(50)]
    assert all(sum(x) == 3 and set(x) <= {0, 1} for x in xs)
    assert len({tuple(x) for x in xs}) > 30


def test_sample_dense_shift_empirical_density():
    H = build_parity_check(11, 2)
    table = coset_count_table(H, 3)
    thresh = 0.5 * comb(11, 3) / 121
    hits = 0
    for s in range(1000):
        u = syndrome(H, sample_dense_shift(H, 3, seed=s)).values
        hits += table[u] >= thresh
    assert hits / 1000 > 0.5


def test_sauer_bias_and_sampler():
    assert sauer_bias(2, 3) == Fraction(1, 24)
    assert sauer_bias(1, 1) <= Fraction(1, 4)
    r, n, h = 2, 11, 3
    ones = [sum(map(sum, sample_sauer_matrix(r, n, h, seed=s))) for s in range(10_000)]
    mean = n / (4 * h)
    sd = sqrt(r * n * (1 / (4 * h * r)) * (1 - 1 / (4 * h * r)) / len(ones))
    assert abs(np.mean(ones) - mean) < 5 * sd
    assert sample_sauer_matrix(r, n, h, seed=7) == sample_sauer_matrix(r, n, h, seed=7)


@pytest.mark.parametrize("T, W, ok", [
    ([[0, 1, 0, 0, 0]], [], False),
    ([[0, 1, 0, 0, 0]], [(0, 1, 0, 0, 1), (0, 0, 1, 1, 0)], True),
    ([[1, 0, 0, 0, 0]], [(0, 1, 0, 0, 1), (0, 0, 1, 1, 0)], False),
])
def test_check_hypercube_cover(T, W, ok):
    assert check_hypercube_cover(T, W) is ok


def test_cover_rejects_large_r():
    with pytest.raises(ValueError):
        check_hypercube_cover([[0]] * 21, [(1,)])


def test_find_cover_maps_targets():
    T = [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]
    W = [(0, 1, 0, 0, 1), (0, 0, 1, 1, 0), (0, 1, 1, 0, 0), (1, 0, 0, 0, 1)]
    cover = find_hypercube_cover(T, W)
    assert set(cover) == set(product((0, 1), repeat=2))
    for c, w in cover.items():
        assert tuple(sum(a * b for a, b in zip(row, w)) for row in T) == c


def test_epsilon_and_rejection():
    assert epsilon_for(1, Fraction(3, 4)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        generate_gadget(1, Fraction(1, 2), 1, 5, 2)
    with pytest.raises(ValueError):
        generate_gadget(2, Fraction(7, 10), 1, 5, 2)  # 0.49 <= 1/2


@pytest.mark.parametrize("seed", range(5))
def test_desk_gadget_satisfies_both_items(seed):
    g = generate_gadget(1, Fraction(3, 4), 1, 5, 2, seed=seed)
    assert (g.ell, sum(g.x)) == (4, 3)
    assert 2 * g.k >= g.ell
    assert g.A.columns == lattice_basis(build_parity_check(5, 2)).columns
    assert verify_gadget(g) is not None
    for c in product((0, 1), repeat=g.r):
        v = g.cover[c]
        assert sum(abs(a) ** g.p for a in v) <= g.radius_pow
        assert in_lattice(g.H(), [a - b for a, b in zip(v, g.x)])
        assert tuple(sum(a * b for a, b in zip(row, v)) for row in g.T) == c
        z = g.coefficients_for(c)
        assert [a + b for a, b in zip(g.A.combine(z), g.x)] == list(v)


def test_gadget_json_roundtrip_and_tamper_detection():
    g = generate_gadget(1, Fraction(3, 4), 1, 5, 2, seed=1)
    g2 = LocallyDenseGadget.from_json(g.to_json())
    assert g2.to_json() == g.to_json()
    assert verify_gadget(g2) is not None
    bad = g.to_json()
    bad["T"] = [[0] * 5]
    assert verify_gadget(LocallyDenseGadget.from_json(bad)) is None


def test_generation_failure_raises():
    with pytest.raises(VerificationFailed):
        generate_gadget(1, Fraction(3, 4), 3, 5, 2, seed=0, retries=2)


def test_asymptotic_report_r2():
    rep = asymptotic_parameters(1, Fraction(3, 4), 2, Fraction(1, 4))
    assert (rep.k, rep.q_lower, rep.h, rep.ell) == (16, 16**9, 24, 32)
    assert rep.q >= 16**9 and rep.q - 16**9 < 100


def test_asymptotic_report_beyond_certified_primes():
    rep = asymptotic_parameters(1, Fraction(3, 4), 10)
    assert rep.k == 10**4 and rep.q is None and rep.q_lower == 10**36
