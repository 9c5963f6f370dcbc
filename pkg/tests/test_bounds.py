import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from posetsat import bounds
from posetsat.poset import from_relations
from posetsat.bounds import (
    antichain_bounds,
    bound_a,
    bound_b,
    central_binomial,
    crossover,
    crossover_scan,
    d_star,
    log2_cubed_ceil,
    main_bound_floor,
    reference_bounds,
    slope_a,
    slope_b,
    slope_compare,
    verify_inequality_a,
)


def direct_d_star(j):
    if j <= 2:
        return 1
    d = 1
    while math.comb(d + 1, (d + 1) // 2) <= j - 1:
        d += 1
    return d


@pytest.mark.parametrize("j, d", [(1, 1), (2, 1), (3, 2), (7, 4), (21, 6)])
def test_d_star_examples(j, d):
    assert d_star(j) == d


def test_d_star_invariants():
    prev = 1
    for j in range(2, 5000):
        d = d_star(j)
        assert d >= prev
        assert central_binomial(d) <= j - 1 < central_binomial(d + 1)
        prev = d


@pytest.mark.parametrize("k, n, a, b", [(3, 12, 17, 29), (4, 12, 14, 32)])
def test_bound_examples(k, n, a, b):
    assert bound_a(k, n) == a and bound_b(k, n) == b


@given(st.integers(3, 3000), st.integers(1, 10 ** 6))
def test_bound_b_matches_direct_sum(k, n):
    direct = 2 * n + sum(-(-n // direct_d_star(j)) for j in range(3, k + 1)) - k + 2
    assert bound_b(k, n) == direct
    assert bound_a(k, n) == k * -(-n // (math.floor(math.log2(k)) + 1)) - k + 2


def test_bounds_nondecreasing_in_n():
    for k in (3, 5, 17, 100):
        for n in range(k, k + 60):
            assert bound_a(k, n) <= bound_a(k, n + 1)
            assert bound_b(k, n) <= bound_b(k, n + 1)


def test_grouped_slope_equals_direct_sum_up_to_1e5():
    s = Fraction(2)
    for k in range(3, 10 ** 5 + 1):
        s += Fraction(1, d_star(k))
        assert slope_b(k) == s, k


@pytest.mark.parametrize(
    "k, sa, sb, w", [(8, Fraction(2), Fraction(4), "b"), (243, Fraction(243, 8), Fraction(34), "b")]
)
def test_slope_examples(k, sa, sb, w):
    c = slope_compare(k)
    assert (c.slope_a, c.slope_b, c.winner) == (sa, sb, w)
    assert slope_a(k) == sa


def test_slope_winner_small_k_and_huge_k():
    assert all(slope_compare(k).winner == "b" for k in range(3, 244))
    assert slope_compare(2 ** 64).winner == "a"
    with pytest.raises(ValueError):
        slope_compare(2)


def test_crossover():
    assert crossover(243) is None
    ks = crossover(2 ** 64)
    assert 243 < ks <= 2 ** 64
    assert ks == 7947
    assert slope_compare(ks - 1).winner == "b" and slope_compare(ks).winner == "a"
    assert crossover_scan(10 ** 5) == ks
    for k_max in (300, 7946, 7947, 8000):
        assert crossover(k_max) == crossover_scan(k_max)


def test_log2_cubed_ceil():
    assert log2_cubed_ceil(4) == 8
    assert log2_cubed_ceil(3) == 4
    mpmath.mp.dps = 60
    for k in (3, 5, 100, 513, 1023, 10 ** 9 + 7):
        assert log2_cubed_ceil(k) == int(mpmath.ceil(mpmath.log(k, 2) ** 3))


def test_inequality_examples():
    r = verify_inequality_a(4, 8)
    assert r.passed and r.bound_a == 10 and r.main_floor == 8
    r = verify_inequality_a(3, 4)
    assert r.passed and r.bound_a == 5 and r.main_floor == 2
    with pytest.raises(ValueError, match="threshold"):
        verify_inequality_a(3, 3)


def test_inequality_fails_just_above_threshold_at_513():
    r = verify_inequality_a(513, 730)
    assert r.threshold == 730 and r.bound_a == 36938
    mpmath.mp.dps = 50
    L = mpmath.log(513, 2)
    rhs = (1 - 1 / L) * 513 * 730 / L
    assert rhs > 36938
    assert not r.passed
    assert verify_inequality_a(513, 731).passed


def test_main_bound_floor_matches_high_precision():
    mpmath.mp.dps = 60
    for k, n in ((3, 12), (7, 30), (1000, 1000), (2 ** 20, 8000)):
        L = mpmath.log(k, 2)
        assert main_bound_floor(k, n) == int(mpmath.floor((1 - 1 / L) * k * n / L))


def test_antichain_bounds_report():
    rep = antichain_bounds(3, 12)
    assert rep.value("bound_a") == 17 and rep.value("bound_b") == 29
    assert rep.value("main_bound") == 8
    assert rep.value("ferrara_lower") == 35
    assert rep.get("ferrara_upper").kind == "approx"
    with pytest.raises(ValueError):
        antichain_bounds(3, 2)
    with pytest.raises(ValueError):
        antichain_bounds(2, 12)


def test_lower_bounds_sit_below_approximate_upper():
    for k in range(3, 40):
        for n in range(k + 1, k + 40, 7):
            rep = antichain_bounds(k, n)
            low = max(rep.value("bound_a"), rep.value("bound_b"), rep.value("ferrara_lower"))
            assert low <= rep.value("ferrara_upper") + 2 * k


def test_reference_examples():
    assert reference_bounds("v2", 5).value("ferrara_v2") == 6
    b = reference_bounds("butterfly", 4)
    assert (b.value("ferrara_butterfly_lower"), b.value("ferrara_butterfly_upper")) == (2, 13)
    d = reference_bounds("diamond", 16)
    assert d.value("diamond_lower") == 4 and d.value("ferrara_diamond_upper") == 17
    c = reference_bounds("chain:7", 100)
    assert c.value("gerbner_lower") == 4
    assert c.value("mns_upper") == 59
    assert c.value("chain_upper") == 32
    with pytest.raises(ValueError):
        reference_bounds(from_relations(4, [(0, 2), (1, 2), (1, 3)]), 3)


@pytest.mark.parametrize("k", range(1, 40))
def test_chain_formulas_against_floats(k):
    rep = reference_bounds(f"chain:{k + 1}", 50)
    assert rep.value("gerbner_lower") == math.ceil(2 ** (k / 2 - 1) - 1e-12)
    assert rep.value("gerbner_upper") == 2 ** (k - 1)
    assert rep.value("chain_upper") == min(2 ** (k - 1), math.ceil(2 ** ((1 - bounds.MNS_EPSILON) * k) - 1e-9))


def test_exact_values_respect_lower_bounds():
    from posetsat.poset import parse_poset
    from posetsat.saturation import min_saturated

    for desc in ("antichain:2", "antichain:3", "v2", "diamond"):
        for n in (2, 3, 4):
            r = min_saturated(n, parse_poset(desc), seed=False)
            rep = reference_bounds(desc, n)
            assert rep.best_lower() <= r.min_size <= rep.best_upper()
