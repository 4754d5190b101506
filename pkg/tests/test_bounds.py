import math
import time
from fractions import Fraction
from math import comb

import mpmath
import pytest

from conftest import random_z4_set
from z4ap import bounds
from z4ap.bounds import (
    as_fraction,
    binom_sum,
    check_entropy_bound,
    compare_int_pow2,
    compute_gamma,
    corollary_bound,
    entropy,
    entropy_table,
    finite_bound,
    gamma_objective,
    grid_scan_gamma,
    integral_decomposition_check,
    theorem_bound,
)
from z4ap.cosets import CosetProfile, coset_profile
from z4ap.search import random_maximal_set


class TestEntropy:
    def test_half(self):
        assert entropy(0.5) == 1.0

    def test_symmetry(self, rng):
        for _ in range(100):
            x = rng.random()
            assert entropy(x) == pytest.approx(entropy(1 - x), abs=1e-15)

    def test_quarter_closed_form(self):
        with mpmath.workdps(60):
            exact = 2 - mpmath.mpf(3) / 4 * mpmath.log(3, 2)
            assert abs(bounds.entropy_mp(mpmath.mpf(1) / 4) - exact) < mpmath.mpf(10) ** -45
        assert entropy(0.25) == pytest.approx(0.8112781244591328, abs=1e-15)

    def test_endpoints_and_domain(self):
        assert entropy(0) == entropy(1) == 0
        with pytest.raises(ValueError):
            entropy(1.5)
        with pytest.raises(ValueError):
            entropy(-0.01)

    def test_interval_contains_float(self, rng):
        for _ in range(20):
            q = Fraction(rng.randint(1, 999), 1000)
            I = bounds.entropy_iv(q)
            assert I.a <= entropy(float(q)) + 1e-15 and entropy(float(q)) - 1e-15 <= I.b


class TestBinomSum:
    def test_examples(self):
        assert binom_sum(4, 2) == 11
        for n in range(10):
            assert binom_sum(n, 0) == 1
            assert binom_sum(n, n) == 2 ** n

    def test_big_integers(self):
        assert binom_sum(200, 100) == sum(comb(200, i) for i in range(101))
        assert binom_sum(200, 100) > 2 ** 199


class TestEntropyBound:
    def test_small_cases(self):
        r = check_entropy_bound(4, 1)
        assert r.lhs == 5 and r.holds  # 5 < 2^(4 H(1/4)) = 9.48
        r = check_entropy_bound(2, 1)
        assert r.lhs == 3 and r.holds  # 3 < 4

    def test_fractional_z(self):
        assert check_entropy_bound(10, "5/2").lhs == binom_sum(10, 2)

    def test_domain(self):
        with pytest.raises(ValueError):
            check_entropy_bound(4, 3)
        with pytest.raises(ValueError):
            check_entropy_bound(4, 0)

    def test_sweep_to_64(self):
        t0 = time.perf_counter()
        rows = entropy_table(64)
        assert len(rows) == sum(n // 2 for n in range(1, 65))
        assert all(r.holds for r in rows)
        assert time.perf_counter() - t0 < 10

    def test_against_float_oracle(self):
        for n in range(1, 41):
            for z in range(1, n // 2 + 1):
                lhs = math.log2(binom_sum(n, z))
                assert lhs < n * entropy(z / n)


class TestComparison:
    def test_exact_tie(self):
        # 2^(2 H(1/2) + 0) = 4 exactly
        assert compare_int_pow2(4, 2, Fraction(1, 2), 0) == 0
        assert compare_int_pow2(5, 2, Fraction(1, 2), 0) == 1
        assert compare_int_pow2(3, 2, Fraction(1, 2), 0) == -1

    def test_near_tie(self):
        # 2^(n H(q) + 1) against its floor and ceiling
        for n, q in ((5, Fraction(1, 4)), (9, Fraction(3, 10)), (20, Fraction(1, 3))):
            val = 2 ** (n * entropy(float(q)) + 1)
            assert compare_int_pow2(math.floor(val), n, q, 1) == -1
            assert compare_int_pow2(math.ceil(val), n, q, 1) == 1

    def test_fraction_parsing(self):
        assert as_fraction(0.15) == Fraction(3, 20)
        assert as_fraction("3/20") == Fraction(3, 20)
        assert as_fraction(" 0.2 ") == Fraction(1, 5)


class TestGamma:
    def test_value_and_runtime(self):
        compute_gamma.cache_clear()
        t0 = time.perf_counter()
        res = compute_gamma(1e-12)
        assert time.perf_counter() - t0 < 1
        assert round(res.gamma, 3) == 0.926
        assert 0 < res.eps_star < 0.25
        assert res.tolerance_achieved <= 1e-12
        assert res.gamma == pytest.approx(gamma_objective(res.eps_star), abs=1e-15)

    def test_grid_oracle(self):
        g, e = grid_scan_gamma(1e-6)
        res = compute_gamma(1e-12)
        assert abs(g - res.gamma) < 1e-9
        assert abs(e - res.eps_star) < 1e-5

    def test_optimality_condition(self):
        # stationary point: H'(1/2 - e) = 2 H'(2 e), i.e. (1/2+e)/(1/2-e) = ((1-2e)/(2e))^2
        e = compute_gamma(1e-12).eps_star
        assert (0.5 + e) / (0.5 - e) == pytest.approx(((1 - 2 * e) / (2 * e)) ** 2, rel=1e-9)

    def test_left_limit_at_quarter(self):
        assert gamma_objective(0.25 - 1e-12) == pytest.approx(0.9056390622295672, abs=1e-9)
        assert compute_gamma().gamma > gamma_objective(0.25 - 1e-12)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError):
            compute_gamma(0.0)


class TestBounds:
    def test_theorem_bound(self):
        g = compute_gamma().gamma
        assert theorem_bound(1) == pytest.approx(4 ** g)
        assert theorem_bound(1) == pytest.approx(3.6107, abs=1e-4)
        for n in range(1, 8):
            assert finite_bound(n) / theorem_bound(n) == pytest.approx(n + 2, rel=1e-15)
        with pytest.raises(ValueError):
            theorem_bound(0)

    def test_dominates_known_values(self):
        for n, r3 in ((1, 2), (2, 6), (3, 16)):
            assert theorem_bound(n) >= r3

    def test_corollary(self):
        g = compute_gamma().gamma
        c = corollary_bound([2, 8])
        assert (c.order, c.rk4) == (16, 1)
        assert c.bound == pytest.approx(16 * 4 ** (g - 1))
        assert corollary_bound([3, 6]).bound == 18  # rk_4 = 0 leaves |G|
        assert corollary_bound([4, 4, 4]).bound == pytest.approx(theorem_bound(3))
        with pytest.raises(ValueError):
            corollary_bound([4, 6])


class TestIntegral:
    def test_full_coset_profile(self):
        rep = integral_decomposition_check(CosetProfile(3, (8,)))
        assert rep.int1_exact and rep.step_integral == 8

    def test_random_profiles(self, rng):
        for _ in range(40):
            n = rng.randint(1, 6)
            A = random_z4_set(rng, n, rng.randint(0, 4 ** n))
            rep = integral_decomposition_check(coset_profile(A))
            assert rep.int1_exact and rep.total == len(A)
            assert rep.int3_ok, rep

    def test_low_range_bound_on_progression_free_sets(self, rng):
        for _ in range(20):
            n = rng.randint(1, 7)
            rep = integral_decomposition_check(coset_profile(random_maximal_set(n, rng)))
            assert rep.ok, rep

    def test_high_range_substitution_nontrivial(self):
        # a profile with mass above the low threshold exercises the quadrature
        n = 10
        T = 2 ** (n * entropy(0.25) + 1)
        counts = (1024, 900, 800, 300, 5)
        assert max(counts) > T
        rep = integral_decomposition_check(CosetProfile(n, counts))
        assert rep.int3_lhs > 0 and rep.int3_ok
