import math

import numpy as np
import pytest

from klconc.distributions import Counts, Measure, Pmf, add_t_estimate, pseudo_estimate, uniform_pmf
from klconc.losses import (
    adjusted_kl_divergence,
    adjusted_kl_shift,
    adjusted_kl_terms,
    kl_divergence,
    lr_distance,
)


def random_pmf(rng, k):
    return Pmf(rng.dirichlet(np.ones(k)))


class TestKlDivergence:
    def test_identity_is_zero(self):
        for k in (1, 2, 7, 100):
            p = uniform_pmf(k)
            assert kl_divergence(p, p) == 0.0

    def test_one_sided_support(self):
        assert kl_divergence(Pmf([1.0, 0.0]), Pmf([0.5, 0.5])) == pytest.approx(math.log(2))

    def test_support_violation_is_infinite(self):
        assert kl_divergence(Pmf([0.5, 0.5]), Pmf([1.0, 0.0])) == math.inf

    def test_two_symbol_extreme_counts(self):
        # p uniform on two symbols, all n=2 observations on the first, add-one
        # smoothing: divergence is log(n+2) + log(1/2) - (1/2) log(n+1).
        q = add_t_estimate(Counts([2, 0]), 1.0)
        expected = math.log(2) - 0.5 * math.log(3)
        assert kl_divergence(Pmf([0.5, 0.5]), q) == pytest.approx(expected, rel=1e-14)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            kl_divergence(Pmf([1.0]), Pmf([0.5, 0.5]))

    def test_nonnegative_on_probability_pairs(self):
        rng = np.random.default_rng(5)
        for _ in range(2000):
            k = int(rng.integers(2, 30))
            assert kl_divergence(random_pmf(rng, k), random_pmf(rng, k)) >= 0.0

    def test_pinsker(self):
        rng = np.random.default_rng(17)
        for _ in range(2000):
            k = int(rng.integers(2, 30))
            p = random_pmf(rng, k)
            q = random_pmf(rng, k)
            assert lr_distance(p, q, 1) ** 2 <= 2.0 * kl_divergence(p, q) + 1e-12

    def test_sum_is_order_independent(self):
        # compensated summation: permuting the alphabet must not move the result
        rng = np.random.default_rng(23)
        k = 10**5
        p = Pmf(rng.dirichlet(np.ones(k)))
        q = Pmf(rng.dirichlet(np.ones(k)))
        base = kl_divergence(p, q)
        perm = rng.permutation(k)
        shuffled = kl_divergence(Pmf(p.probs[perm]), Pmf(q.probs[perm]))
        assert shuffled == pytest.approx(base, rel=1e-13)


class TestAdjustedKl:
    def test_uniform_self_at_n_equals_k(self):
        for k in (1, 2, 5, 64):
            p = uniform_pmf(k)
            assert adjusted_kl_divergence(p, p, n=k) == pytest.approx(1.0 - math.log(2), rel=1e-14)

    def test_point_mass_example(self):
        got = adjusted_kl_divergence(Pmf([1.0, 0.0]), Pmf([0.5, 0.5]), n=2)
        assert got == pytest.approx(1.0, rel=1e-14)

    def test_infinite_when_kl_is(self):
        assert adjusted_kl_divergence(Pmf([0.5, 0.5]), Measure([1.0, 0.0]), n=4) == math.inf

    def test_shift_identity_for_proper_pmfs(self):
        rng = np.random.default_rng(29)
        for _ in range(2000):
            k = int(rng.integers(1, 40))
            n = int(rng.integers(1, 10**5))
            p = random_pmf(rng, k)
            q = random_pmf(rng, k)
            lhs = adjusted_kl_divergence(p, q, n) - kl_divergence(p, q)
            assert lhs == pytest.approx(adjusted_kl_shift(n, k), rel=1e-12)

    def test_terms_sum_matches_three_term_form(self):
        rng = np.random.default_rng(31)
        for _ in range(1000):
            k = int(rng.integers(1, 40))
            n = int(rng.integers(1, 10**4))
            p = random_pmf(rng, k)
            counts = Counts(rng.poisson(n / k, size=k))
            q = pseudo_estimate(counts, n)
            fused = math.fsum(adjusted_kl_terms(p, q, n))
            assert fused == pytest.approx(adjusted_kl_divergence(p, q, n), rel=1e-12, abs=1e-15)

    def test_terms_nonnegative(self):
        rng = np.random.default_rng(37)
        for _ in range(2000):
            k = int(rng.integers(1, 40))
            n = int(rng.integers(1, 10**4))
            p = random_pmf(rng, k)
            counts = Counts(rng.poisson(n / k, size=k))
            terms = adjusted_kl_terms(p, pseudo_estimate(counts, n), n)
            assert np.all(terms >= -1e-12)

    def test_zero_probability_symbol_contributes_mass_term(self):
        p = Pmf([1.0, 0.0])
        q = Measure([0.5, 0.0])
        # second symbol: p=0 and q=0 contributes exactly 0
        terms = adjusted_kl_terms(p, q, n=2)
        assert terms[1] == 0.0

    def test_terms_infinite_on_support_violation(self):
        terms = adjusted_kl_terms(Pmf([0.5, 0.5]), Measure([1.0, 0.0]), n=3)
        assert terms[1] == math.inf


class TestAdjustedKlShift:
    def test_value_at_n_equals_k(self):
        assert adjusted_kl_shift(3, 3) == pytest.approx(1.0 - math.log(2), rel=1e-15)
        assert adjusted_kl_shift(1, 1) == pytest.approx(1.0 - math.log(2), rel=1e-15)

    def test_nonnegative_and_decreasing_in_n(self):
        k = 16
        prev = math.inf
        for n in range(k, 50 * k, k):
            val = adjusted_kl_shift(n, k)
            assert 0.0 <= val < prev
            prev = val
        assert adjusted_kl_shift(10**9, 1) < 1e-9


class TestLrDistance:
    def test_zero_on_equal(self):
        p = uniform_pmf(5)
        for r in (1, 2, 3.5, math.inf):
            assert lr_distance(p, p, r) == 0.0

    def test_disjoint_support_extremes(self):
        p = Pmf([1.0, 0.0])
        q = Pmf([0.0, 1.0])
        assert lr_distance(p, q, 1) == pytest.approx(2.0)
        assert lr_distance(p, q, 2) == pytest.approx(math.sqrt(2))
        assert lr_distance(p, q, math.inf) == pytest.approx(1.0)

    def test_r_below_one_rejected(self):
        with pytest.raises(ValueError):
            lr_distance(uniform_pmf(2), uniform_pmf(2), 0.5)
