"""Growth-model tests: the two-point rate example against exact integer
arithmetic, the enumeration oracle's moment identities, and the mean/median
divergence the model exists to demonstrate."""

import math

import numpy as np
import pytest

from medianbs import (
    DomainError, GrowthModel, SupportTooLargeError, ValidationError,
    enumerate_distribution, expected_size, growth_stats, median_size,
    prob_exceeds,
)
from .oracles import binomial_upper_tail, two_point_exceed_count

# the two-point example: rates 0.5/1.7 with equal probability
TWO_POINT = GrowthModel(rates=(0.5, 1.7), probs=(0.5, 0.5), initial=1.0,
                        horizon=100)

# mpmath / exact-rational oracle values (tests/oracles.py)
MU_LOG = -0.081259464748887457
GEO_MEAN = 0.92195444572928873
SD_LOG = 0.61188771581105785
EXPECTED_100 = 13780.612339822270
MEDIAN_100 = 0.00029576466371269932
NORMAL_TAIL = 0.092086958433865133
EXACT_TAIL = 0.09667395224782123   # P[Bin(100, 1/2) >= 57]


class TestGrowthStats:
    def test_two_point_example(self):
        s = growth_stats(TWO_POINT)
        assert s.mu_l == pytest.approx(1.1, abs=1e-15)
        assert s.mu_log == pytest.approx(MU_LOG, abs=1e-15)
        assert s.mu_log == pytest.approx(-0.08126, abs=5e-6)
        assert s.geo_mean == pytest.approx(GEO_MEAN, rel=1e-14)
        assert s.geo_mean == pytest.approx(0.92195, abs=1e-4)
        assert s.sd_log == pytest.approx(SD_LOG, rel=1e-14)

    def test_geo_mean_consistent_with_mu_log(self):
        s = growth_stats(TWO_POINT)
        assert s.geo_mean == pytest.approx(math.exp(s.mu_log), rel=1e-15)

    def test_am_gm_over_random_models(self):
        rng = np.random.default_rng(20240817)
        for _ in range(50):
            k = int(rng.integers(1, 6))
            rates = tuple(float(v) for v in np.exp(rng.normal(0, 1, size=k)))
            w = rng.dirichlet(np.ones(k))
            probs = tuple(float(v) for v in (w / w.sum()))
            s = growth_stats(GrowthModel(rates=rates, probs=probs, horizon=3))
            assert s.geo_mean <= s.mu_l * (1 + 1e-14)

    def test_am_gm_equality_for_constant_rate(self):
        s = growth_stats(GrowthModel(rates=(1.3,), probs=(1.0,), horizon=5))
        assert s.geo_mean == pytest.approx(s.mu_l, rel=1e-15)


class TestSizes:
    def test_expected_size_two_point_example(self):
        assert expected_size(TWO_POINT) == pytest.approx(EXPECTED_100, rel=1e-12)
        assert expected_size(TWO_POINT) == pytest.approx(13781, rel=5e-3)

    def test_expected_size_zero_horizon(self):
        m = GrowthModel(rates=(0.5, 1.7), probs=(0.5, 0.5), initial=3.25,
                        horizon=0)
        assert expected_size(m) == 3.25

    def test_expected_size_deterministic_doubling(self):
        m = GrowthModel(rates=(2.0,), probs=(1.0,), initial=1.5, horizon=10)
        assert expected_size(m) == 1024.0 * 1.5

    def test_median_size_two_point_example(self):
        assert median_size(TWO_POINT) == pytest.approx(MEDIAN_100, rel=1e-12)

    def test_median_size_zero_horizon(self):
        m = GrowthModel(rates=(0.5, 1.7), probs=(0.5, 0.5), initial=2.0,
                        horizon=0)
        assert median_size(m) == 2.0

    def test_median_equals_expected_for_deterministic_rate(self):
        m = GrowthModel(rates=(1.25,), probs=(1.0,), initial=1.0, horizon=30)
        assert median_size(m) == pytest.approx(expected_size(m), rel=1e-12)

    @pytest.mark.parametrize("t", [10, 50, 100])
    def test_median_size_is_the_exact_distribution_median(self, t):
        # two equiprobable rates at even horizon: the binomial's median count
        # is the middle atom, so M^t S_0 is the distribution median exactly
        m = GrowthModel(rates=(0.5, 1.7), probs=(0.5, 0.5), horizon=t)
        outcomes = enumerate_distribution(m)
        cum = 0.0
        for size, p in outcomes:
            cum += p
            if cum >= 0.5:
                dist_median = size
                break
        assert median_size(m) == pytest.approx(dist_median, rel=1e-12)

    def test_overflow_warns_and_returns_inf(self):
        m = GrowthModel(rates=(2.0,), probs=(1.0,), horizon=10_000)
        with pytest.warns(RuntimeWarning):
            assert expected_size(m) == math.inf
        with pytest.warns(RuntimeWarning):
            assert median_size(m) == math.inf


class TestEnumerateDistribution:
    def test_two_point_support_size(self):
        outcomes = enumerate_distribution(TWO_POINT)
        assert len(outcomes) == 101

    def test_probabilities_sum_to_one(self):
        outcomes = enumerate_distribution(TWO_POINT)
        assert math.fsum(p for _, p in outcomes) == pytest.approx(1.0, abs=1e-10)

    def test_sorted_by_size(self):
        sizes = [s for s, _ in enumerate_distribution(TWO_POINT)]
        assert sizes == sorted(sizes)

    @pytest.mark.parametrize("t", [1, 10, 100])
    def test_mean_matches_closed_form(self, t):
        m = GrowthModel(rates=(0.5, 1.7), probs=(0.5, 0.5), horizon=t)
        outcomes = enumerate_distribution(m)
        mean = math.fsum(s * p for s, p in outcomes)
        assert mean == pytest.approx(expected_size(m), rel=1e-9)

    @pytest.mark.parametrize("t", [1, 10, 100])
    def test_variance_matches_closed_form(self, t):
        m = GrowthModel(rates=(0.5, 1.7), probs=(0.5, 0.5), horizon=t)
        outcomes = enumerate_distribution(m)
        second = math.fsum(s * s * p for s, p in outcomes)
        e_l2 = 0.5 * 0.5**2 + 0.5 * 1.7**2
        assert second == pytest.approx(e_l2**t, rel=1e-9)

    def test_three_rate_support(self):
        m = GrowthModel(rates=(0.5, 1.0, 2.0), probs=(0.25, 0.5, 0.25),
                        horizon=10)
        outcomes = enumerate_distribution(m)
        assert len(outcomes) == math.comb(12, 2)
        assert math.fsum(p for _, p in outcomes) == pytest.approx(1.0, abs=1e-10)

    def test_zero_horizon(self):
        m = GrowthModel(rates=(0.5, 1.7), probs=(0.5, 0.5), initial=4.0,
                        horizon=0)
        assert enumerate_distribution(m) == [(4.0, 1.0)]

    def test_zero_probability_rate_dropped(self):
        m = GrowthModel(rates=(0.5, 1.7), probs=(1.0, 0.0), horizon=3)
        outcomes = enumerate_distribution(m)
        assert len(outcomes) == 1
        assert outcomes[0][0] == pytest.approx(0.125, rel=1e-12)

    def test_support_budget_enforced(self):
        m = GrowthModel(rates=(0.5, 1.0, 2.0), probs=(0.3, 0.4, 0.3),
                        horizon=4000)
        with pytest.raises(SupportTooLargeError):
            enumerate_distribution(m)


class TestProbExceeds:
    def test_normal_matches_oracle(self):
        assert float(prob_exceeds(TWO_POINT, 1.0, "normal")) == pytest.approx(
            NORMAL_TAIL, rel=1e-12)

    def test_normal_matches_display_value(self):
        assert float(prob_exceeds(TWO_POINT, 1.0, "normal")) == pytest.approx(
            0.092, abs=1e-3)

    def test_exact_matches_binomial_oracle(self):
        j = two_point_exceed_count(100, 0.5, 1.7, 0.0)
        assert j == 57
        assert binomial_upper_tail(100, j) == pytest.approx(EXACT_TAIL, abs=1e-15)
        assert float(prob_exceeds(TWO_POINT, 1.0, "exact")) == pytest.approx(
            EXACT_TAIL, rel=1e-10)

    def test_exact_disagrees_with_normal_at_t100(self):
        exact = float(prob_exceeds(TWO_POINT, 1.0, "exact"))
        assert abs(exact - 0.092) > 0.003

    def test_tiny_threshold_is_certain(self):
        assert float(prob_exceeds(TWO_POINT, 1e-300, "exact")) == pytest.approx(
            1.0, abs=1e-10)

    def test_huge_threshold_is_impossible(self):
        assert float(prob_exceeds(TWO_POINT, 1e30, "exact")) == 0.0

    def test_deterministic_rate_indicator(self):
        m = GrowthModel(rates=(2.0,), probs=(1.0,), horizon=4)
        assert float(prob_exceeds(m, 15.9, "normal")) == 1.0
        assert float(prob_exceeds(m, 16.1, "normal")) == 0.0
        assert float(prob_exceeds(m, 15.9, "exact")) == 1.0

    def test_clt_gap_shrinks_with_horizon(self):
        gaps = []
        for t in (25, 100, 400):
            m = GrowthModel(rates=(0.5, 1.7), probs=(0.5, 0.5), horizon=t)
            exact = float(prob_exceeds(m, 1.0, "exact"))
            normal = float(prob_exceeds(m, 1.0, "normal"))
            gaps.append(abs(exact - normal))
        assert gaps[0] > gaps[1] > gaps[2]

    def test_mass_concentrates_below_the_mean(self):
        mean = expected_size(TWO_POINT)
        above = float(prob_exceeds(TWO_POINT, mean, "exact"))
        below = math.fsum(p for s, p in enumerate_distribution(TWO_POINT)
                          if s < mean)
        assert above < 0.05
        assert below > 0.95

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            prob_exceeds(TWO_POINT, 0.0, "exact")
        with pytest.raises(ValueError):
            prob_exceeds(TWO_POINT, 1.0, "both")


class TestGrowthModelValidation:
    @pytest.mark.parametrize("kwargs", [
        dict(rates=(), probs=()),
        dict(rates=(0.5,), probs=(0.5, 0.5)),
        dict(rates=(0.0, 1.7), probs=(0.5, 0.5)),
        dict(rates=(-1.0, 1.7), probs=(0.5, 0.5)),
        dict(rates=(0.5, 1.7), probs=(0.6, 0.6)),
        dict(rates=(0.5, 1.7), probs=(-0.1, 1.1)),
        dict(rates=(0.5, 1.7), probs=(0.5, 0.5), initial=0.0),
        dict(rates=(0.5, 1.7), probs=(0.5, 0.5), horizon=-1),
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(ValidationError):
            GrowthModel(**kwargs)
